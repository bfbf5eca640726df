#include "acbm/cli/io.hpp"

#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

#include "acbm/error.hpp"

namespace acbm::cli {

namespace {

constexpr std::array<std::string_view, 3> kKeys = {"01", "02", "12"};

Vec3 parse_row(const Json& c, std::string_view key) {
  const std::string where = "C.\"" + std::string(key) + "\"";
  const auto it = c.find(key);
  if (it == c.end()) throw ValidationError("missing key " + where);
  if (!it->is_array()) throw ValidationError(where + " must be an array of 3 numbers");
  if (it->size() != 3) {
    throw ValidationError(where + " must have 3 components, got " + std::to_string(it->size()));
  }
  Vec3 row;
  for (int k = 0; k < 3; ++k) {
    const Json& v = (*it)[k];
    if (!v.is_number()) throw ValidationError(where + "[" + std::to_string(k) + "] is not a number");
    row[k] = v.get<double>();
    if (!std::isfinite(row[k])) throw ValidationError(where + "[" + std::to_string(k) + "] is not finite");
  }
  return row;
}

std::optional<std::string> optional_string(const Json& doc, const char* key) {
  const auto it = doc.find(key);
  if (it == doc.end()) return std::nullopt;
  if (!it->is_string()) throw ValidationError(std::string("key \"") + key + "\" must be a string");
  return it->get<std::string>();
}

// JSON has no infinity; a printed-mode overflow is reported as a string.
Json number(double v) {
  if (std::isfinite(v)) return v;
  return std::isnan(v) ? "nan" : (v > 0 ? "inf" : "-inf");
}

Json identity_json(const IdentityCheck& c) {
  Json j;
  j["source"] = c.source;
  j["identity"] = c.identity;
  j["oracle_reading"] = c.oracle_reading;
  j["samples"] = c.samples;
  j["max_discrepancy"] = number(c.max_discrepancy);
  j["conflicts"] = c.conflicts;
  return j;
}

}  // namespace

AlgebraFile parse_algebra_json(std::string_view text, double jacobi_tol) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const Json::exception& e) {  // syntax errors and number overflow
    throw ValidationError(std::string("invalid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ValidationError("algebra file must be a JSON object");
  for (const auto& [key, value] : doc.items()) {
    if (key != "C" && key != "name" && key != "description") {
      throw ValidationError("unexpected key \"" + key + "\"");
    }
  }
  const auto c = doc.find("C");
  if (c == doc.end()) throw ValidationError("missing key C");
  if (!c->is_object()) throw ValidationError("C must be an object with keys \"01\", \"02\", \"12\"");
  for (const auto& [key, value] : c->items()) {
    if (key != "01" && key != "02" && key != "12") throw ValidationError("unexpected key C.\"" + key + "\"");
  }

  AlgebraFile file;
  file.constants.c01 = parse_row(*c, kKeys[0]);
  file.constants.c02 = parse_row(*c, kKeys[1]);
  file.constants.c12 = parse_row(*c, kKeys[2]);
  file.name = optional_string(doc, "name");
  file.description = optional_string(doc, "description");
  require_jacobi(file.constants, jacobi_tol);
  return file;
}

AlgebraFile parse_algebra_file(const std::string& path, double jacobi_tol) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw IoError("error reading " + path);
  return parse_algebra_json(buf.str(), jacobi_tol);
}

Json algebra_to_json(const AlgebraFile& file) {
  Json j;
  if (file.name) j["name"] = *file.name;
  if (file.description) j["description"] = *file.description;
  auto row = [](const Vec3& v) { return Json::array({v[0] + 0.0, v[1] + 0.0, v[2] + 0.0}); };
  j["C"]["01"] = row(file.constants.c01);
  j["C"]["02"] = row(file.constants.c02);
  j["C"]["12"] = row(file.constants.c12);
  return j;
}

// Same document as algebra_to_json(file).dump(2), with each row on one line.
std::string dump_algebra(const AlgebraFile& file) {
  const Json j = algebra_to_json(file);
  std::string text = "{\n";
  if (file.name) text += "  \"name\": " + j["name"].dump() + ",\n";
  if (file.description) text += "  \"description\": " + j["description"].dump() + ",\n";
  text += "  \"C\": {\n";
  for (std::size_t r = 0; r < kKeys.size(); ++r) {
    const Json& row = j["C"][std::string(kKeys[r])];
    text += "    \"" + std::string(kKeys[r]) + "\": [" + row[0].dump() + ", " + row[1].dump() + ", " + row[2].dump() + "]";
    text += r + 1 < kKeys.size() ? ",\n" : "\n";
  }
  text += "  }\n}\n";
  return text;
}

void write_text(const std::string& path, const std::string& text) {
  if (path == "-") {
    std::cout << text;
    std::cout.flush();
    return;
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path);
  out << text;
  out.close();
  if (!out) throw IoError("error writing " + path);
}

Json report_to_json(const VerificationReport& r) {
  Json j;
  j["seed"] = r.config.seed;
  j["tolerance"] = r.config.tolerance;
  j["near_tolerance"] = r.config.near_tolerance;
  j["samples"] = r.config.samples;
  j["pass"] = r.pass();
  j["corrected_pass"] = r.corrected_pass();
  j["reconciliation_pass"] = r.reconciliation_pass();

  Json cells = Json::array();
  for (const auto& c : r.cells) {
    Json cell;
    cell["key"] = std::string(to_string(c.cls)) + "/" + std::string(to_string(c.branch)) + "/" +
                  std::string(to_string(c.mode));
    cell["class"] = to_string(c.cls);
    cell["branch"] = to_string(c.branch);
    cell["mode"] = to_string(c.mode);
    cell["samples"] = c.samples;
    cell["max_error"] = number(c.max_error);
    cell["mean_error"] = number(c.mean_error);
    cell["pass"] = c.pass;
    cell["asserted"] = c.asserted;
    if (!c.branch_tags.empty()) {
      Json tags = Json::object();
      for (const auto& [tag, count] : c.branch_tags) tags[std::string(to_string(tag))] = count;
      cell["branch_tags"] = tags;
    }
    cells.push_back(cell);
  }
  j["cells"] = cells;

  Json near = Json::array();
  for (const auto& n : r.near_branch) {
    near.push_back({{"class", to_string(n.cls)},
                    {"target", n.target},
                    {"samples", n.samples},
                    {"series_fallback", n.series_fallback},
                    {"max_error", number(n.max_error)},
                    {"pass", n.pass}});
  }
  j["near_branch"] = near;

  Json axioms = Json::array();
  for (const auto& a : r.axioms) {
    axioms.push_back({{"class", to_string(a.cls)},
                      {"samples", a.samples},
                      {"max_inverse_error", number(a.max_inverse_error)},
                      {"max_determinant_error", number(a.max_determinant_error)},
                      {"max_additivity_error", number(a.max_additivity_error)},
                      {"pass", a.pass}});
  }
  j["axioms"] = axioms;

  Json divergence = Json::array();
  for (const auto& d : r.divergence_cells) {
    divergence.push_back({{"class", to_string(d.cls)},
                          {"branch", to_string(d.branch)},
                          {"printed_max_error", number(d.printed_max_error)},
                          {"corrected_max_error", number(d.corrected_max_error)}});
  }
  j["divergence_cells"] = divergence;

  const ReconciliationTable& t = r.reconciliation;
  Json rec;
  rec["global_sign"] = t.global_sign;
  rec["tolerance"] = t.tolerance;
  rec["reconciled_max_discrepancy"] = number(t.reconciled_max_discrepancy);
  rec["reconciled_agrees"] = t.reconciled_agrees;
  Json conflicts = Json::array();
  for (const auto& c : t.conflicts()) conflicts.push_back(identity_json(c));
  rec["conflicts"] = conflicts;
  Json checks = Json::array();
  for (const auto& c : t.checks) checks.push_back(identity_json(c));
  rec["checks"] = checks;
  j["reconciliation"] = rec;
  return j;
}

std::string dump_report(const VerificationReport& report) { return report_to_json(report).dump(2) + "\n"; }

}  // namespace acbm::cli
