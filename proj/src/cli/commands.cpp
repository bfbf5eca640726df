#include "acbm/cli/commands.hpp"

#include <charconv>
#include <cmath>
#include <chrono>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <system_error>
#include <vector>

#include "acbm/error.hpp"
#include "acbm/expgroups.hpp"
#include "acbm/fixtures.hpp"

namespace acbm::cli {

namespace {

// Shortest round-trip decimal, independent of the global locale.
std::string num(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, v + 0.0);  // + 0.0 drops the sign of zero
  return std::string(buf, res.ptr);
}

void print_matrix(std::ostream& out, const Mat3& m, const char* indent = "  ") {
  for (int r = 0; r < 3; ++r) {
    out << indent << "[";
    for (int c = 0; c < 3; ++c) out << (c ? ", " : "") << num(m(r, c));
    out << "]\n";
  }
}

// Column padding that counts code points, so "⊕" takes one column.
std::string pad(const std::string& s, std::size_t width) {
  std::size_t cols = 0;
  for (unsigned char ch : s) cols += (ch & 0xC0) != 0x80;
  return cols >= width ? s + " " : s + std::string(width - cols, ' ');
}

template <class Fn>
int guarded(std::ostream& err, Fn&& fn) {
  try {
    return fn();
  } catch (const IoError& e) {
    err << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitInput;
  }
}

std::string parameters_text(BasicClass s, const Parameters& p) {
  std::string text = "α = " + num(p.alpha);
  if (uses_beta(s)) text += ", β = " + num(p.beta);
  return text;
}

}  // namespace

Vec3 parse_coords(std::string_view text) {
  Vec3 v;
  std::size_t pos = 0;
  for (int k = 0; k < 3; ++k) {
    const std::size_t end = k < 2 ? text.find(',', pos) : text.size();
    if (end == std::string_view::npos) throw ArgumentError("--coords expects a,b,c; got '" + std::string(text) + "'");
    std::string_view field = text.substr(pos, end - pos);
    while (!field.empty() && field.front() == ' ') field.remove_prefix(1);
    while (!field.empty() && field.back() == ' ') field.remove_suffix(1);
    if (!field.empty() && field.front() == '+') field.remove_prefix(1);
    double value = 0;
    const auto res = std::from_chars(field.data(), field.data() + field.size(), value);
    if (field.empty() || res.ec != std::errc() || res.ptr != field.data() + field.size() || !std::isfinite(value)) {
      throw ArgumentError("--coords component " + std::to_string(k) + " is not a finite number: '" +
                          std::string(field) + "'");
    }
    v[k] = value;
    pos = end + 1;
  }
  return v;
}

int cmd_classify(const ClassifyOptions& o, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const AlgebraFile file = parse_algebra_file(o.in);
    const ClassProfile profile = extract_profile(file.constants);
    const ClassSignature sig = classify(profile, o.tol);
    std::optional<Parameters> params;
    if (sig.size() == 1) params = recover_parameters(file.constants, sig.members().front(), o.tol);

    if (o.json) {
      Json j;
      if (file.name) j["name"] = *file.name;
      j["signature"] = sig.to_string();
      Json classes = Json::array();
      for (auto s : sig.members()) classes.push_back(to_string(s));
      j["classes"] = classes;
      j["tolerance"] = o.tol;
      j["scale"] = profile.scale;
      const auto values = profile.values();
      for (std::size_t i = 0; i < values.size(); ++i) j["profile"][std::string(ClassProfile::names[i])] = values[i] + 0.0;
      if (params) {
        j["parameters"]["alpha"] = params->alpha;
        if (uses_beta(sig.members().front())) j["parameters"]["beta"] = params->beta;
      } else {
        j["parameters"] = nullptr;
      }
      out << j.dump(2) << "\n";
      return kExitOk;
    }

    out << sig.to_string();
    if (params) out << ", " << parameters_text(sig.members().front(), *params);
    out << "\n";
    out << "profile (scale " << num(profile.scale) << "):\n";
    const auto values = profile.values();
    for (std::size_t i = 0; i < values.size(); ++i) {
      out << "  " << pad(std::string(ClassProfile::names[i]), 12) << "= " << num(values[i]) << "\n";
    }
    return kExitOk;
  });
}

int cmd_canonical(const CanonicalOptions& o, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const BasicClass s = parse_basic_class(o.cls);
    std::vector<std::string> warnings;
    AlgebraFile file;
    file.constants = canonical_algebra(s, o.alpha, o.beta, &warnings);
    for (const auto& w : warnings) err << "warning: " << w << "\n";
    file.name = std::string(to_string(s));
    file.description = "canonical " + std::string(to_string(s)) + " algebra, " + parameters_text(s, {o.alpha, o.beta});
    const std::string text = dump_algebra(file);
    if (o.out.empty() || o.out == "-") {
      out << text;
    } else {
      write_text(o.out, text);
    }
    return kExitOk;
  });
}

int cmd_exp(const ExpOptions& o, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const BasicClass s = parse_basic_class(o.cls);
    const CoefficientMode mode = parse_mode(o.mode);
    const Vec3 x = parse_coords(o.coords);
    if (!std::isfinite(o.alpha) || !std::isfinite(o.beta)) throw ArgumentError("alpha and beta must be finite");
    const GroupSample g = verify_sample(s, o.alpha, o.beta, x[0], x[1], x[2], mode);
    const SpectralExp spectral = spectral_exp(g.a);

    out << "class " << to_string(s) << ", " << parameters_text(s, {o.alpha, o.beta}) << ", coords (" << num(x[0])
        << ", " << num(x[1]) << ", " << num(x[2]) << "), mode " << to_string(mode) << "\n";
    out << "A =\n";
    print_matrix(out, g.a);
    out << "t = " << num(g.coeffs.t) << "\n";
    out << "u = " << num(g.coeffs.u) << "\n";
    out << "branch = " << to_string(g.coeffs.branch) << " (" << (family_of(s) == Family::quadratic ? "tr A" : "tr A^2")
        << " = " << num(g.coeffs.branch_scalar) << ")\n";
    out << "e^A =\n";
    print_matrix(out, g.closed);
    out << "error vs reference_expm = " << num(g.error) << "\n";
    out << "error vs spectral_exp (" << to_string(spectral.path)
        << ") = " << num(relative_error(g.closed, spectral.value)) << "\n";
    return kExitOk;
  });
}

int cmd_verify(const VerifyOptions& o, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    if (o.samples < 1) throw ArgumentError("--samples must be at least 1");
    if (!(o.tol > 0)) throw ArgumentError("--tol must be positive");
    SweepConfig cfg;
    cfg.samples = o.samples;
    cfg.seed = o.seed;
    cfg.tolerance = o.tol;
    cfg.workers = o.workers;
    const auto start = std::chrono::steady_clock::now();
    const VerificationReport r = run_verification(cfg);
    const double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

    const std::string body = dump_report(r);
    std::ostream& summary = o.report.empty() ? err : out;
    if (o.report.empty()) {
      out << body;
    } else {
      write_text(o.report, body);
    }

    for (const auto& c : r.cells) {
      summary << pad(std::string(to_string(c.cls)), 4) << pad(std::string(to_string(c.branch)), 14)
              << pad(std::string(to_string(c.mode)), 10) << "max " << std::setw(12) << num(c.max_error) << "  "
              << (c.pass ? "pass" : (c.asserted ? "FAIL" : "differs")) << "\n";
    }
    std::size_t near_fail = 0;
    for (const auto& n : r.near_branch) near_fail += !n.pass;
    std::size_t axiom_fail = 0;
    for (const auto& a : r.axioms) axiom_fail += !a.pass;
    summary << "near-branch sets: " << r.near_branch.size() - near_fail << "/" << r.near_branch.size() << " pass\n";
    summary << "group axioms: " << r.axioms.size() - axiom_fail << "/" << r.axioms.size() << " classes pass\n";
    summary << "divergence cells:";
    if (r.divergence_cells.empty()) summary << " none";
    for (const auto& d : r.divergence_cells) summary << " " << to_string(d.cls) << "/" << to_string(d.branch);
    summary << "\n";
    summary << "reconciliation: " << (r.reconciliation_pass() ? "agrees" : "FAILS") << " after sign "
            << r.reconciliation.global_sign << ", " << r.reconciliation.conflicts().size()
            << " printed identities conflict with the oracle\n";
    for (const auto& c : r.reconciliation.conflicts()) {
      summary << "  " << c.source << ": " << c.identity << "  (oracle: " << c.oracle_reading << ")\n";
    }
    summary << "elapsed " << std::fixed << std::setprecision(2) << elapsed << " s\n" << std::defaultfloat;
    return r.pass() ? kExitOk : kExitVerify;
  });
}

int cmd_fixtures(const FixturesOptions& o, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    std::optional<Example> only;
    if (o.name) only = parse_example(*o.name);
    std::optional<HeisenbergVariant> variant;
    if (o.variant) {
      if (only != Example::GIII) throw ArgumentError("--variant applies to GIII only");
      variant = parse_variant(*o.variant);
    }

    if (o.export_path) {
      if (!only) throw ArgumentError("--export needs --name");
      const ExampleRecord rec = example_algebra(*only, *only == Example::GIII ? variant.value_or(HeisenbergVariant::ker_eta)
                                                                             : std::optional<HeisenbergVariant>{});
      AlgebraFile file;
      file.constants = rec.constants;
      file.name = std::string(to_string(rec.name)) + (rec.variant ? "-" + std::string(to_string(*rec.variant)) : "");
      file.description = rec.description + "; " + rec.substitution;
      write_text(*o.export_path, dump_algebra(file));
    }

    bool failed = false;
    out << pad("fixture", 16) << pad("claimed", 16) << pad("computed", 16) << "status\n";
    for (const auto& rec : all_example_records()) {
      if (only && rec.name != *only) continue;
      if (variant && rec.variant != variant) continue;
      std::string label = std::string(to_string(rec.name));
      if (rec.variant) label += " " + std::string(to_string(*rec.variant));
      const bool agrees = rec.claimed == rec.computed;
      std::string status;
      if (rec.claim_is_assertable) {
        status = agrees ? "pass" : "FAIL";
        failed |= !agrees;
      } else {
        status = agrees ? "agrees (not asserted)" : "differs (not asserted)";
      }
      out << pad(label, 16) << pad(rec.claimed.to_string(), 16) << pad(rec.computed.to_string(), 16) << status << "\n";
      out << "  " << rec.bianchi_label << ", " << rec.description << "; " << rec.substitution << "\n";

      if (rec.name == Example::GII) {
        const ConsistencyReport c = fixture_exp_consistency(Example::GII);
        out << "  exp consistency: " << c.samples << " samples, max error " << num(c.max_error) << " (tol "
            << num(c.tolerance) << ") " << (c.pass ? "pass" : "FAIL") << "\n";
        failed |= !c.pass;
      }
      if (rec.name == Example::SO3) {
        const RodriguesReport r = rodrigues_check();
        out << "  rodrigues: " << r.samples << " samples, vs reference " << num(r.max_reference_error)
            << ", orthogonality " << num(r.max_orthogonality_error) << ", det " << num(r.max_determinant_error)
            << " (tol " << num(r.tolerance) << ") " << (r.pass ? "pass" : "FAIL") << "\n";
        out << "  display with the angle inside A: max error " << num(r.max_literal_display_error)
            << " (reported, not asserted)\n";
        failed |= !r.pass;
      }
    }
    return failed ? kExitVerify : kExitOk;
  });
}

}  // namespace acbm::cli
