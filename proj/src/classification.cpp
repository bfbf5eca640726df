#include "acbm/classification.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <functional>
#include <sstream>

#include "acbm/error.hpp"
#include "acbm/sampling.hpp"

namespace acbm {

namespace {

constexpr std::array<std::string_view, 7> kClassNames = {"F1", "F4", "F5", "F8", "F9", "F10", "F11"};

using Trilinear = std::function<double(const Vec3&, const Vec3&, const Vec3&)>;

// The basic-class components of F as trilinear forms, x = x^i e_i etc.
std::array<Trilinear, 7> class_templates(const ClassProfile& p) {
  return {
      // F1
      [p](const Vec3& x, const Vec3& y, const Vec3& z) {
        return (x[1] * p.theta1 - x[2] * p.theta2) * (y[1] * z[1] + y[2] * z[2]);
      },
      // F4
      [p](const Vec3& x, const Vec3& y, const Vec3& z) {
        return 0.5 * p.theta0 *
               (x[1] * (y[0] * z[1] + y[1] * z[0]) - x[2] * (y[0] * z[2] + y[2] * z[0]));
      },
      // F5
      [p](const Vec3& x, const Vec3& y, const Vec3& z) {
        return 0.5 * p.theta_star0 *
               (x[1] * (y[0] * z[2] + y[2] * z[0]) + x[2] * (y[0] * z[1] + y[1] * z[0]));
      },
      // F8
      [p](const Vec3& x, const Vec3& y, const Vec3& z) {
        return p.lambda * (x[1] * (y[0] * z[1] + y[1] * z[0]) + x[2] * (y[0] * z[2] + y[2] * z[0]));
      },
      // F9
      [p](const Vec3& x, const Vec3& y, const Vec3& z) {
        return p.mu * (x[1] * (y[0] * z[2] + y[2] * z[0]) - x[2] * (y[0] * z[1] + y[1] * z[0]));
      },
      // F10
      [p](const Vec3& x, const Vec3& y, const Vec3& z) {
        return p.nu * x[0] * (y[1] * z[1] + y[2] * z[2]);
      },
      // F11
      [p](const Vec3& x, const Vec3& y, const Vec3& z) {
        return x[0] * ((y[1] * z[0] + y[0] * z[1]) * p.omega1 + (y[2] * z[0] + y[0] * z[2]) * p.omega2);
      },
  };
}

struct PrintedRelation {
  BasicClass cls;
  bool is_beta;
  int scalar;
  double coefficient;
  std::string_view text;
};

constexpr std::array<PrintedRelation, 9> kPrintedRelations = {{
    {BasicClass::F1, false, 1, 0.5, "F1: alpha = theta_1 / 2"},
    {BasicClass::F1, true, 2, 0.5, "F1: beta = theta_2 / 2"},
    {BasicClass::F4, false, 0, 0.5, "F4: alpha = theta_0 / 2"},
    {BasicClass::F5, false, 3, -0.5, "F5: alpha = -theta*_0 / 2"},
    {BasicClass::F8, false, 4, -1.0, "F8: alpha = -lambda"},
    {BasicClass::F9, false, 5, -1.0, "F9: alpha = -mu"},
    {BasicClass::F10, false, 6, 0.5, "F10: alpha = nu / 2"},
    {BasicClass::F11, false, 8, -1.0, "F11: alpha = -omega_2"},
    {BasicClass::F11, true, 7, 1.0, "F11: beta = omega_1"},
}};

bool nonzero(double v, double threshold) { return std::abs(v) > threshold; }

std::string relation_text(const ParameterRelation& r, double coefficient) {
  static constexpr std::array<std::string_view, 9> symbols = {
      "theta_0", "theta_1", "theta_2", "theta*_0", "lambda", "mu", "nu", "omega_1", "omega_2"};
  std::ostringstream out;
  out << to_string(r.cls) << ": " << (r.is_beta ? "beta" : "alpha") << " = ";
  if (!std::isfinite(coefficient)) {
    out << "undetermined (scalar vanishes on the canonical algebra)";
    return out.str();
  }
  if (coefficient < 0) out << "-";
  const double mag = std::abs(coefficient);
  if (std::abs(mag - 0.5) < 1e-12) {
    out << symbols[static_cast<std::size_t>(r.scalar)] << " / 2";
  } else if (std::abs(mag - 1.0) < 1e-12) {
    out << symbols[static_cast<std::size_t>(r.scalar)];
  } else {
    out << mag << " " << symbols[static_cast<std::size_t>(r.scalar)];
  }
  return out.str();
}

}  // namespace

std::string_view to_string(BasicClass s) { return kClassNames[static_cast<std::size_t>(s)]; }

BasicClass parse_basic_class(std::string_view name) {
  std::string key;
  for (char ch : name) {
    if (ch == '_') continue;
    key.push_back(static_cast<char>(std::toupper(static_cast<unsigned char>(ch))));
  }
  for (std::size_t n = 0; n < kClassNames.size(); ++n) {
    if (key == kClassNames[n]) return kBasicClasses[n];
  }
  throw ArgumentError("unknown basic class '" + std::string(name) +
                      "' (expected one of F1, F4, F5, F8, F9, F10, F11)");
}

bool uses_beta(BasicClass s) { return s == BasicClass::F1 || s == BasicClass::F11; }

std::array<double, 9> ClassProfile::values() const {
  return {theta0, theta1, theta2, theta_star0, lambda, mu, nu, omega1, omega2};
}

std::vector<BasicClass> ClassSignature::members() const {
  std::vector<BasicClass> out;
  for (auto s : kBasicClasses)
    if (contains(s)) out.push_back(s);
  return out;
}

std::string ClassSignature::to_string() const {
  if (is_f0()) return "F0 (cosymplectic)";
  std::string out;
  for (auto s : members()) {
    if (!out.empty()) out += " ⊕ ";
    out += acbm::to_string(s);
  }
  return out;
}

ClassSignature make_signature(std::initializer_list<BasicClass> members) {
  ClassSignature sig;
  for (auto s : members) sig.insert(s);
  return sig;
}

ClassProfile extract_profile(const StructureConstants& c) {
  ClassProfile p;
  p.theta0 = -c.c01[2] + c.c02[1];
  p.theta1 = 2.0 * c.c12[1];
  p.theta2 = 2.0 * c.c12[2];
  p.theta_star0 = -c.c01[1] - c.c02[2];
  p.lambda = 0.5 * c.c12[0];
  p.mu = 0.5 * (-c.c01[1] + c.c02[2]);
  p.nu = c.c12[0] + c.c01[2] + c.c02[1];
  p.omega1 = c.c02[0];
  p.omega2 = -c.c01[0];
  p.scale = c.scale();
  return p;
}

ClassProfile profile_from_tensor(const FTensor& f, double scale) {
  const LeeForms lee = contract_lee_forms(f);
  ClassProfile p;
  p.theta0 = lee.theta[0];
  p.theta1 = lee.theta[1];
  p.theta2 = lee.theta[2];
  p.theta_star0 = lee.theta_star[0];
  p.lambda = 0.5 * (f(1, 0, 1) + f(2, 0, 2));
  p.mu = 0.5 * (f(1, 0, 2) - f(2, 0, 1));
  p.nu = f(0, 1, 1);
  p.omega1 = lee.omega[1];
  p.omega2 = lee.omega[2];
  p.scale = scale;
  return p;
}

ClassSignature classify(const ClassProfile& p, double tol) {
  if (!(tol >= 0.0)) throw ArgumentError("membership tolerance must be nonnegative");
  const double threshold = tol * p.scale;
  ClassSignature sig;
  if (nonzero(p.theta1, threshold) || nonzero(p.theta2, threshold)) sig.insert(BasicClass::F1);
  if (nonzero(p.theta0, threshold)) sig.insert(BasicClass::F4);
  if (nonzero(p.theta_star0, threshold)) sig.insert(BasicClass::F5);
  if (nonzero(p.lambda, threshold)) sig.insert(BasicClass::F8);
  if (nonzero(p.mu, threshold)) sig.insert(BasicClass::F9);
  if (nonzero(p.nu, threshold)) sig.insert(BasicClass::F10);
  if (nonzero(p.omega1, threshold) || nonzero(p.omega2, threshold)) sig.insert(BasicClass::F11);
  return sig;
}

StructureConstants canonical_algebra(BasicClass s, double alpha, double beta,
                                     std::vector<std::string>* warnings) {
  if (!std::isfinite(alpha) || !std::isfinite(beta)) {
    throw ArgumentError("canonical algebra parameters must be finite");
  }
  if (!uses_beta(s) && beta != 0.0 && warnings != nullptr) {
    warnings->push_back("beta is ignored for class " + std::string(to_string(s)));
  }
  StructureConstants c;
  switch (s) {
    case BasicClass::F1:
      c.c12 = Vec3(0.0, alpha, beta);
      break;
    case BasicClass::F4:
      c.c01 = Vec3(0.0, 0.0, alpha);
      c.c02 = Vec3(0.0, -alpha, 0.0);
      break;
    case BasicClass::F5:
      c.c01 = Vec3(0.0, alpha, 0.0);
      c.c02 = Vec3(0.0, 0.0, alpha);
      break;
    case BasicClass::F8:
      c.c01 = Vec3(0.0, 0.0, alpha);
      c.c02 = Vec3(0.0, alpha, 0.0);
      c.c12 = Vec3(-2.0 * alpha, 0.0, 0.0);
      break;
    case BasicClass::F9:
      c.c01 = Vec3(0.0, alpha, 0.0);
      c.c02 = Vec3(0.0, 0.0, -alpha);
      break;
    case BasicClass::F10:
      c.c01 = Vec3(0.0, 0.0, alpha);
      c.c02 = Vec3(0.0, alpha, 0.0);
      break;
    case BasicClass::F11:
      c.c01 = Vec3(alpha, 0.0, 0.0);
      c.c02 = Vec3(beta, 0.0, 0.0);
      break;
  }
  return c;
}

FTensor reconstruct_F(const ClassProfile& profile) {
  const auto templates = class_templates(profile);
  const std::array<Vec3, 3> e = {Vec3::UnitX(), Vec3::UnitY(), Vec3::UnitZ()};
  FTensor f;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k) {
        double sum = 0.0;
        for (const auto& component : templates) sum += component(e[i], e[j], e[k]);
        f(i, j, k) = sum;
      }
  return f;
}

const std::vector<ParameterRelation>& parameter_relations() {
  static const std::vector<ParameterRelation> relations = [] {
    std::vector<ParameterRelation> out;
    for (const auto& printed : kPrintedRelations) {
      const StructureConstants c =
          printed.is_beta ? canonical_algebra(printed.cls, 0.0, 1.0) : canonical_algebra(printed.cls, 1.0, 0.0);
      const ClassProfile truth = profile_from_tensor(f_from_connection(c), c.scale());
      const double scalar = truth.values()[static_cast<std::size_t>(printed.scalar)];
      const double arbitrated = std::abs(scalar) > 1e-12 ? 1.0 / scalar : std::nan("");
      out.push_back({printed.cls, printed.is_beta, printed.scalar, printed.coefficient, arbitrated,
                     printed.text});
    }
    return out;
  }();
  return relations;
}

Parameters recover_parameters(const StructureConstants& c, BasicClass s, double tol) {
  const ClassProfile profile = extract_profile(c);
  const ClassSignature sig = classify(profile, tol);
  if (sig != make_signature({s})) {
    throw ClassificationError("algebra is not pure class " + std::string(to_string(s)) + ": signature is " +
                              sig.to_string());
  }
  const auto values = profile.values();
  Parameters out;
  for (const auto& r : parameter_relations()) {
    if (r.cls != s) continue;
    const double v = r.arbitrated_coefficient * values[static_cast<std::size_t>(r.scalar)];
    (r.is_beta ? out.beta : out.alpha) = v;
  }
  return out;
}

std::vector<IdentityCheck> arbitrate_parameter_relations() {
  static constexpr std::array<double, 4> kDraws = {1.0, -2.0, 0.5, 3.0};
  std::vector<IdentityCheck> out;
  for (const auto& r : parameter_relations()) {
    IdentityCheck check;
    check.source = "class parameter relations";
    check.identity = std::string(r.text);
    for (double value : kDraws) {
      const StructureConstants c =
          r.is_beta ? canonical_algebra(r.cls, 0.0, value) : canonical_algebra(r.cls, value, 0.0);
      const ClassProfile truth = profile_from_tensor(f_from_connection(c), c.scale());
      const double predicted = r.printed_coefficient * truth.values()[static_cast<std::size_t>(r.scalar)];
      check.max_discrepancy = std::max(check.max_discrepancy, std::abs(predicted - value) / c.scale());
      ++check.samples;
    }
    check.conflicts = check.max_discrepancy > 1e-12;
    if (check.conflicts) check.oracle_reading = relation_text(r, r.arbitrated_coefficient);
    out.push_back(std::move(check));
  }
  return out;
}

ReconciliationTable full_reconciliation(std::uint64_t seed, std::size_t draws, std::size_t random_algebras) {
  std::vector<StructureConstants> samples;
  for (std::size_t n = 0; n < kBasicClasses.size(); ++n) {
    for (std::size_t d = 0; d < draws; ++d) {
      SampleRng rng(sample_seed(seed, 100 + n, d));
      const double alpha = rng.uniform(-3.0, 3.0);
      const double beta = rng.uniform(-3.0, 3.0);
      samples.push_back(canonical_algebra(kBasicClasses[n], alpha, uses_beta(kBasicClasses[n]) ? beta : 0.0));
    }
  }
  for (std::size_t d = 0; d < random_algebras; ++d) {
    SampleRng rng(sample_seed(seed, 200, d));
    samples.push_back(random_lie_algebra(rng));
  }
  ReconciliationTable table = reconcile_component_table(samples);
  for (auto& check : arbitrate_parameter_relations()) table.checks.push_back(std::move(check));
  return table;
}

}  // namespace acbm
