#include "acbm/reconcile.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include "acbm/error.hpp"

namespace acbm {

namespace {

std::string format_coefficients(const std::array<double, 9>& coefficients) {
  static constexpr std::array<std::string_view, 9> names = {"C01^0", "C01^1", "C01^2", "C02^0", "C02^1",
                                                            "C02^2", "C12^0", "C12^1", "C12^2"};
  std::ostringstream out;
  bool first = true;
  for (std::size_t n = 0; n < 9; ++n) {
    const double v = coefficients[n];
    if (std::abs(v) < 1e-9) continue;
    out << (v < 0 ? (first ? "-" : " - ") : (first ? "" : " + "));
    if (std::abs(std::abs(v) - 1.0) > 1e-9) out << std::abs(v) << " ";
    out << names[n];
    first = false;
  }
  if (first) out << "0";
  return out.str();
}

// Least-squares fit of a linear form in the flat constants to observed values.
std::array<double, 9> fit_linear_form(std::span<const StructureConstants> samples,
                                      const std::vector<double>& values) {
  Eigen::MatrixXd x(static_cast<Eigen::Index>(samples.size()), 9);
  Eigen::VectorXd y(static_cast<Eigen::Index>(samples.size()));
  for (std::size_t r = 0; r < samples.size(); ++r) {
    const auto flat = samples[r].flat();
    for (int n = 0; n < 9; ++n) x(static_cast<Eigen::Index>(r), n) = flat[static_cast<std::size_t>(n)];
    y[static_cast<Eigen::Index>(r)] = values[r];
  }
  const Eigen::VectorXd beta = x.colPivHouseholderQr().solve(y);
  std::array<double, 9> out{};
  for (int n = 0; n < 9; ++n) {
    // Printed coefficients are multiples of 1/2; snap the fit to that grid when it is that close.
    const double snapped = std::round(2.0 * beta[n]) / 2.0;
    out[static_cast<std::size_t>(n)] = std::abs(snapped - beta[n]) < 1e-9 ? snapped : beta[n];
  }
  return out;
}

double evaluate(const std::array<double, 9>& coefficients, const StructureConstants& c) {
  const auto flat = c.flat();
  double s = 0.0;
  for (std::size_t n = 0; n < 9; ++n) s += coefficients[n] * flat[n];
  return s;
}

double lee_component(const LeeForms& forms, int form, int component) {
  switch (form) {
    case 0: return forms.theta[component];
    case 1: return forms.theta_star[component];
    default: return forms.omega[component];
  }
}

std::string component_name(const std::array<int, 3>& s) {
  return "F" + std::to_string(s[0]) + std::to_string(s[1]) + std::to_string(s[2]);
}

}  // namespace

std::vector<IdentityCheck> ReconciliationTable::conflicts() const {
  std::vector<IdentityCheck> out;
  std::copy_if(checks.begin(), checks.end(), std::back_inserter(out),
               [](const IdentityCheck& c) { return c.conflicts; });
  return out;
}

ReconciliationTable reconcile_component_table(std::span<const StructureConstants> samples,
                                              double tol) {
  if (samples.empty()) throw ArgumentError("reconciliation needs at least one sample");
  ReconciliationTable table;
  table.tolerance = tol;

  std::vector<FTensor> oracle;
  std::vector<LeeForms> oracle_lee;
  oracle.reserve(samples.size());
  for (const auto& c : samples) {
    oracle.push_back(f_from_connection(c));
    oracle_lee.push_back(contract_lee_forms(oracle.back()));
  }

  // Global sign: compare +/- the printed table against the oracle in aggregate.
  double plus = 0.0;
  double minus = 0.0;
  for (std::size_t n = 0; n < samples.size(); ++n) {
    const FTensor printed = f_from_structure(samples[n], Transcription::printed);
    plus += (printed - oracle[n]).max_abs();
    minus += (printed + oracle[n]).max_abs();
  }
  table.global_sign = minus < plus ? -1 : 1;
  const double sign = table.global_sign;

  std::set<std::array<int, 3>> listed;
  for (const auto& rule : component_rules(Transcription::printed)) {
    IdentityCheck check;
    check.source = "component table";
    check.identity = std::string(rule.text);
    check.samples = samples.size();
    for (const auto& slot : rule.slots) {
      listed.insert(slot);
      std::vector<double> observed;
      for (std::size_t n = 0; n < samples.size(); ++n) {
        const double printed = sign * evaluate(rule.coefficients, samples[n]);
        const double truth = oracle[n](slot[0], slot[1], slot[2]);
        observed.push_back(truth);
        check.max_discrepancy =
            std::max(check.max_discrepancy, std::abs(printed - truth) / samples[n].scale());
      }
      if (check.max_discrepancy > tol && check.oracle_reading.empty()) {
        check.oracle_reading =
            component_name(slot) + " = " + format_coefficients(fit_linear_form(samples, observed));
      }
    }
    check.conflicts = check.max_discrepancy > tol;
    table.checks.push_back(std::move(check));
  }

  {
    IdentityCheck check;
    check.source = "component table";
    check.identity = "all components not listed vanish";
    check.samples = samples.size();
    std::string worst;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        for (int k = 0; k < 3; ++k) {
          if (listed.count({i, j, k}) != 0) continue;
          for (std::size_t n = 0; n < samples.size(); ++n) {
            const double d = std::abs(oracle[n](i, j, k)) / samples[n].scale();
            if (d > check.max_discrepancy) {
              check.max_discrepancy = d;
              worst = component_name({i, j, k});
            }
          }
        }
    check.conflicts = check.max_discrepancy > tol;
    if (check.conflicts) check.oracle_reading = worst + " is nonzero";
    table.checks.push_back(std::move(check));
  }

  for (const auto& rule : lee_rules(Transcription::printed)) {
    IdentityCheck check;
    check.source = "Lee forms";
    check.identity = std::string(rule.text);
    check.samples = samples.size();
    std::vector<double> observed;
    for (std::size_t n = 0; n < samples.size(); ++n) {
      const double printed = sign * evaluate(rule.coefficients, samples[n]);
      const double truth = lee_component(oracle_lee[n], rule.form, rule.component);
      observed.push_back(truth);
      check.max_discrepancy = std::max(check.max_discrepancy, std::abs(printed - truth) / samples[n].scale());
    }
    check.conflicts = check.max_discrepancy > tol;
    if (check.conflicts) {
      static constexpr std::array<std::string_view, 3> forms = {"theta_", "theta*_", "omega_"};
      check.oracle_reading = std::string(forms[static_cast<std::size_t>(rule.form)]) +
                             std::to_string(rule.component) + " = " +
                             format_coefficients(fit_linear_form(samples, observed));
    }
    table.checks.push_back(std::move(check));
  }

  for (std::size_t n = 0; n < samples.size(); ++n) {
    const FTensor reconciled = f_from_structure(samples[n], Transcription::reconciled);
    table.reconciled_max_discrepancy = std::max(
        table.reconciled_max_discrepancy, (sign * reconciled - oracle[n]).max_abs() / samples[n].scale());
  }
  table.reconciled_agrees = table.reconciled_max_discrepancy <= tol;
  return table;
}

}  // namespace acbm
