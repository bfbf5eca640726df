#ifndef ACBM_VERIFY_HPP
#define ACBM_VERIFY_HPP

// Seeded sweep over every (class, branch) cell of the closed-form table in
// both coefficient modes, with group-axiom checks on the corrected samples
// and the oracle reconciliation of the component table.

#include <cstddef>
#include <cstdint>
#include <vector>

#include "acbm/expgroups.hpp"
#include "acbm/reconcile.hpp"

namespace acbm {

struct SweepConfig {
  std::uint64_t seed = 42;
  std::size_t samples = 1000;       ///< per (class, branch) cell
  double tolerance = 1e-10;         ///< corrected-mode exp agreement
  double near_tolerance = 1e-8;     ///< near-branch samples
  std::size_t near_samples = 0;     ///< per (cell, magnitude); 0 means min(samples, 100)
  unsigned workers = 0;             ///< 0: ACBM_WORKERS or hardware concurrency
};

struct CellResult {
  BasicClass cls = BasicClass::F1;
  Branch branch = Branch::trace_zero;  ///< the branch the samples were drawn for
  CoefficientMode mode = CoefficientMode::corrected;
  std::size_t samples = 0;
  double max_error = 0.0;
  double mean_error = 0.0;
  bool pass = false;
  bool asserted = false;  ///< only corrected-mode cells are asserted
  /// Count of samples per reported ExpCoefficients::branch tag.
  std::vector<std::pair<Branch, std::size_t>> branch_tags;
};

struct NearBranchResult {
  BasicClass cls = BasicClass::F1;
  double target = 0.0;  ///< signed branch scalar (tr A or tr A^2)
  std::size_t samples = 0;
  std::size_t series_fallback = 0;  ///< samples that took the series path
  double max_error = 0.0;
  bool pass = false;
};

/// Group-axiom errors over all corrected-mode samples of one class.
/// Products are normalized by max(1, |X|_F |Y|_F) and the determinant defect
/// by e^{tr A} * max(1, |e^A|_F |e^-A|_F), the first-order rounding bounds.
struct AxiomResult {
  BasicClass cls = BasicClass::F1;
  std::size_t samples = 0;
  double max_inverse_error = 0.0;
  double max_determinant_error = 0.0;
  double max_additivity_error = 0.0;
  bool pass = false;
};

struct DivergenceCell {
  BasicClass cls;
  Branch branch;
  double printed_max_error;
  double corrected_max_error;
};

struct VerificationReport {
  SweepConfig config;
  std::vector<CellResult> cells;
  std::vector<NearBranchResult> near_branch;
  std::vector<AxiomResult> axioms;
  std::vector<DivergenceCell> divergence_cells;
  ReconciliationTable reconciliation;

  bool corrected_pass() const;
  bool reconciliation_pass() const { return reconciliation.reconciled_agrees; }
  bool pass() const { return corrected_pass() && reconciliation_pass(); }
};

/// The branches sampled for each class.
std::vector<Branch> sampled_branches(BasicClass s);

VerificationReport run_verification(const SweepConfig& config);

}  // namespace acbm

#endif  // ACBM_VERIFY_HPP
