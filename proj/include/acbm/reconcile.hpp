#ifndef ACBM_RECONCILE_HPP
#define ACBM_RECONCILE_HPP

// Checks each published identity relating commutators, F, Lee forms and
// class parameters against the Koszul oracle. Nothing here decides the answer
// in advance: the table lists whatever the oracle measures.

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "acbm/algebra.hpp"

namespace acbm {

struct IdentityCheck {
  std::string source;          ///< "component table", "Lee forms", "class parameter relations", ...
  std::string identity;        ///< the identity as printed
  std::string oracle_reading;  ///< what the oracle measures instead (empty when consistent)
  std::size_t samples = 0;
  double max_discrepancy = 0.0;  ///< max |printed - oracle| / scale over the samples
  bool conflicts = false;
};

struct ReconciliationTable {
  /// +1 or -1: the overall sign that best aligns the printed table with the oracle.
  int global_sign = 1;
  double tolerance = 1e-12;
  std::vector<IdentityCheck> checks;
  /// Max over samples of |f_from_structure(reconciled) - f_from_connection| / scale.
  double reconciled_max_discrepancy = 0.0;
  bool reconciled_agrees = false;

  std::vector<IdentityCheck> conflicts() const;
};

/// Compares every printed component-table row and Lee-form formula against the
/// oracle over `samples` (each must satisfy the Jacobi identity).
ReconciliationTable reconcile_component_table(std::span<const StructureConstants> samples,
                                              double tol = 1e-12);

}  // namespace acbm

#endif  // ACBM_RECONCILE_HPP
