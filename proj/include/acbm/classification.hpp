#ifndef ACBM_CLASSIFICATION_HPP
#define ACBM_CLASSIFICATION_HPP

#include <array>
#include <bitset>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "acbm/algebra.hpp"
#include "acbm/reconcile.hpp"

namespace acbm {

/// The basic classes that survive in dimension three. F2, F3, F6 and F7 are
/// identically zero there and are not representable.
enum class BasicClass : std::uint8_t { F1, F4, F5, F8, F9, F10, F11 };

inline constexpr std::array<BasicClass, 7> kBasicClasses = {
    BasicClass::F1, BasicClass::F4, BasicClass::F5, BasicClass::F8,
    BasicClass::F9, BasicClass::F10, BasicClass::F11};

/// Default relative tolerance for "this class parameter vanishes".
inline constexpr double kMembershipTolerance = 1e-9;

std::string_view to_string(BasicClass s);
/// Accepts "F1", "f1", "F_1". Throws ArgumentError otherwise.
BasicClass parse_basic_class(std::string_view name);
/// True for the two-parameter families F1 and F11.
bool uses_beta(BasicClass s);

/// The nine scalars that parameterize F in dimension three.
struct ClassProfile {
  double theta0 = 0, theta1 = 0, theta2 = 0;
  double theta_star0 = 0;
  double lambda = 0, mu = 0, nu = 0;
  double omega1 = 0, omega2 = 0;
  double scale = 1;

  /// Order: theta0, theta1, theta2, theta_star0, lambda, mu, nu, omega1, omega2.
  std::array<double, 9> values() const;
  static constexpr std::array<std::string_view, 9> names = {
      "theta0", "theta1", "theta2", "theta_star0", "lambda", "mu", "nu", "omega1", "omega2"};
};

class ClassSignature {
 public:
  ClassSignature() = default;

  void insert(BasicClass s) { bits_.set(static_cast<std::size_t>(s)); }
  bool contains(BasicClass s) const { return bits_.test(static_cast<std::size_t>(s)); }
  bool is_f0() const { return bits_.none(); }
  std::size_t size() const { return bits_.count(); }
  std::vector<BasicClass> members() const;

  /// "F4 ⊕ F10", or "F0 (cosymplectic)" when empty.
  std::string to_string() const;

  friend bool operator==(const ClassSignature&, const ClassSignature&) = default;

 private:
  std::bitset<7> bits_;
};

ClassSignature make_signature(std::initializer_list<BasicClass> members);

/// Linear map from constants to the nine class scalars (oracle-consistent signs).
ClassProfile extract_profile(const StructureConstants& c);

/// Projects a tensor onto the nine class scalars:
/// theta, theta*, omega by contraction; lambda = (F101 + F202) / 2,
/// mu = (F102 - F201) / 2, nu = F011.
ClassProfile profile_from_tensor(const FTensor& f, double scale = 1.0);

/// Membership is independent per scalar, zero meaning |value| <= tol * scale.
/// Throws ArgumentError if tol < 0.
ClassSignature classify(const ClassProfile& profile, double tol = kMembershipTolerance);

/// The canonical commutators of class s. `beta` only matters for F1 and F11;
/// for other classes a nonzero beta is ignored and a note is appended to
/// `warnings` when provided.
StructureConstants canonical_algebra(BasicClass s, double alpha, double beta = 0.0,
                                     std::vector<std::string>* warnings = nullptr);

/// Sum of the seven basic-class templates evaluated at the profile.
FTensor reconstruct_F(const ClassProfile& profile);

struct Parameters {
  double alpha = 0.0;
  double beta = 0.0;
};

/// Inverts canonical_algebra for a pure class-s algebra using the
/// oracle-arbitrated parameter relations. Throws ClassificationError naming
/// the actual signature when C is not pure class s.
Parameters recover_parameters(const StructureConstants& c, BasicClass s,
                              double tol = kMembershipTolerance);

/// A relation "parameter = coefficient * scalar" between a canonical
/// parameter and one of the profile scalars.
struct ParameterRelation {
  BasicClass cls;
  bool is_beta;
  int scalar;  ///< index into ClassProfile::values()
  double printed_coefficient;
  double arbitrated_coefficient;
  std::string_view text;
};

/// The published relations with the coefficient the Koszul oracle implies
/// (computed once, from f_from_connection of the canonical algebras).
const std::vector<ParameterRelation>& parameter_relations();

/// Checks the published parameter relations against the oracle.
std::vector<IdentityCheck> arbitrate_parameter_relations();

/// Component table and parameter relations, checked on the seven canonical
/// families (`draws` random parameter pairs each) plus `random_algebras`
/// random Lie algebras.
ReconciliationTable full_reconciliation(std::uint64_t seed, std::size_t draws = 100,
                                        std::size_t random_algebras = 200);

}  // namespace acbm

#endif  // ACBM_CLASSIFICATION_HPP
