#ifndef ACBM_ALGEBRA_HPP
#define ACBM_ALGEBRA_HPP

// Three-dimensional real Lie algebras on the adapted frame (E0 = xi, E1, E2)
// of an almost contact B-metric structure, the fundamental tensor
// F(x,y,z) = g((nabla_x phi) y, z) and its Lee forms.
//
// All arrays are indexed 0..2 in frame order, E0 first.

#include <array>
#include <span>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace acbm {

using Mat3 = Eigen::Matrix3d;
using Vec3 = Eigen::Vector3d;

/// Default relative tolerance of the Jacobi check, applied as tol * scale().
inline constexpr double kJacobiTolerance = 1e-9;

/// The fixed structure (phi, xi, eta, g) on the frame.
struct BasisFrame {
  Mat3 phi;     ///< column j holds phi(E_j)
  Vec3 eta;     ///< eta(E_j) = eta[j]
  Mat3 metric;  ///< g(E_i, E_j) = metric(i, j) = diag(1, 1, -1)
  int xi = 0;   ///< index of the Reeb vector

  static const BasisFrame& standard();

  double g(const Vec3& x, const Vec3& y) const { return x.dot(metric * y); }
  Vec3 apply_phi(const Vec3& x) const { return phi * x; }
};

/// Commutation coefficients C_ij^k of [E_i, E_j] = C_ij^k E_k.
///
/// Only the ordered pairs (0,1), (0,2) and (1,2) are stored; component k of
/// each vector is C_ij^k. The remaining pairs follow from antisymmetry.
struct StructureConstants {
  Vec3 c01 = Vec3::Zero();
  Vec3 c02 = Vec3::Zero();
  Vec3 c12 = Vec3::Zero();

  StructureConstants() = default;
  StructureConstants(const Vec3& c01_, const Vec3& c02_, const Vec3& c12_)
      : c01(c01_), c02(c02_), c12(c12_) {}

  /// Flat order: C01^0..2, C02^0..2, C12^0..2.
  static StructureConstants from_flat(std::span<const double, 9> values);
  std::array<double, 9> flat() const;

  /// C_ij^k for any i, j (zero on the diagonal).
  double operator()(int i, int j, int k) const;
  /// Coordinates of [E_i, E_j].
  Vec3 bracket(int i, int j) const;
  /// Coordinates of [x, y] for arbitrary algebra elements.
  Vec3 bracket(const Vec3& x, const Vec3& y) const;

  double norm_inf() const;
  /// max(1, |C|_inf); the normalization of every relative tolerance.
  double scale() const;
  bool is_finite() const;

  friend StructureConstants operator+(const StructureConstants& a, const StructureConstants& b);
  friend StructureConstants operator-(const StructureConstants& a, const StructureConstants& b);
  friend StructureConstants operator*(double s, const StructureConstants& a);
  friend bool operator==(const StructureConstants& a, const StructureConstants& b);
};

/// F(E_i, E_j, E_k) on the frame.
struct FTensor {
  std::array<double, 27> data{};

  double& operator()(int i, int j, int k) { return data[9 * i + 3 * j + k]; }
  double operator()(int i, int j, int k) const { return data[9 * i + 3 * j + k]; }

  double max_abs() const;
  /// max |f_ijk - f_ikj|
  double symmetry_defect() const;

  friend FTensor operator+(const FTensor& a, const FTensor& b);
  friend FTensor operator-(const FTensor& a, const FTensor& b);
  friend FTensor operator*(double s, const FTensor& a);
};

struct LeeForms {
  Vec3 theta = Vec3::Zero();
  Vec3 theta_star = Vec3::Zero();
  Vec3 omega = Vec3::Zero();
};

/// gamma(i, j, k) is the coefficient of E_k in nabla_{E_i} E_j.
struct ConnectionCoefficients {
  std::array<double, 27> data{};

  double& operator()(int i, int j, int k) { return data[9 * i + 3 * j + k]; }
  double operator()(int i, int j, int k) const { return data[9 * i + 3 * j + k]; }
  Vec3 covariant(int i, int j) const { return {(*this)(i, j, 0), (*this)(i, j, 1), (*this)(i, j, 2)}; }
};

struct TripleResidual {
  std::array<int, 3> triple;
  double residual;
};

struct JacobiReport {
  bool satisfied = true;
  double max_residual = 0.0;
  double threshold = 0.0;                ///< tol * max(1, |C|_inf)
  std::vector<TripleResidual> residuals;  ///< one entry per unordered triple i <= j <= k
};

/// Evaluates the cyclic sum [[E_i,E_j],E_k] + [[E_j,E_k],E_i] + [[E_k,E_i],E_j].
/// Throws ValidationError on non-finite constants, ArgumentError on tol < 0.
JacobiReport validate_jacobi(const StructureConstants& c, double tol = kJacobiTolerance);

/// Throws ValidationError naming the worst triple if the Jacobi check fails.
void require_jacobi(const StructureConstants& c, double tol = kJacobiTolerance);

/// Which version of the commutator-to-F component table to apply.
///
/// `printed` is the table exactly as published. `reconciled` replaces the
/// rows the Koszul oracle rejects (F211 = F222 and the Lee-form entries
/// derived from it carry the opposite sign); see reconcile.hpp.
enum class Transcription { printed, reconciled };

std::string_view to_string(Transcription t);

/// One printed row of the component table: two equal components of F given
/// by a linear form in the flat structure constants.
struct ComponentRule {
  std::array<std::array<int, 3>, 2> slots;
  std::array<double, 9> coefficients;
  std::string_view text;
};

/// One printed Lee-form formula: `form` is 0 (theta), 1 (theta*), 2 (omega).
struct LeeRule {
  int form;
  int component;
  std::array<double, 9> coefficients;
  std::string_view text;
};

std::span<const ComponentRule> component_rules(Transcription t);
std::span<const LeeRule> lee_rules(Transcription t);

FTensor f_from_structure(const StructureConstants& c, Transcription t = Transcription::reconciled);
LeeForms lee_forms(const StructureConstants& c, Transcription t = Transcription::reconciled);

/// The defining contractions theta(z) = g^ij F(e_i, e_j, z),
/// theta*(z) = g^ij F(e_i, phi e_j, z), omega(z) = F(xi, xi, z).
LeeForms contract_lee_forms(const FTensor& f);

/// Left-invariant Levi-Civita connection from the Koszul identity
///   2 g(nabla_X Y, Z) = g([X,Y],Z) - g([Y,Z],X) + g([Z,X],Y).
/// Throws ValidationError if the constants do not define a Lie algebra.
ConnectionCoefficients levi_civita(const StructureConstants& c);

/// F computed from first principles, (nabla_X phi) Y = nabla_X(phi Y) - phi(nabla_X Y).
/// This is the ground truth against which the component table is judged.
FTensor f_from_connection(const StructureConstants& c);

/// A basis of the derived algebra [g, g].
std::vector<Vec3> derived_algebra(const StructureConstants& c);

/// Dimensions of g, g' = [g,g], g'' = [g',g'], g''' = [g'',g''].
std::array<int, 4> derived_series_dimensions(const StructureConstants& c);

/// Dimensions of g, [g,g], [g,[g,g]], [g,[g,[g,g]]].
std::array<int, 4> lower_central_series_dimensions(const StructureConstants& c);

}  // namespace acbm

#endif  // ACBM_ALGEBRA_HPP
