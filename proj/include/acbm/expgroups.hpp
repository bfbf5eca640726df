#ifndef ACBM_EXPGROUPS_HPP
#define ACBM_EXPGROUPS_HPP

// Closed-form group elements e^A = E + t A + u A^2 for the matrix
// representations of the canonical algebras, and two independent
// exponentials to check them against.

#include <string_view>

#include "acbm/algebra.hpp"
#include "acbm/classification.hpp"

namespace acbm {

enum class CoefficientMode { printed, corrected };

enum class Branch {
  trace_zero,
  trace_nonzero,
  trsq_negative,
  trsq_zero,
  trsq_positive,
  series_fallback,
};

std::string_view to_string(CoefficientMode m);
std::string_view to_string(Branch b);
CoefficientMode parse_mode(std::string_view name);

struct ExpCoefficients {
  double t = 1.0;
  double u = 0.0;
  Branch branch = Branch::trace_zero;
  CoefficientMode mode = CoefficientMode::corrected;
  /// tr A for the quadratic family, tr A^2 for the cubic one.
  double branch_scalar = 0.0;
};

/// Which truncation identity a class's matrices satisfy.
enum class Family {
  quadratic,  ///< A^2 = tau A with tau the nonzero eigenvalue (F1, F5, F11)
  cubic,      ///< A^3 = kappa A with kappa = tr(A^2) / 2 (F4, F8, F9, F10)
};

Family family_of(BasicClass s);

/// tau (quadratic family) or kappa (cubic family) of a class-s matrix.
double family_parameter(BasicClass s, const Mat3& a);

/// Max(1, |A|_F); powers of it normalize thresholds on tau and kappa.
double matrix_scale(const Mat3& a);

/// Relative thresholds below which the closed forms switch to their series.
inline constexpr double kSeriesThreshold = 1e-6;
/// Residual allowed in the family identity, relative to scale^2 or scale^3.
inline constexpr double kFamilyTolerance = 1e-10;

struct BasisMatrices {
  Mat3 m0, m1, m2;
};

/// Basis matrices of the representation, M_i(j, k) = -C_ij^k (row j, column k).
BasisMatrices basis_matrices(const StructureConstants& c);

/// The algebra element c M0 + a M1 + b M2.
Mat3 algebra_element(const StructureConstants& c, double a, double b, double cc);

/// The tabulated matrix for class s at coordinates (a, b, c). Equal to
/// algebra_element(canonical_algebra(s, alpha, beta), a, b, c).
Mat3 table1_matrix(BasicClass s, double alpha, double beta, double a, double b, double c);

/// Coefficients (t, u) for a matrix of class s.
///
/// `printed` evaluates the tabulated formulas literally. `corrected` uses the
/// truncation identity of the class family with cancellation-free forms
/// (expm1, half-angle identities) and a series below kSeriesThreshold.
/// Throws FamilyViolation if A does not satisfy its family identity.
ExpCoefficients table1_coefficients(BasicClass s, const Mat3& a, CoefficientMode mode);

/// E + t A + u A^2.
Mat3 closed_form_exp(const Mat3& a, const ExpCoefficients& coeffs);

/// Scaling and squaring: scale A until |A|_F <= 2^-5, sum the Taylor series to
/// machine precision, square back. Throws ValidationError on non-finite input.
Mat3 reference_expm(const Mat3& a);

enum class SpectralPath { distinct, confluent, fallback };
std::string_view to_string(SpectralPath p);

struct SpectralExp {
  Mat3 value;
  SpectralPath path;
};

/// Hermite interpolation of exp on the spectrum of A:
/// e^A = f[l1] E + f[l1,l2] (A - l1) + f[l1,l2,l3] (A - l1)(A - l2)
/// with confluent divided differences at repeated eigenvalues. Eigenvalue
/// pairs that are close but not clustered make the interpolant
/// ill-conditioned; those fall back to reference_expm and say so.
SpectralExp spectral_exp(const Mat3& a);

/// |x - ref|_F / max(1, |ref|_F).
double relative_error(const Mat3& x, const Mat3& ref);

struct GroupSample {
  BasicClass cls = BasicClass::F1;
  Parameters params;
  Vec3 coords = Vec3::Zero();  ///< (a, b, c)
  Mat3 a = Mat3::Zero();
  ExpCoefficients coeffs;
  Mat3 closed = Mat3::Identity();
  Mat3 reference = Mat3::Identity();
  double error = 0.0;
};

GroupSample verify_sample(BasicClass s, double alpha, double beta, double a, double b, double c,
                          CoefficientMode mode);

}  // namespace acbm

#endif  // ACBM_EXPGROUPS_HPP
