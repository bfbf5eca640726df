#ifndef ACBM_FIXTURES_HPP
#define ACBM_FIXTURES_HPP

// Named example groups: the hyperbolic motions of the plane (GI), the
// Euclidean motions of the plane (GII), the Heisenberg group (GIII) and the
// rotation group SO(3).

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "acbm/algebra.hpp"
#include "acbm/classification.hpp"

namespace acbm {

enum class Example { GI, GII, GIII, SO3 };

/// How GIII's derived algebra sits relative to the structure.
enum class HeisenbergVariant {
  ker_eta,  ///< derived algebra inside Ker(eta)
  span_xi,  ///< derived algebra equal to Span(xi)
};

inline constexpr std::array<Example, 4> kExamples = {Example::GI, Example::GII, Example::GIII,
                                                     Example::SO3};

std::string_view to_string(Example e);
std::string_view to_string(HeisenbergVariant v);
Example parse_example(std::string_view name);
HeisenbergVariant parse_variant(std::string_view name);

struct ExampleRecord {
  Example name = Example::GI;
  std::optional<HeisenbergVariant> variant;
  StructureConstants constants;
  std::string substitution;        ///< the map from (X1, X2, X3) to the frame
  ClassSignature claimed;          ///< class stated for this example in the literature
  ClassSignature computed;         ///< extract_profile + classify on `constants`
  /// When true a mismatch between claimed and computed is a failure; otherwise
  /// it is reported as a discrepancy (the claim rests on external results).
  bool claim_is_assertable = false;
  std::string bianchi_label;
  std::string description;
};

/// variant defaults to ker_eta for GIII and must be empty for the others.
ExampleRecord example_algebra(Example name, std::optional<HeisenbergVariant> variant = {});

/// All records, GIII in both variants.
std::vector<ExampleRecord> all_example_records();

/// The parametric matrix groups GI, GII, GIII at (x, y, z).
Mat3 example_group_element(Example name, double x, double y, double z);

/// E + sin(angle) K + (1 - cos(angle)) K^2 with K the skew matrix of `axis`.
/// Throws ArgumentError unless |axis| = 1 to 1e-12.
Mat3 rodrigues(const Vec3& axis, double angle);

/// Skew matrix K with K v = axis x v.
Mat3 skew(const Vec3& axis);

/// Coordinates (a, b, c) of the F4 tabulated matrix (alpha = 1) whose
/// exponential is GII(x, y, z) after the layout map J G^T J, J the
/// order-reversing permutation. Throws ArgumentError where the map is
/// singular (z a nonzero multiple of 2 pi).
Vec3 gii_to_f4_coordinates(double x, double y, double z);

/// J G^T J with J the order-reversing permutation on (0, 1, 2).
Mat3 gii_layout(const Mat3& g);

struct ConsistencyReport {
  std::size_t samples = 0;
  double max_error = 0.0;
  double tolerance = 1e-12;
  bool pass = false;
};

/// Compares closed_form_exp of the F4 matrix at gii_to_f4_coordinates(x, y, z)
/// with gii_layout(GII(x, y, z)) on `samples` random triples (z in [-3, 3]).
/// Throws ArgumentError for names other than GII.
ConsistencyReport fixture_exp_consistency(Example name, std::size_t samples = 100,
                                          std::uint64_t seed = 7);

struct RodriguesReport {
  std::size_t samples = 0;
  double max_reference_error = 0.0;   ///< vs reference_expm(angle K)
  double max_orthogonality_error = 0.0;  ///< |R^T R - E|_F
  double max_determinant_error = 0.0;    ///< |det R - 1|
  /// E + sin(angle) A + (1 - cos(angle)) A^2 with A = angle K, the display
  /// taken literally; reported, never asserted (it is exact only for unit angle).
  double max_literal_display_error = 0.0;
  double tolerance = 1e-12;
  bool pass = false;
};

/// Random unit axes and angles in [-2 pi, 2 pi].
RodriguesReport rodrigues_check(std::size_t samples = 100, std::uint64_t seed = 11);

}  // namespace acbm

#endif  // ACBM_FIXTURES_HPP
