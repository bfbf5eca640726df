#include "acbm/fixtures.hpp"

#include <cmath>
#include <numbers>

#include "acbm/error.hpp"
#include "acbm/expgroups.hpp"
#include "acbm/sampling.hpp"

namespace acbm {

namespace {

ExampleRecord make_record(Example name, std::optional<HeisenbergVariant> variant, StructureConstants c,
                          std::string substitution, ClassSignature claimed, bool assertable,
                          std::string bianchi, std::string description) {
  ExampleRecord r;
  r.name = name;
  r.variant = variant;
  r.constants = c;
  r.substitution = std::move(substitution);
  r.claimed = claimed;
  r.computed = classify(extract_profile(c));
  r.claim_is_assertable = assertable;
  r.bianchi_label = std::move(bianchi);
  r.description = std::move(description);
  return r;
}

}  // namespace

std::string_view to_string(Example e) {
  switch (e) {
    case Example::GI: return "GI";
    case Example::GII: return "GII";
    case Example::GIII: return "GIII";
    case Example::SO3: return "SO3";
  }
  return "unknown";
}

std::string_view to_string(HeisenbergVariant v) { return v == HeisenbergVariant::ker_eta ? "ker-eta" : "span-xi"; }

Example parse_example(std::string_view name) {
  for (auto e : kExamples)
    if (name == to_string(e)) return e;
  throw ArgumentError("unknown example '" + std::string(name) + "' (expected GI, GII, GIII or SO3)");
}

HeisenbergVariant parse_variant(std::string_view name) {
  if (name == "ker-eta" || name == "ker_eta") return HeisenbergVariant::ker_eta;
  if (name == "span-xi" || name == "span_xi") return HeisenbergVariant::span_xi;
  throw ArgumentError("unknown variant '" + std::string(name) + "' (expected ker-eta or span-xi)");
}

ExampleRecord example_algebra(Example name, std::optional<HeisenbergVariant> variant) {
  if (name != Example::GIII && variant.has_value()) {
    throw ArgumentError("only GIII takes a variant");
  }
  switch (name) {
    case Example::GI:
      // [X1,X3] = X1, [X2,X3] = -X2
      return make_record(name, {}, {Vec3(0, 1, 0), Vec3(0, 0, -1), Vec3(0, 0, 0)},
                         "X1 = E1, X2 = E2, X3 = -E0", make_signature({BasicClass::F9}), true, "Bia(5)",
                         "hyperbolic motions of the plane");
    case Example::GII:
      // [X1,X3] = -X2, [X2,X3] = X1
      return make_record(name, {}, {Vec3(0, 0, 1), Vec3(0, -1, 0), Vec3(0, 0, 0)},
                         "X1 = E1, X2 = E2, X3 = E0", make_signature({BasicClass::F4}), true, "Bia(VII0)",
                         "Euclidean motions of the plane");
    case Example::GIII: {
      // [X1,X3] = X2
      const auto v = variant.value_or(HeisenbergVariant::ker_eta);
      if (v == HeisenbergVariant::ker_eta) {
        return make_record(name, v, {Vec3(0, 0, 0), Vec3(0, -1, 0), Vec3(0, 0, 0)},
                           "X1 = E2, X2 = E1, X3 = E0", make_signature({BasicClass::F4, BasicClass::F10}), false,
                           "Bia(2)", "Heisenberg group, derived algebra in Ker(eta)");
      }
      return make_record(name, v, {Vec3(0, 0, 0), Vec3(0, 0, 0), Vec3(1, 0, 0)}, "X1 = E1, X2 = E0, X3 = E2",
                         make_signature({BasicClass::F8, BasicClass::F10}), false, "Bia(2)",
                         "Heisenberg group, derived algebra Span(xi)");
    }
    case Example::SO3:
      // [X1,X2] = X3, [X2,X3] = X1, [X3,X1] = X2
      return make_record(name, {}, {Vec3(0, 0, 1), Vec3(0, -1, 0), Vec3(1, 0, 0)},
                         "X1 = E1, X2 = E2, X3 = E0",
                         make_signature({BasicClass::F4, BasicClass::F8, BasicClass::F10}), false, "Bia(9)",
                         "rotation group");
  }
  throw ArgumentError("unknown example");
}

std::vector<ExampleRecord> all_example_records() {
  return {example_algebra(Example::GI), example_algebra(Example::GII),
          example_algebra(Example::GIII, HeisenbergVariant::ker_eta),
          example_algebra(Example::GIII, HeisenbergVariant::span_xi), example_algebra(Example::SO3)};
}

Mat3 example_group_element(Example name, double x, double y, double z) {
  Mat3 m;
  switch (name) {
    case Example::GI:
      m << std::exp(-z), 0, x,
           0, std::exp(z), y,
           0, 0, 1;
      return m;
    case Example::GII:
      m << std::cos(z), -std::sin(z), x,
           std::sin(z), std::cos(z), y,
           0, 0, 1;
      return m;
    case Example::GIII:
      m << 1, x, y,
           0, 1, z,
           0, 0, 1;
      return m;
    case Example::SO3:
      break;
  }
  throw ArgumentError("no parametric group element for " + std::string(to_string(name)) + "; use rodrigues");
}

Mat3 skew(const Vec3& axis) {
  Mat3 k;
  k << 0, -axis[2], axis[1],
       axis[2], 0, -axis[0],
       -axis[1], axis[0], 0;
  return k;
}

Mat3 rodrigues(const Vec3& axis, double angle) {
  if (!axis.allFinite() || !std::isfinite(angle)) throw ArgumentError("rodrigues input must be finite");
  if (std::abs(axis.norm() - 1.0) > 1e-12) {
    throw ArgumentError("rodrigues axis must be a unit vector (normalize it first)");
  }
  const Mat3 k = skew(axis);
  return Mat3::Identity() + std::sin(angle) * k + (1.0 - std::cos(angle)) * (k * k);
}

Vec3 gii_to_f4_coordinates(double x, double y, double z) {
  if (z == 0.0) return {x, -y, 0.0};
  const double s = std::sin(0.5 * z);
  const double p = 2.0 * s * s / z;  // (1 - cos z) / z
  const double q = std::sin(z) / z;
  const double det = p * p + q * q;
  if (det < 1e-12) throw ArgumentError("coordinate map is singular at z = 2 pi k, k != 0");
  return {(p * y + q * x) / det, (p * x - q * y) / det, z};
}

Mat3 gii_layout(const Mat3& g) {
  Mat3 j = Mat3::Zero();
  j(0, 2) = j(1, 1) = j(2, 0) = 1.0;
  return j * g.transpose() * j;
}

ConsistencyReport fixture_exp_consistency(Example name, std::size_t samples, std::uint64_t seed) {
  if (name != Example::GII) {
    throw ArgumentError("exponential consistency is defined for GII only");
  }
  ConsistencyReport report;
  report.samples = samples;
  for (std::size_t n = 0; n < samples; ++n) {
    SampleRng rng(sample_seed(seed, 300, n));
    const double x = rng.uniform(-3.0, 3.0);
    const double y = rng.uniform(-3.0, 3.0);
    const double z = rng.uniform(-3.0, 3.0);
    const Vec3 abc = gii_to_f4_coordinates(x, y, z);
    const Mat3 a = table1_matrix(BasicClass::F4, 1.0, 0.0, abc[0], abc[1], abc[2]);
    const Mat3 closed = closed_form_exp(a, table1_coefficients(BasicClass::F4, a, CoefficientMode::corrected));
    const Mat3 target = gii_layout(example_group_element(Example::GII, x, y, z));
    report.max_error = std::max(report.max_error, relative_error(closed, target));
  }
  report.pass = report.max_error <= report.tolerance;
  return report;
}

RodriguesReport rodrigues_check(std::size_t samples, std::uint64_t seed) {
  RodriguesReport report;
  report.samples = samples;
  for (std::size_t n = 0; n < samples; ++n) {
    SampleRng rng(sample_seed(seed, 400, n));
    Vec3 axis;
    do {
      axis = Vec3(rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1));
    } while (axis.norm() < 0.1 || axis.norm() > 1.0);
    axis.normalize();
    const double angle = rng.uniform(-2.0 * std::numbers::pi, 2.0 * std::numbers::pi);
    const Mat3 r = rodrigues(axis, angle);
    report.max_reference_error =
        std::max(report.max_reference_error, relative_error(r, reference_expm(angle * skew(axis))));
    report.max_orthogonality_error =
        std::max(report.max_orthogonality_error, (r.transpose() * r - Mat3::Identity()).norm());
    report.max_determinant_error = std::max(report.max_determinant_error, std::abs(r.determinant() - 1.0));
    const Mat3 a = angle * skew(axis);
    const Mat3 literal = Mat3::Identity() + std::sin(angle) * a + (1.0 - std::cos(angle)) * (a * a);
    report.max_literal_display_error =
        std::max(report.max_literal_display_error, relative_error(literal, reference_expm(a)));
  }
  report.pass = report.max_reference_error <= report.tolerance &&
                report.max_orthogonality_error <= report.tolerance &&
                report.max_determinant_error <= report.tolerance;
  return report;
}

}  // namespace acbm
