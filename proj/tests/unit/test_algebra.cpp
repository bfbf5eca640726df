#include <cmath>
#include <limits>

#include "acbm/algebra.hpp"
#include "acbm/classification.hpp"
#include "acbm/error.hpp"
#include "acbm/sampling.hpp"
#include "doctest.h"
#include "helpers.hpp"

using namespace acbm;
using acbm::test::eval_f;

TEST_SUITE("algebra") {

TEST_CASE("jacobi: F8 canonical algebra is a Lie algebra") {
  const StructureConstants c{Vec3(0, 0, 1), Vec3(0, 1, 0), Vec3(-2, 0, 0)};
  const JacobiReport r = validate_jacobi(c);
  CHECK(r.satisfied);
  CHECK(r.max_residual == 0.0);
}

TEST_CASE("jacobi: residual is reported per triple") {
  // [E0,E1] = E0, [E1,E2] = E1: the cyclic sum on (0,1,2) is -E0
  const StructureConstants c{Vec3(1, 0, 0), Vec3(0, 0, 0), Vec3(0, 1, 0)};
  const JacobiReport r = validate_jacobi(c);
  CHECK_FALSE(r.satisfied);
  CHECK(r.max_residual == doctest::Approx(1.0).epsilon(1e-15));
  bool found = false;
  for (const auto& t : r.residuals) {
    if (t.triple == std::array<int, 3>{0, 1, 2}) {
      found = true;
      CHECK(t.residual == doctest::Approx(1.0));
    }
  }
  CHECK(found);
  CHECK_THROWS_AS(require_jacobi(c), ValidationError);
  try {
    require_jacobi(c);
  } catch (const ValidationError& e) {
    CHECK(std::string(e.what()).find("(0,1,2)") != std::string::npos);
  }
}

TEST_CASE("jacobi: zero algebra and bad input") {
  CHECK(validate_jacobi(StructureConstants{}).satisfied);
  StructureConstants nan;
  nan.c01[1] = std::numeric_limits<double>::quiet_NaN();
  CHECK_THROWS_AS(validate_jacobi(nan), ValidationError);
  CHECK_THROWS_AS(validate_jacobi(StructureConstants{}, -1.0), ArgumentError);
}

TEST_CASE("jacobi: random Bianchi-form algebras pass, generic constants mostly fail") {
  int generic_failures = 0;
  for (std::uint64_t n = 0; n < 500; ++n) {
    SampleRng rng(sample_seed(5, 1, n));
    CHECK(validate_jacobi(random_lie_algebra(rng)).satisfied);
    generic_failures += !validate_jacobi(random_constants(rng)).satisfied;
  }
  CHECK(generic_failures > 450);
}

TEST_CASE("structure constants: flat round trip and antisymmetry") {
  SampleRng rng(3);
  const StructureConstants c = random_constants(rng);
  CHECK(StructureConstants::from_flat(c.flat()) == c);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k) CHECK(c(i, j, k) == -c(j, i, k));
  CHECK(c.bracket(0, 0).isZero());
  // bracket of arbitrary elements is bilinear in the frame brackets
  const Vec3 x(1, 2, -1), y(0.5, -3, 2);
  Vec3 expected = Vec3::Zero();
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) expected += x[i] * y[j] * c.bracket(i, j);
  CHECK((c.bracket(x, y) - expected).norm() < 1e-12);
}

TEST_CASE("levi-civita: F9 canonical algebra, alpha = 1") {
  // Nonzero coefficients from an independent Koszul evaluation.
  const ConnectionCoefficients g = levi_civita(canonical_algebra(BasicClass::F9, 1.0));
  ConnectionCoefficients expected;
  expected(1, 0, 1) = -1;
  expected(1, 1, 0) = 1;
  expected(2, 0, 2) = 1;
  expected(2, 2, 0) = 1;
  for (std::size_t n = 0; n < 27; ++n) CHECK(g.data[n] == doctest::Approx(expected.data[n]).epsilon(1e-15));
}

TEST_CASE("levi-civita: F4 canonical algebra, alpha = 1") {
  const StructureConstants c = canonical_algebra(BasicClass::F4, 1.0);
  const ConnectionCoefficients g = levi_civita(c);
  ConnectionCoefficients expected;
  expected(1, 0, 2) = -1;
  expected(1, 2, 0) = -1;
  expected(2, 0, 1) = 1;
  expected(2, 1, 0) = -1;
  for (std::size_t n = 0; n < 27; ++n) CHECK(g.data[n] == doctest::Approx(expected.data[n]).epsilon(1e-15));
  CHECK((g.covariant(0, 1) - g.covariant(1, 0) - Vec3(0, 0, 1)).norm() < 1e-15);
}

TEST_CASE("levi-civita: torsion-free and metric on random algebras") {
  const BasisFrame& frame = BasisFrame::standard();
  for (std::uint64_t n = 0; n < 300; ++n) {
    SampleRng rng(sample_seed(8, 2, n));
    const StructureConstants c = random_lie_algebra(rng);
    const ConnectionCoefficients g = levi_civita(c);
    const double tol = 1e-13 * c.scale();
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) {
        CHECK((g.covariant(i, j) - g.covariant(j, i) - c.bracket(i, j)).norm() <= tol);
        for (int k = 0; k < 3; ++k) {
          const double d = frame.g(g.covariant(i, j), Vec3::Unit(k)) + frame.g(Vec3::Unit(j), g.covariant(i, k));
          CHECK(std::abs(d) <= tol);
        }
      }
    }
  }
  CHECK_THROWS_AS(levi_civita(StructureConstants{Vec3(1, 0, 0), Vec3(0, 0, 0), Vec3(0, 1, 0)}), ValidationError);
}

TEST_CASE("F oracle: B-metric identities of the fundamental tensor") {
  // F(x,y,z) = F(x,z,y) = F(x,phi y,phi z) + eta(y) F(x,xi,z) + eta(z) F(x,y,xi)
  const BasisFrame& frame = BasisFrame::standard();
  const Vec3 xi = Vec3::Unit(0);
  for (std::uint64_t n = 0; n < 200; ++n) {
    SampleRng rng(sample_seed(9, 3, n));
    const StructureConstants c = random_lie_algebra(rng);
    const FTensor f = f_from_connection(c);
    const double tol = 1e-12 * c.scale();
    const Vec3 x(rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1));
    const Vec3 y(rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1));
    const Vec3 z(rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1));
    const double fxyz = eval_f(f, x, y, z);
    CHECK(std::abs(fxyz - eval_f(f, x, z, y)) <= tol);
    const double rhs = eval_f(f, x, frame.apply_phi(y), frame.apply_phi(z)) + frame.eta.dot(y) * eval_f(f, x, xi, z) +
                       frame.eta.dot(z) * eval_f(f, x, y, xi);
    CHECK(std::abs(fxyz - rhs) <= tol);
  }
}

TEST_CASE("F table: linear in the structure constants and symmetric") {
  for (std::uint64_t n = 0; n < 200; ++n) {
    SampleRng rng(sample_seed(10, 4, n));
    const StructureConstants a = random_constants(rng);
    const StructureConstants b = random_constants(rng);
    const double s = rng.uniform(-2, 2), t = rng.uniform(-2, 2);
    const FTensor lhs = f_from_structure(s * a + t * b);
    const FTensor rhs = s * f_from_structure(a) + t * f_from_structure(b);
    CHECK(acbm::test::max_diff(lhs, rhs) <= 1e-12 * std::max(a.scale(), b.scale()));
    CHECK(f_from_structure(a).symmetry_defect() == 0.0);
  }
}

TEST_CASE("F table: reconciled transcription matches the Koszul oracle") {
  double worst = 0;
  for (std::uint64_t n = 0; n < 1000; ++n) {
    SampleRng rng(sample_seed(11, 5, n));
    const StructureConstants c = random_lie_algebra(rng);
    worst = std::max(worst, acbm::test::max_diff(f_from_structure(c), f_from_connection(c)) / c.scale());
  }
  CHECK(worst <= 1e-12);
}

TEST_CASE("F table: the printed transcription differs only through C12^2") {
  // C12^2 feeds only the corrected row; with it zero both tables agree.
  StructureConstants c = canonical_algebra(BasicClass::F5, 0.7);
  CHECK(acbm::test::max_diff(f_from_structure(c, Transcription::printed), f_from_connection(c)) <= 1e-15);
  c = StructureConstants{Vec3(0, 0, 0), Vec3(0, 0, 0), Vec3(0, 0, 1)};  // [E1,E2] = E2
  REQUIRE(validate_jacobi(c).satisfied);
  const FTensor oracle = f_from_connection(c);
  const FTensor printed = f_from_structure(c, Transcription::printed);
  CHECK(oracle(2, 1, 1) == doctest::Approx(-2.0));
  CHECK(oracle(2, 2, 2) == doctest::Approx(-2.0));
  CHECK(printed(2, 1, 1) == doctest::Approx(2.0));
  CHECK(acbm::test::max_diff(f_from_structure(c), oracle) <= 1e-15);
}

TEST_CASE("Lee forms: tabulated formulas equal the contractions") {
  for (std::uint64_t n = 0; n < 10000; ++n) {
    SampleRng rng(sample_seed(12, 6, n));
    const StructureConstants c = random_constants(rng);
    const LeeForms table = lee_forms(c);
    const LeeForms contracted = contract_lee_forms(f_from_structure(c));
    const double tol = 1e-13 * c.scale();
    CHECK((table.theta - contracted.theta).lpNorm<Eigen::Infinity>() <= tol);
    CHECK((table.theta_star - contracted.theta_star).lpNorm<Eigen::Infinity>() <= tol);
    CHECK((table.omega - contracted.omega).lpNorm<Eigen::Infinity>() <= tol);
    CHECK(table.omega[0] == 0.0);
  }
}

TEST_CASE("derived and lower central series") {
  CHECK(derived_series_dimensions(canonical_algebra(BasicClass::F8, 1.0))[1] == 3);
  for (auto s : kBasicClasses) {
    if (s == BasicClass::F8) continue;
    CHECK(derived_series_dimensions(canonical_algebra(s, 1.3, 0.4))[1] <= 2);
  }
  // Heisenberg algebra [E1,E2] = E0: nilpotent of step 2
  const StructureConstants h{Vec3(0, 0, 0), Vec3(0, 0, 0), Vec3(1, 0, 0)};
  CHECK(lower_central_series_dimensions(h) == std::array<int, 4>{3, 1, 0, 0});
  CHECK(derived_series_dimensions(StructureConstants{}) == std::array<int, 4>{3, 0, 0, 0});
  CHECK(derived_algebra(h).size() == 1);
}

}  // TEST_SUITE
