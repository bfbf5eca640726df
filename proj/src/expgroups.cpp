#include "acbm/expgroups.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "acbm/error.hpp"

namespace acbm {

namespace {

using Complex = std::complex<double>;
using CMat3 = Eigen::Matrix3cd;

constexpr double kEps = std::numeric_limits<double>::epsilon();

// Spectral clustering and conditioning thresholds, relative to matrix_scale.
// A defective triple eigenvalue is only resolved to about eps^(1/3).
constexpr double kClusterRadius = 1e-4;
constexpr double kSeparation = 1e-2;
constexpr double kCayleyHamiltonTolerance = 1e-11;

ExpCoefficients make(double t, double u, Branch branch, CoefficientMode mode, double scalar) {
  return {t, u, branch, mode, scalar};
}

void check_family(BasicClass s, const Mat3& a) {
  const double scale = matrix_scale(a);
  const double param = family_parameter(s, a);
  const Mat3 a2 = a * a;
  double residual = 0.0;
  double bound = 0.0;
  if (family_of(s) == Family::quadratic) {
    residual = (a2 - param * a).norm();
    bound = kFamilyTolerance * scale * scale;
  } else {
    residual = (a2 * a - param * a).norm();
    bound = kFamilyTolerance * scale * scale * scale;
  }
  if (!(residual <= bound)) {
    std::ostringstream msg;
    msg << "matrix is not in the " << (family_of(s) == Family::quadratic ? "A^2 = tau A" : "A^3 = kappa A")
        << " family of class " << to_string(s) << ": residual " << residual << " > " << bound;
    throw FamilyViolation(msg.str());
  }
}

ExpCoefficients corrected_quadratic(double tau, double scalar, double scale) {
  constexpr auto mode = CoefficientMode::corrected;
  if (tau == 0.0) return make(1.0, 0.0, Branch::trace_zero, mode, scalar);
  if (std::abs(tau) < kSeriesThreshold * scale) {
    const double t = 1.0 + tau * (1.0 / 2 + tau * (1.0 / 6 + tau / 24));
    return make(t, 0.0, Branch::series_fallback, mode, scalar);
  }
  return make(std::expm1(tau) / tau, 0.0, Branch::trace_nonzero, mode, scalar);
}

ExpCoefficients corrected_cubic(double kappa, double scalar, double scale, bool square_vanishes) {
  constexpr auto mode = CoefficientMode::corrected;
  if (kappa == 0.0) return make(1.0, square_vanishes ? 0.0 : 0.5, Branch::trsq_zero, mode, scalar);
  if (std::abs(kappa) < kSeriesThreshold * scale * scale) {
    const double t = 1.0 + kappa * (1.0 / 6 + kappa * (1.0 / 120 + kappa / 5040));
    const double u = 0.5 + kappa * (1.0 / 24 + kappa * (1.0 / 720 + kappa / 40320));
    return make(t, u, Branch::series_fallback, mode, scalar);
  }
  if (kappa < 0.0) {
    const double w = std::sqrt(-kappa);
    const double half = std::sin(0.5 * w) / (0.5 * w);
    return make(std::sin(w) / w, 0.5 * half * half, Branch::trsq_negative, mode, scalar);
  }
  const double w = std::sqrt(kappa);
  const double half = std::sinh(0.5 * w) / (0.5 * w);
  return make(std::sinh(w) / w, 0.5 * half * half, Branch::trsq_positive, mode, scalar);
}

// The tabulated formulas, literally. Where a row is written in terms of the
// class parameters (alpha sqrt|Delta|, alpha c), those combinations are
// recovered from tr A^2 up to sign; every such entry is even in them.
ExpCoefficients printed(BasicClass s, double tr, double trsq) {
  constexpr auto mode = CoefficientMode::printed;
  auto trace_branch = [](double v) { return v != 0.0 ? Branch::trace_nonzero : Branch::trace_zero; };
  auto trsq_branch = [](double v) {
    return v < 0.0 ? Branch::trsq_negative : (v > 0.0 ? Branch::trsq_positive : Branch::trsq_zero);
  };
  switch (s) {
    case BasicClass::F1:
      if (tr != 0.0) return make((std::exp(tr) - 1.0) / tr, 0.0, trace_branch(tr), mode, tr);
      return make(1.0, 0.0, Branch::trace_zero, mode, tr);
    case BasicClass::F5:
      if (tr != 0.0) {
        const double h = 0.5 * tr;
        return make((std::exp(h) - 1.0) / h, 0.0, trace_branch(tr), mode, tr);
      }
      return make(1.0, 0.0, Branch::trace_zero, mode, tr);
    case BasicClass::F11:
      if (tr != 0.0) return make((std::exp(-tr) - 1.0) / tr, 0.0, trace_branch(tr), mode, tr);
      return make(1.0, 0.0, Branch::trace_zero, mode, tr);
    case BasicClass::F4:
      if (trsq != 0.0) {
        const double x = -0.5 * trsq;
        const double r = std::sqrt(x);
        return make(std::sin(r) / r, (1.0 - std::cos(r)) / x, trsq_branch(trsq), mode, trsq);
      }
      return make(1.0, 0.0, Branch::trsq_zero, mode, trsq);
    case BasicClass::F8: {
      // tr A^2 = 2 alpha^2 Delta
      const double alpha2_delta = 0.5 * trsq;
      if (trsq < 0.0) {
        const double w = std::sqrt(-alpha2_delta);
        return make(-std::sin(w) / w, (std::cos(w) - 1.0) / alpha2_delta, Branch::trsq_negative, mode, trsq);
      }
      if (trsq > 0.0) {
        const double w = std::sqrt(alpha2_delta);
        return make(std::sinh(w) / w, (std::cosh(w) - 1.0) / alpha2_delta, Branch::trsq_positive, mode, trsq);
      }
      return make(1.0, 0.5, Branch::trsq_zero, mode, trsq);
    }
    case BasicClass::F9:
      if (trsq != 0.0) {
        const double h = 0.5 * trsq;
        const double r = std::sqrt(h);
        return make(std::sinh(r) / r, (std::cosh(h) - 1.0) / h, trsq_branch(trsq), mode, trsq);
      }
      return make(1.0, 0.0, Branch::trsq_zero, mode, trsq);
    case BasicClass::F10:
      if (trsq != 0.0) {
        // tr A^2 = 2 alpha^2 c^2
        const double w = std::sqrt(0.5 * trsq);
        return make(std::sinh(w) / w, std::cosh(w) / (w * w), trsq_branch(trsq), mode, trsq);
      }
      return make(1.0, 0.0, Branch::trsq_zero, mode, trsq);
  }
  throw ArgumentError("unknown basic class");
}

Complex divided(Complex x, Complex y) {
  if (x == y) return std::exp(x);
  return (std::exp(y) - std::exp(x)) / (y - x);
}

}  // namespace

std::string_view to_string(CoefficientMode m) { return m == CoefficientMode::printed ? "printed" : "corrected"; }

std::string_view to_string(Branch b) {
  switch (b) {
    case Branch::trace_zero: return "trace-zero";
    case Branch::trace_nonzero: return "trace-nonzero";
    case Branch::trsq_negative: return "trsq-negative";
    case Branch::trsq_zero: return "trsq-zero";
    case Branch::trsq_positive: return "trsq-positive";
    case Branch::series_fallback: return "series-fallback";
  }
  return "unknown";
}

CoefficientMode parse_mode(std::string_view name) {
  if (name == "printed") return CoefficientMode::printed;
  if (name == "corrected") return CoefficientMode::corrected;
  throw ArgumentError("unknown coefficient mode '" + std::string(name) + "' (expected printed or corrected)");
}

std::string_view to_string(SpectralPath p) {
  switch (p) {
    case SpectralPath::distinct: return "distinct";
    case SpectralPath::confluent: return "confluent";
    case SpectralPath::fallback: return "fallback";
  }
  return "unknown";
}

Family family_of(BasicClass s) {
  switch (s) {
    case BasicClass::F1:
    case BasicClass::F5:
    case BasicClass::F11:
      return Family::quadratic;
    default:
      return Family::cubic;
  }
}

double family_parameter(BasicClass s, const Mat3& a) {
  if (family_of(s) == Family::cubic) return 0.5 * (a * a).trace();
  // F5 has the nonzero eigenvalue twice.
  return s == BasicClass::F5 ? 0.5 * a.trace() : a.trace();
}

double matrix_scale(const Mat3& a) { return std::max(1.0, a.norm()); }

BasisMatrices basis_matrices(const StructureConstants& c) {
  BasisMatrices m;
  Mat3* out[3] = {&m.m0, &m.m1, &m.m2};
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k) (*out[i])(j, k) = -c(i, j, k);
  }
  return m;
}

Mat3 algebra_element(const StructureConstants& c, double a, double b, double cc) {
  const BasisMatrices m = basis_matrices(c);
  return cc * m.m0 + a * m.m1 + b * m.m2;
}

Mat3 table1_matrix(BasicClass s, double al, double be, double a, double b, double c) {
  Mat3 m;
  switch (s) {
    case BasicClass::F1:
      m << 0, 0, 0,
           0, al * b, be * b,
           0, -al * a, -be * a;
      break;
    case BasicClass::F4:
      m << 0, -al * b, al * a,
           0, 0, -al * c,
           0, al * c, 0;
      break;
    case BasicClass::F5:
      m << 0, al * a, al * b,
           0, -al * c, 0,
           0, 0, -al * c;
      break;
    case BasicClass::F8:
      m << 0, al * b, al * a,
           -2 * al * b, 0, -al * c,
           2 * al * a, -al * c, 0;
      break;
    case BasicClass::F9:
      m << 0, al * a, -al * b,
           0, -al * c, 0,
           0, 0, al * c;
      break;
    case BasicClass::F10:
      m << 0, al * b, al * a,
           0, 0, -al * c,
           0, -al * c, 0;
      break;
    case BasicClass::F11:
      m << al * a + be * b, 0, 0,
           -al * c, 0, 0,
           -be * c, 0, 0;
      break;
  }
  return m;
}

ExpCoefficients table1_coefficients(BasicClass s, const Mat3& a, CoefficientMode mode) {
  if (!a.allFinite()) throw ValidationError("matrix contains a non-finite entry");
  check_family(s, a);
  const double tr = a.trace();
  const Mat3 a2 = a * a;
  const double trsq = a2.trace();
  if (mode == CoefficientMode::printed) return printed(s, tr, trsq);

  const double scale = matrix_scale(a);
  if (family_of(s) == Family::quadratic) return corrected_quadratic(family_parameter(s, a), tr, scale);
  const bool square_vanishes = a2.cwiseAbs().maxCoeff() == 0.0;
  return corrected_cubic(0.5 * trsq, trsq, scale, square_vanishes);
}

Mat3 closed_form_exp(const Mat3& a, const ExpCoefficients& coeffs) {
  return Mat3::Identity() + coeffs.t * a + coeffs.u * (a * a);
}

// The series and the squarings run in long double: in double the squarings
// alone lose ~1e-12 relative at |A|_F ~ 50, two orders past the arbiter budget.
// Where long double is plain double the result degrades to that level.
Mat3 reference_expm(const Mat3& a) {
  using MatL = Eigen::Matrix<long double, 3, 3>;
  if (!a.allFinite()) throw ValidationError("matrix contains a non-finite entry");
  const double norm = a.norm();
  int squarings = 0;
  if (norm > 0x1.0p-5) squarings = static_cast<int>(std::ceil(std::log2(norm / 0x1.0p-5)));
  const MatL scaled = std::ldexp(1.0L, -squarings) * a.cast<long double>();

  constexpr long double eps = std::numeric_limits<long double>::epsilon();
  MatL sum = MatL::Identity();
  MatL term = MatL::Identity();
  for (int k = 1; k <= 30; ++k) {
    term = term * scaled / static_cast<long double>(k);
    sum += term;
    if (term.norm() <= 0.25L * eps * sum.norm()) break;
  }
  for (int n = 0; n < squarings; ++n) sum = sum * sum;
  return sum.cast<double>();
}

SpectralExp spectral_exp(const Mat3& a) {
  if (!a.allFinite()) throw ValidationError("matrix contains a non-finite entry");
  const double scale = matrix_scale(a);
  Eigen::EigenSolver<Mat3> solver(a, false);
  if (solver.info() != Eigen::Success) return {reference_expm(a), SpectralPath::fallback};
  const Eigen::Vector3cd ev = solver.eigenvalues();

  // Single-linkage clusters, each replaced by its mean.
  std::array<int, 3> cluster = {0, 1, 2};
  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j)
      if (std::abs(ev[i] - ev[j]) <= kClusterRadius * scale) {
        const int from = cluster[j];
        const int to = cluster[i];
        for (auto& c : cluster)
          if (c == from) c = to;
      }
  std::vector<std::pair<Complex, int>> groups;  // (mean, multiplicity)
  for (int id = 0; id < 3; ++id) {
    Complex sum = 0.0;
    int count = 0;
    for (int i = 0; i < 3; ++i)
      if (cluster[i] == id) {
        sum += ev[i];
        ++count;
      }
    if (count > 0) groups.emplace_back(sum / static_cast<double>(count), count);
  }

  for (std::size_t i = 0; i < groups.size(); ++i)
    for (std::size_t j = i + 1; j < groups.size(); ++j)
      if (std::abs(groups[i].first - groups[j].first) < kSeparation * scale) {
        return {reference_expm(a), SpectralPath::fallback};
      }

  std::vector<Complex> nodes;
  for (const auto& [value, count] : groups)
    for (int n = 0; n < count; ++n) nodes.push_back(value);

  const CMat3 ac = a.cast<Complex>();
  const CMat3 id = CMat3::Identity();
  const CMat3 p0 = ac - nodes[0] * id;
  const CMat3 p1 = ac - nodes[1] * id;
  const CMat3 p2 = ac - nodes[2] * id;

  // Merging is only valid when the merged characteristic polynomial still annihilates A.
  if ((p0 * p1 * p2).norm() > kCayleyHamiltonTolerance * scale * scale * scale) {
    return {reference_expm(a), SpectralPath::fallback};
  }

  const Complex f0 = std::exp(nodes[0]);
  const Complex f01 = divided(nodes[0], nodes[1]);
  const Complex f12 = divided(nodes[1], nodes[2]);
  Complex f012;
  if (nodes[0] == nodes[2]) {
    f012 = 0.5 * std::exp(nodes[0]);
  } else {
    f012 = (f12 - f01) / (nodes[2] - nodes[0]);
  }
  const CMat3 result = f0 * id + f01 * p0 + f012 * (p0 * p1);
  return {result.real(), groups.size() == 3 ? SpectralPath::distinct : SpectralPath::confluent};
}

double relative_error(const Mat3& x, const Mat3& ref) { return (x - ref).norm() / std::max(1.0, ref.norm()); }

GroupSample verify_sample(BasicClass s, double alpha, double beta, double a, double b, double c,
                          CoefficientMode mode) {
  GroupSample sample;
  sample.cls = s;
  sample.params = {alpha, beta};
  sample.coords = Vec3(a, b, c);
  sample.a = table1_matrix(s, alpha, beta, a, b, c);
  sample.coeffs = table1_coefficients(s, sample.a, mode);
  sample.closed = closed_form_exp(sample.a, sample.coeffs);
  sample.reference = reference_expm(sample.a);
  sample.error = relative_error(sample.closed, sample.reference);
  return sample;
}

}  // namespace acbm
