#include "acbm/algebra.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "acbm/error.hpp"

namespace acbm {

namespace {

// Ordered pair (i, j), i < j, to storage slot: (0,1) -> 0, (0,2) -> 1, (1,2) -> 2.
int pair_slot(int i, int j) { return i + j - 1; }

const Vec3& stored(const StructureConstants& c, int slot) {
  switch (slot) {
    case 0: return c.c01;
    case 1: return c.c02;
    default: return c.c12;
  }
}

// Flat index of C_ij^k, i < j.
constexpr int flat_index(int i, int j, int k) { return 3 * (i + j - 1) + k; }

constexpr std::array<double, 9> linear(std::initializer_list<std::pair<int, double>> terms) {
  std::array<double, 9> out{};
  for (const auto& [index, value] : terms) out[index] = value;
  return out;
}

using Slots = std::array<std::array<int, 3>, 2>;

constexpr int k01(int k) { return flat_index(0, 1, k); }
constexpr int k02(int k) { return flat_index(0, 2, k); }
constexpr int k12(int k) { return flat_index(1, 2, k); }

// The published component table, row for row.
const std::array<ComponentRule, 9> kPrintedComponents = {{
    {Slots{{{1, 1, 1}, {1, 2, 2}}}, linear({{k12(1), 2.0}}), "F111 = F122 = 2 C12^1"},
    {Slots{{{2, 1, 1}, {2, 2, 2}}}, linear({{k12(2), 2.0}}), "F211 = F222 = 2 C12^2"},
    {Slots{{{1, 2, 0}, {1, 0, 2}}}, linear({{k01(1), -1.0}}), "F120 = F102 = -C01^1"},
    {Slots{{{0, 2, 0}, {0, 0, 2}}}, linear({{k01(0), -1.0}}), "F020 = F002 = -C01^0"},
    {Slots{{{2, 1, 0}, {2, 0, 1}}}, linear({{k02(2), -1.0}}), "F210 = F201 = -C02^2"},
    {Slots{{{0, 1, 0}, {0, 0, 1}}}, linear({{k02(0), 1.0}}), "F010 = F001 = C02^0"},
    {Slots{{{1, 1, 0}, {1, 0, 1}}}, linear({{k12(0), 0.5}, {k01(2), -0.5}, {k02(1), 0.5}}),
     "F110 = F101 = (C12^0 - C01^2 + C02^1) / 2"},
    {Slots{{{2, 2, 0}, {2, 0, 2}}}, linear({{k12(0), 0.5}, {k01(2), 0.5}, {k02(1), -0.5}}),
     "F220 = F202 = (C12^0 + C01^2 - C02^1) / 2"},
    {Slots{{{0, 1, 1}, {0, 2, 2}}}, linear({{k12(0), 1.0}, {k01(2), 1.0}, {k02(1), 1.0}}),
     "F011 = F022 = C12^0 + C01^2 + C02^1"},
}};

// Same table with the row the connection oracle rejects replaced.
const std::array<ComponentRule, 9> kReconciledComponents = [] {
  auto rules = kPrintedComponents;
  rules[1] = {Slots{{{2, 1, 1}, {2, 2, 2}}}, linear({{k12(2), -2.0}}), "F211 = F222 = -2 C12^2"};
  return rules;
}();

const std::array<LeeRule, 9> kPrintedLee = {{
    {0, 0, linear({{k01(2), -1.0}, {k02(1), 1.0}}), "theta_0 = -C01^2 + C02^1"},
    {0, 1, linear({{k12(1), 2.0}}), "theta_1 = 2 C12^1"},
    {0, 2, linear({{k12(2), -2.0}}), "theta_2 = -2 C12^2"},
    {1, 0, linear({{k01(1), -1.0}, {k02(2), -1.0}}), "theta*_0 = -C01^1 - C02^2"},
    {1, 1, linear({{k12(2), 2.0}}), "theta*_1 = 2 C12^2"},
    {1, 2, linear({{k12(1), 2.0}}), "theta*_2 = 2 C12^1"},
    {2, 0, linear({}), "omega_0 = 0"},
    {2, 1, linear({{k02(0), 1.0}}), "omega_1 = C02^0"},
    {2, 2, linear({{k01(0), -1.0}}), "omega_2 = -C01^0"},
}};

const std::array<LeeRule, 9> kReconciledLee = [] {
  auto rules = kPrintedLee;
  rules[2] = {0, 2, linear({{k12(2), 2.0}}), "theta_2 = 2 C12^2"};
  rules[4] = {1, 1, linear({{k12(2), -2.0}}), "theta*_1 = -2 C12^2"};
  return rules;
}();

double apply(const std::array<double, 9>& coefficients, const std::array<double, 9>& flat) {
  double sum = 0.0;
  for (std::size_t n = 0; n < 9; ++n) {
    if (coefficients[n] != 0.0) sum += coefficients[n] * flat[n];
  }
  return sum;
}

void require_finite(const StructureConstants& c) {
  if (!c.is_finite()) throw ValidationError("structure constants contain a non-finite entry");
}

// Rank of a set of vectors, relative threshold on the largest pivot.
std::vector<Vec3> span_basis(const std::vector<Vec3>& vectors, double scale) {
  if (vectors.empty()) return {};
  Eigen::Matrix<double, 3, Eigen::Dynamic> m(3, static_cast<Eigen::Index>(vectors.size()));
  for (std::size_t n = 0; n < vectors.size(); ++n) m.col(static_cast<Eigen::Index>(n)) = vectors[n];
  Eigen::FullPivLU<Eigen::MatrixXd> lu(m);
  lu.setThreshold(1e-12 * std::max(1.0, scale));
  if (m.cwiseAbs().maxCoeff() <= 1e-12 * std::max(1.0, scale)) return {};
  const Eigen::MatrixXd image = lu.image(m);
  std::vector<Vec3> basis;
  for (Eigen::Index n = 0; n < image.cols(); ++n) basis.emplace_back(image.col(n));
  return basis;
}

std::vector<Vec3> brackets_of(const StructureConstants& c, const std::vector<Vec3>& lhs,
                              const std::vector<Vec3>& rhs) {
  std::vector<Vec3> out;
  for (const auto& x : lhs)
    for (const auto& y : rhs) out.push_back(c.bracket(x, y));
  return span_basis(out, c.scale());
}

std::vector<Vec3> frame() { return {Vec3::UnitX(), Vec3::UnitY(), Vec3::UnitZ()}; }

}  // namespace

const BasisFrame& BasisFrame::standard() {
  static const BasisFrame frame = [] {
    BasisFrame f;
    f.phi = Mat3::Zero();
    f.phi(2, 1) = 1.0;   // phi E1 = E2
    f.phi(1, 2) = -1.0;  // phi E2 = -E1
    f.eta = Vec3(1.0, 0.0, 0.0);
    f.metric = Vec3(1.0, 1.0, -1.0).asDiagonal();
    f.xi = 0;
    return f;
  }();
  return frame;
}

StructureConstants StructureConstants::from_flat(std::span<const double, 9> v) {
  return {Vec3(v[0], v[1], v[2]), Vec3(v[3], v[4], v[5]), Vec3(v[6], v[7], v[8])};
}

std::array<double, 9> StructureConstants::flat() const {
  return {c01[0], c01[1], c01[2], c02[0], c02[1], c02[2], c12[0], c12[1], c12[2]};
}

double StructureConstants::operator()(int i, int j, int k) const {
  if (i == j) return 0.0;
  if (i < j) return stored(*this, pair_slot(i, j))[k];
  return -stored(*this, pair_slot(j, i))[k];
}

Vec3 StructureConstants::bracket(int i, int j) const {
  if (i == j) return Vec3::Zero();
  if (i < j) return stored(*this, pair_slot(i, j));
  return -stored(*this, pair_slot(j, i));
}

Vec3 StructureConstants::bracket(const Vec3& x, const Vec3& y) const {
  // [x, y] = sum over i<j of (x_i y_j - x_j y_i) [E_i, E_j]
  return (x[0] * y[1] - x[1] * y[0]) * c01 + (x[0] * y[2] - x[2] * y[0]) * c02 +
         (x[1] * y[2] - x[2] * y[1]) * c12;
}

double StructureConstants::norm_inf() const {
  return std::max({c01.cwiseAbs().maxCoeff(), c02.cwiseAbs().maxCoeff(), c12.cwiseAbs().maxCoeff()});
}

double StructureConstants::scale() const { return std::max(1.0, norm_inf()); }

bool StructureConstants::is_finite() const {
  return c01.allFinite() && c02.allFinite() && c12.allFinite();
}

StructureConstants operator+(const StructureConstants& a, const StructureConstants& b) {
  return {a.c01 + b.c01, a.c02 + b.c02, a.c12 + b.c12};
}

StructureConstants operator-(const StructureConstants& a, const StructureConstants& b) {
  return {a.c01 - b.c01, a.c02 - b.c02, a.c12 - b.c12};
}

StructureConstants operator*(double s, const StructureConstants& a) {
  return {s * a.c01, s * a.c02, s * a.c12};
}

bool operator==(const StructureConstants& a, const StructureConstants& b) {
  return a.c01 == b.c01 && a.c02 == b.c02 && a.c12 == b.c12;
}

double FTensor::max_abs() const {
  double m = 0.0;
  for (double v : data) m = std::max(m, std::abs(v));
  return m;
}

double FTensor::symmetry_defect() const {
  double m = 0.0;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k) m = std::max(m, std::abs((*this)(i, j, k) - (*this)(i, k, j)));
  return m;
}

FTensor operator+(const FTensor& a, const FTensor& b) {
  FTensor out;
  for (std::size_t n = 0; n < 27; ++n) out.data[n] = a.data[n] + b.data[n];
  return out;
}

FTensor operator-(const FTensor& a, const FTensor& b) {
  FTensor out;
  for (std::size_t n = 0; n < 27; ++n) out.data[n] = a.data[n] - b.data[n];
  return out;
}

FTensor operator*(double s, const FTensor& a) {
  FTensor out;
  for (std::size_t n = 0; n < 27; ++n) out.data[n] = s * a.data[n];
  return out;
}

JacobiReport validate_jacobi(const StructureConstants& c, double tol) {
  if (!(tol >= 0.0)) throw ArgumentError("Jacobi tolerance must be nonnegative");
  require_finite(c);

  JacobiReport report;
  report.threshold = tol * c.scale();
  const auto basis = frame();
  for (int i = 0; i < 3; ++i) {
    for (int j = i; j < 3; ++j) {
      for (int k = j; k < 3; ++k) {
        const Vec3 cyclic = c.bracket(c.bracket(basis[i], basis[j]), basis[k]) +
                            c.bracket(c.bracket(basis[j], basis[k]), basis[i]) +
                            c.bracket(c.bracket(basis[k], basis[i]), basis[j]);
        const double r = cyclic.cwiseAbs().maxCoeff();
        report.residuals.push_back({{i, j, k}, r});
        report.max_residual = std::max(report.max_residual, r);
      }
    }
  }
  report.satisfied = report.max_residual <= report.threshold;
  return report;
}

void require_jacobi(const StructureConstants& c, double tol) {
  const JacobiReport report = validate_jacobi(c, tol);
  if (report.satisfied) return;
  const auto worst = std::max_element(
      report.residuals.begin(), report.residuals.end(),
      [](const TripleResidual& a, const TripleResidual& b) { return a.residual < b.residual; });
  std::ostringstream msg;
  msg << "Jacobi identity fails on triple (" << worst->triple[0] << "," << worst->triple[1] << ","
      << worst->triple[2] << "): residual " << worst->residual << " > " << report.threshold;
  throw ValidationError(msg.str());
}

std::string_view to_string(Transcription t) {
  return t == Transcription::printed ? "printed" : "reconciled";
}

std::span<const ComponentRule> component_rules(Transcription t) {
  return t == Transcription::printed ? std::span<const ComponentRule>(kPrintedComponents)
                                     : std::span<const ComponentRule>(kReconciledComponents);
}

std::span<const LeeRule> lee_rules(Transcription t) {
  return t == Transcription::printed ? std::span<const LeeRule>(kPrintedLee)
                                     : std::span<const LeeRule>(kReconciledLee);
}

FTensor f_from_structure(const StructureConstants& c, Transcription t) {
  require_finite(c);
  const auto flat = c.flat();
  FTensor f;
  for (const auto& rule : component_rules(t)) {
    const double value = apply(rule.coefficients, flat);
    for (const auto& s : rule.slots) f(s[0], s[1], s[2]) = value;
  }
  return f;
}

LeeForms lee_forms(const StructureConstants& c, Transcription t) {
  require_finite(c);
  const auto flat = c.flat();
  LeeForms out;
  for (const auto& rule : lee_rules(t)) {
    const double value = apply(rule.coefficients, flat);
    switch (rule.form) {
      case 0: out.theta[rule.component] = value; break;
      case 1: out.theta_star[rule.component] = value; break;
      default: out.omega[rule.component] = value; break;
    }
  }
  return out;
}

LeeForms contract_lee_forms(const FTensor& f) {
  const BasisFrame& frame = BasisFrame::standard();
  const Mat3 ginv = frame.metric.inverse();
  LeeForms out;
  // The sums run over the frame of Ker(eta): every index except xi.
  for (int z = 0; z < 3; ++z) {
    double theta = 0.0;
    double theta_star = 0.0;
    for (int i = 0; i < 3; ++i) {
      if (i == frame.xi) continue;
      for (int j = 0; j < 3; ++j) {
        if (j == frame.xi || ginv(i, j) == 0.0) continue;
        theta += ginv(i, j) * f(i, j, z);
        const Vec3 phi_ej = frame.phi.col(j);
        for (int m = 0; m < 3; ++m) theta_star += ginv(i, j) * phi_ej[m] * f(i, m, z);
      }
    }
    out.theta[z] = theta;
    out.theta_star[z] = theta_star;
    out.omega[z] = f(frame.xi, frame.xi, z);
  }
  return out;
}

ConnectionCoefficients levi_civita(const StructureConstants& c) {
  require_jacobi(c);
  const BasisFrame& frame = BasisFrame::standard();
  const Mat3 ginv = frame.metric.inverse();
  const auto basis = acbm::frame();
  // g([E_a, E_b], E_d)
  auto gb = [&](int a, int b, int d) { return frame.g(c.bracket(a, b), basis[d]); };

  ConnectionCoefficients gamma;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      Vec3 lowered;
      for (int k = 0; k < 3; ++k) lowered[k] = 0.5 * (gb(i, j, k) - gb(j, k, i) + gb(k, i, j));
      const Vec3 raised = ginv * lowered;
      for (int k = 0; k < 3; ++k) gamma(i, j, k) = raised[k];
    }
  }
  return gamma;
}

FTensor f_from_connection(const StructureConstants& c) {
  const ConnectionCoefficients gamma = levi_civita(c);
  const BasisFrame& frame = BasisFrame::standard();
  const auto basis = acbm::frame();

  FTensor f;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      // nabla_i (phi E_j) = sum_m phi(m, j) nabla_i E_m, as phi has constant entries on the frame.
      Vec3 nabla_phi_ej = Vec3::Zero();
      for (int m = 0; m < 3; ++m) nabla_phi_ej += frame.phi(m, j) * gamma.covariant(i, m);
      const Vec3 derivative = nabla_phi_ej - frame.apply_phi(gamma.covariant(i, j));
      for (int k = 0; k < 3; ++k) f(i, j, k) = frame.g(derivative, basis[k]);
    }
  }
  if (f.symmetry_defect() > 1e-12 * c.scale()) {
    throw Error("connection oracle produced a tensor that is not symmetric in its last two slots");
  }
  return f;
}

std::vector<Vec3> derived_algebra(const StructureConstants& c) {
  return span_basis({c.c01, c.c02, c.c12}, c.scale());
}

std::array<int, 4> derived_series_dimensions(const StructureConstants& c) {
  std::array<int, 4> dims{3, 0, 0, 0};
  std::vector<Vec3> current = frame();
  for (std::size_t n = 1; n < dims.size(); ++n) {
    current = brackets_of(c, current, current);
    dims[n] = static_cast<int>(current.size());
  }
  return dims;
}

std::array<int, 4> lower_central_series_dimensions(const StructureConstants& c) {
  std::array<int, 4> dims{3, 0, 0, 0};
  const std::vector<Vec3> all = frame();
  std::vector<Vec3> current = all;
  for (std::size_t n = 1; n < dims.size(); ++n) {
    current = brackets_of(c, all, current);
    dims[n] = static_cast<int>(current.size());
  }
  return dims;
}

}  // namespace acbm
