#include "acbm/verify.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <map>
#include <string>
#include <thread>

#include "acbm/error.hpp"
#include "acbm/sampling.hpp"

namespace acbm {

namespace {

// Generic samples stay this far from the branch point; the near-branch set
// covers the neighbourhood.
constexpr double kGenericMargin = 1e-2;
constexpr std::array<double, 3> kNearMagnitudes = {1e-4, 1e-8, 1e-12};
constexpr int kMaxDraws = 10000;

struct Draw {
  double alpha = 0, beta = 0, a = 0, b = 0, c = 0;
};

double branch_scalar(BasicClass s, const Mat3& m) {
  return family_of(s) == Family::quadratic ? m.trace() : (m * m).trace();
}

double scalar_of(BasicClass s, const Draw& d) {
  return branch_scalar(s, table1_matrix(s, d.alpha, d.beta, d.a, d.b, d.c));
}

Draw uniform_draw(BasicClass s, SampleRng& rng) {
  Draw d;
  d.alpha = rng.uniform(-3, 3);
  d.beta = uses_beta(s) ? rng.uniform(-3, 3) : 0.0;
  d.a = rng.uniform(-3, 3);
  d.b = rng.uniform(-3, 3);
  d.c = rng.uniform(-3, 3);
  return d;
}

// Zero-branch draws on a dyadic grid so the branch scalar vanishes exactly in
// floating point.
Draw zero_draw(BasicClass s, SampleRng& rng) {
  Draw d;
  d.alpha = rng.dyadic(-3, 3);
  d.beta = uses_beta(s) ? rng.dyadic(-3, 3) : 0.0;
  d.a = rng.dyadic(-3, 3);
  d.b = rng.dyadic(-3, 3);
  d.c = rng.uniform(-3, 3);
  switch (s) {
    case BasicClass::F1: {
      // alpha b = beta a
      const double k = rng.dyadic(-1, 1, 16);
      d.a = k * d.alpha;
      d.b = k * d.beta;
      break;
    }
    case BasicClass::F11: {
      // alpha a + beta b = 0
      const double k = rng.dyadic(-1, 1, 16);
      d.a = k * d.beta;
      d.b = -k * d.alpha;
      break;
    }
    case BasicClass::F8: {
      // 2a^2 - 2b^2 + c^2 = 0 on (s^2 - 2r^2, s^2 + 2r^2, 4rs)
      const double r = rng.dyadic(-0.75, 0.75, 8);
      const double q = rng.dyadic(-0.75, 0.75, 8);
      d.a = rng.sign() * (q * q - 2 * r * r);
      d.b = rng.sign() * (q * q + 2 * r * r);
      d.c = 4 * r * q;
      break;
    }
    default:
      d.c = 0.0;  // F4, F5, F9, F10
      break;
  }
  return d;
}

bool matches(Branch branch, double scalar) {
  switch (branch) {
    case Branch::trace_nonzero: return std::abs(scalar) >= kGenericMargin;
    case Branch::trsq_negative: return scalar <= -kGenericMargin;
    case Branch::trsq_positive: return scalar >= kGenericMargin;
    default: return scalar == 0.0;
  }
}

Draw draw_for(BasicClass s, Branch branch, SampleRng& rng) {
  for (int attempt = 0; attempt < kMaxDraws; ++attempt) {
    const bool zero = branch == Branch::trace_zero || branch == Branch::trsq_zero;
    const Draw d = zero ? zero_draw(s, rng) : uniform_draw(s, rng);
    if (matches(branch, scalar_of(s, d))) return d;
  }
  throw Error("could not draw a sample for " + std::string(to_string(s)) + " " + std::string(to_string(branch)));
}

double away_from_zero(SampleRng& rng) { return rng.sign() * rng.uniform(0.5, 3.0); }

// Draw whose branch scalar equals `target` up to rounding.
Draw near_draw(BasicClass s, double target, SampleRng& rng) {
  for (int attempt = 0; attempt < kMaxDraws; ++attempt) {
    Draw d = uniform_draw(s, rng);
    d.alpha = away_from_zero(rng);
    switch (s) {
      case BasicClass::F1:
        d.b = (target + d.beta * d.a) / d.alpha;
        if (std::abs(d.b) > 3) continue;
        break;
      case BasicClass::F5:
        d.c = -target / (2 * d.alpha);
        break;
      case BasicClass::F11:
        d.a = (target - d.beta * d.b) / d.alpha;
        if (std::abs(d.a) > 3) continue;
        break;
      case BasicClass::F4:
      case BasicClass::F9:
      case BasicClass::F10:
        d.c = rng.sign() * std::sqrt(std::abs(target) / 2) / std::abs(d.alpha);
        break;
      case BasicClass::F8: {
        const double c2 = target / (2 * d.alpha * d.alpha) - 2 * d.a * d.a + 2 * d.b * d.b;
        if (c2 < 0 || c2 > 9) continue;
        d.c = rng.sign() * std::sqrt(c2);
        break;
      }
    }
    return d;
  }
  throw Error("could not draw a near-branch sample for " + std::string(to_string(s)));
}

std::vector<double> near_targets(BasicClass s) {
  std::vector<double> out;
  const bool negative = s == BasicClass::F4 || s == BasicClass::F8 || family_of(s) == Family::quadratic;
  const bool positive = s != BasicClass::F4;
  for (double m : kNearMagnitudes) {
    if (positive) out.push_back(m);
    if (negative) out.push_back(-m);
  }
  return out;
}

double safe(double v) { return std::isfinite(v) ? v : std::numeric_limits<double>::infinity(); }

unsigned worker_count(unsigned requested) {
  unsigned n = requested;
  if (n == 0) {
    n = std::max(1u, std::thread::hardware_concurrency());
    if (const char* env = std::getenv("ACBM_WORKERS")) {
      const long cap = std::strtol(env, nullptr, 10);
      if (cap > 0) n = std::min<unsigned>(n, static_cast<unsigned>(cap));
    }
  }
  return std::max(1u, n);
}

template <class Fn>
void parallel_for(std::size_t count, unsigned workers, Fn&& fn) {
  std::atomic<std::size_t> next{0};
  auto run = [&] {
    for (std::size_t i = next++; i < count; i = next++) fn(i);
  };
  std::vector<std::thread> pool;
  for (unsigned w = 1; w < workers; ++w) pool.emplace_back(run);
  run();
  for (auto& t : pool) t.join();
}

struct MainTask {
  BasicClass cls;
  Branch branch;
  std::uint64_t stream;
  std::size_t index;
};

struct MainResult {
  double corrected_error = 0;
  double printed_error = 0;
  Branch corrected_tag = Branch::trace_zero;
  double inverse_error = 0;
  double determinant_error = 0;
  double additivity_error = 0;
};

Mat3 corrected_exp(BasicClass s, const Mat3& a) {
  return closed_form_exp(a, table1_coefficients(s, a, CoefficientMode::corrected));
}

MainResult evaluate(const MainTask& task, std::uint64_t seed) {
  SampleRng rng(sample_seed(seed, task.stream, task.index));
  const Draw d = draw_for(task.cls, task.branch, rng);
  MainResult r;
  const GroupSample corrected = verify_sample(task.cls, d.alpha, d.beta, d.a, d.b, d.c, CoefficientMode::corrected);
  r.corrected_error = safe(corrected.error);
  r.corrected_tag = corrected.coeffs.branch;
  const Mat3 printed = closed_form_exp(corrected.a, table1_coefficients(task.cls, corrected.a, CoefficientMode::printed));
  r.printed_error = safe(relative_error(printed, corrected.reference));

  const Mat3& e = corrected.closed;
  const Mat3 einv = corrected_exp(task.cls, -corrected.a);
  const double product_scale = std::max(1.0, e.norm() * einv.norm());
  r.inverse_error = safe((e * einv - Mat3::Identity()).norm() / product_scale);
  const double expected_det = std::exp(corrected.a.trace());
  r.determinant_error = safe(std::abs(e.determinant() - expected_det) / (expected_det * product_scale));

  const double s1 = rng.uniform(-1, 1);
  const double s2 = rng.uniform(-1, 1);
  const Mat3 x = corrected_exp(task.cls, s1 * corrected.a);
  const Mat3 y = corrected_exp(task.cls, s2 * corrected.a);
  const Mat3 z = corrected_exp(task.cls, (s1 + s2) * corrected.a);
  r.additivity_error = safe((x * y - z).norm() / std::max(1.0, x.norm() * y.norm()));
  return r;
}

struct NearTask {
  BasicClass cls;
  double target;
  std::uint64_t stream;
  std::size_t index;
};

struct NearResult {
  double error = 0;
  bool series = false;
};

NearResult evaluate(const NearTask& task, std::uint64_t seed) {
  SampleRng rng(sample_seed(seed, task.stream, task.index));
  const Draw d = near_draw(task.cls, task.target, rng);
  const GroupSample g = verify_sample(task.cls, d.alpha, d.beta, d.a, d.b, d.c, CoefficientMode::corrected);
  return {safe(g.error), g.coeffs.branch == Branch::series_fallback};
}

std::size_t class_index(BasicClass s) { return static_cast<std::size_t>(s); }

}  // namespace

std::vector<Branch> sampled_branches(BasicClass s) {
  switch (s) {
    case BasicClass::F1:
    case BasicClass::F5:
    case BasicClass::F11:
      return {Branch::trace_zero, Branch::trace_nonzero};
    case BasicClass::F4:
      return {Branch::trsq_zero, Branch::trsq_negative};
    case BasicClass::F8:
      return {Branch::trsq_negative, Branch::trsq_zero, Branch::trsq_positive};
    case BasicClass::F9:
    case BasicClass::F10:
      return {Branch::trsq_zero, Branch::trsq_positive};
  }
  return {};
}

bool VerificationReport::corrected_pass() const {
  for (const auto& c : cells)
    if (c.asserted && !c.pass) return false;
  for (const auto& n : near_branch)
    if (!n.pass) return false;
  for (const auto& a : axioms)
    if (!a.pass) return false;
  return true;
}

VerificationReport run_verification(const SweepConfig& config) {
  if (config.samples == 0) throw ArgumentError("sample count must be at least 1");
  VerificationReport report;
  report.config = config;
  const unsigned workers = worker_count(config.workers);
  const std::size_t near_samples = config.near_samples != 0 ? config.near_samples : std::min<std::size_t>(config.samples, 100);

  std::vector<MainTask> main_tasks;
  for (auto s : kBasicClasses) {
    const auto branches = sampled_branches(s);
    for (std::size_t b = 0; b < branches.size(); ++b) {
      const std::uint64_t stream = 1000 + 16 * class_index(s) + b;
      for (std::size_t i = 0; i < config.samples; ++i) main_tasks.push_back({s, branches[b], stream, i});
    }
  }
  std::vector<MainResult> main_results(main_tasks.size());
  parallel_for(main_tasks.size(), workers,
               [&](std::size_t i) { main_results[i] = evaluate(main_tasks[i], config.seed); });

  std::vector<NearTask> near_tasks;
  for (auto s : kBasicClasses) {
    const auto targets = near_targets(s);
    for (std::size_t t = 0; t < targets.size(); ++t) {
      const std::uint64_t stream = 5000 + 64 * class_index(s) + t;
      for (std::size_t i = 0; i < near_samples; ++i) near_tasks.push_back({s, targets[t], stream, i});
    }
  }
  std::vector<NearResult> near_results(near_tasks.size());
  parallel_for(near_tasks.size(), workers,
               [&](std::size_t i) { near_results[i] = evaluate(near_tasks[i], config.seed); });

  // Aggregation runs in task order, so the report does not depend on scheduling.
  std::size_t pos = 0;
  for (auto s : kBasicClasses) {
    AxiomResult axioms;
    axioms.cls = s;
    for (auto branch : sampled_branches(s)) {
      CellResult corrected;
      corrected.cls = s;
      corrected.branch = branch;
      CellResult printed = corrected;
      printed.mode = CoefficientMode::printed;
      std::map<Branch, std::size_t> tags;
      double corrected_sum = 0;
      double printed_sum = 0;
      for (std::size_t i = 0; i < config.samples; ++i, ++pos) {
        const MainResult& r = main_results[pos];
        corrected.max_error = std::max(corrected.max_error, r.corrected_error);
        printed.max_error = std::max(printed.max_error, r.printed_error);
        corrected_sum += r.corrected_error;
        printed_sum += r.printed_error;
        ++tags[r.corrected_tag];
        axioms.max_inverse_error = std::max(axioms.max_inverse_error, r.inverse_error);
        axioms.max_determinant_error = std::max(axioms.max_determinant_error, r.determinant_error);
        axioms.max_additivity_error = std::max(axioms.max_additivity_error, r.additivity_error);
        ++axioms.samples;
      }
      for (CellResult* cell : {&corrected, &printed}) {
        cell->samples = config.samples;
        cell->pass = cell->max_error <= config.tolerance;
      }
      corrected.mean_error = corrected_sum / static_cast<double>(config.samples);
      printed.mean_error = printed_sum / static_cast<double>(config.samples);
      corrected.asserted = true;
      corrected.branch_tags.assign(tags.begin(), tags.end());
      if (!printed.pass && corrected.pass) {
        report.divergence_cells.push_back({s, branch, printed.max_error, corrected.max_error});
      }
      report.cells.push_back(std::move(corrected));
      report.cells.push_back(std::move(printed));
    }
    axioms.pass = axioms.max_inverse_error <= config.tolerance &&
                  axioms.max_determinant_error <= config.tolerance &&
                  axioms.max_additivity_error <= config.tolerance;
    report.axioms.push_back(axioms);
  }

  pos = 0;
  for (auto s : kBasicClasses) {
    for (double target : near_targets(s)) {
      NearBranchResult n;
      n.cls = s;
      n.target = target;
      for (std::size_t i = 0; i < near_samples; ++i, ++pos) {
        n.max_error = std::max(n.max_error, near_results[pos].error);
        if (near_results[pos].series) ++n.series_fallback;
        ++n.samples;
      }
      n.pass = n.max_error <= config.near_tolerance;
      report.near_branch.push_back(n);
    }
  }

  report.reconciliation = full_reconciliation(config.seed);
  return report;
}

}  // namespace acbm
