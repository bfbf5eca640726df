#include "acbm/sampling.hpp"

#include <cmath>

namespace acbm {

namespace {

std::uint64_t splitmix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

double levi_civita_symbol(int i, int j, int l) {
  if (i == j || j == l || i == l) return 0.0;
  return ((j - i + 3) % 3 == 1) ? 1.0 : -1.0;
}

}  // namespace

std::uint64_t sample_seed(std::uint64_t seed, std::uint64_t stream, std::uint64_t index) {
  return splitmix(splitmix(splitmix(seed) ^ stream) ^ index);
}

double SampleRng::uniform(double lo, double hi) {
  const double unit = static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  return lo + (hi - lo) * unit;
}

double SampleRng::dyadic(double lo, double hi, int denominator) {
  const auto lo_k = static_cast<std::int64_t>(std::ceil(lo * denominator));
  const auto hi_k = static_cast<std::int64_t>(std::floor(hi * denominator));
  const auto span = static_cast<std::uint64_t>(hi_k - lo_k + 1);
  const auto k = lo_k + static_cast<std::int64_t>(engine_() % span);
  return static_cast<double>(k) / denominator;
}

double SampleRng::sign() { return (engine_() >> 63) != 0 ? 1.0 : -1.0; }

StructureConstants random_lie_algebra(SampleRng& rng, double range) {
  Vec3 a;
  for (int i = 0; i < 3; ++i) a[i] = rng.uniform(-range, range);
  // A quarter of the draws are unimodular (a = 0).
  if (rng.next() % 4 == 0) a.setZero();

  Mat3 n;
  for (int i = 0; i < 3; ++i)
    for (int j = i; j < 3; ++j) n(i, j) = n(j, i) = rng.uniform(-range, range);
  if (a.squaredNorm() > 0.0) {
    const Mat3 p = Mat3::Identity() - a * a.transpose() / a.squaredNorm();
    n = p * n * p;
  }

  auto entry = [&](int i, int j, int k) {
    double v = 0.0;
    for (int l = 0; l < 3; ++l) v += levi_civita_symbol(i, j, l) * n(l, k);
    if (k == j) v += a[i];
    if (k == i) v -= a[j];
    return v;
  };
  StructureConstants c;
  for (int k = 0; k < 3; ++k) {
    c.c01[k] = entry(0, 1, k);
    c.c02[k] = entry(0, 2, k);
    c.c12[k] = entry(1, 2, k);
  }
  return c;
}

StructureConstants random_constants(SampleRng& rng, double range) {
  std::array<double, 9> v{};
  for (auto& x : v) x = rng.uniform(-range, range);
  return StructureConstants::from_flat(v);
}

}  // namespace acbm
