#ifndef ACBM_SAMPLING_HPP
#define ACBM_SAMPLING_HPP

#include <cstdint>
#include <random>

#include "acbm/algebra.hpp"

namespace acbm {

/// Derives an independent seed for sample `index` of stream `stream`, so a
/// sweep gives the same draws regardless of evaluation order.
std::uint64_t sample_seed(std::uint64_t seed, std::uint64_t stream, std::uint64_t index);

/// Seeded generator with platform-independent real draws.
class SampleRng {
 public:
  explicit SampleRng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform on [lo, hi), built from the top 53 bits of one engine draw.
  double uniform(double lo, double hi);
  /// Uniform on the grid (lo + k / denominator) within [lo, hi]; products of a
  /// few such values are exact in double precision.
  double dyadic(double lo, double hi, int denominator = 64);
  /// -1 or +1.
  double sign();
  std::uint64_t next() { return engine_(); }

 private:
  std::mt19937_64 engine_;
};

/// A random Lie algebra written as C_ij^k = eps_ijl n^lk + delta_j^k a_i - delta_i^k a_j
/// with n symmetric and n a = 0, which satisfies the Jacobi identity.
/// Entries of n and a are drawn from [-range, range] before the projection.
StructureConstants random_lie_algebra(SampleRng& rng, double range = 2.0);

/// Nine independent uniform constants; generally not a Lie algebra.
StructureConstants random_constants(SampleRng& rng, double range = 5.0);

}  // namespace acbm

#endif  // ACBM_SAMPLING_HPP
