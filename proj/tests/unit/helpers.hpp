#ifndef ACBM_TEST_HELPERS_HPP
#define ACBM_TEST_HELPERS_HPP

#include "acbm/algebra.hpp"

namespace acbm::test {

// F(x, y, z) extended trilinearly from the frame components.
inline double eval_f(const FTensor& f, const Vec3& x, const Vec3& y, const Vec3& z) {
  double s = 0;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k) s += x[i] * y[j] * z[k] * f(i, j, k);
  return s;
}

inline double max_diff(const FTensor& a, const FTensor& b) { return (a - b).max_abs(); }

inline Vec3 unit(int i) { return Vec3::Unit(i); }

}  // namespace acbm::test

#endif
