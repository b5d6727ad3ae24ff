#pragma once

#include "twistlift/numbers.hpp"
#include "twistlift/ternary.hpp"

namespace twistlift::testing {

// Piecewise weight rules printed for the two level-27 classes.
inline const TernaryForm kQ1{4, 27, 28, 0, -4, 0};
inline const TernaryForm kQ2{7, 16, 31, 16, 2, 4};

inline int printed_omega7_1(const Vec3& v) {
  const auto [x, y, z] = v;
  if (mod(kQ1(v), 7) != 0) return 0;
  if (mod(x, 7) != 0) return kronecker(x, 7);
  return kronecker(5 * z, 7);
}

inline int printed_omega7_2(const Vec3& v) {
  const auto [x, y, z] = v;
  if (mod(kQ2(v), 7) != 0) return 0;
  if (mod(3 * y + 5 * z, 7) != 0) return kronecker(3 * y + 5 * z, 7);
  return kronecker(6 * x, 7);
}

inline int printed_omega3_1(const Vec3& v) { return kronecker(v[0] + v[2], 3); }
inline int printed_omega3_2(const Vec3& v) { return kronecker(2 * v[0] + v[1] + 2 * v[2], 3); }

/// +1 or -1 if f == s * g on the full period, 0 otherwise.
template <class F, class G>
int global_sign(F f, G g, std::int64_t period) {
  int sign = 0;
  for (std::int64_t x = 0; x < period; ++x)
    for (std::int64_t y = 0; y < period; ++y)
      for (std::int64_t z = 0; z < period; ++z) {
        const Vec3 v{x, y, z};
        const int a = f(v), b = g(v);
        if (a == 0 && b == 0) continue;
        if (a == 0 || b == 0) return 0;
        const int s = a == b ? 1 : -1;
        if (a != s * b) return 0;
        if (sign == 0) sign = s;
        if (sign != s) return 0;
      }
  return sign;
}

}  // namespace twistlift::testing
