#include "twistlift/ternary.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <sstream>
#include <stdexcept>
#include <tuple>

namespace twistlift {

Mat3 identity3() { return {{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}}; }

Mat3 multiply(const Mat3& a, const Mat3& b) {
  Mat3 c{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k) c[i][j] += a[i][k] * b[k][j];
  return c;
}

std::int64_t det(const Mat3& m) {
  return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
         m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
         m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
}

Mat3 inverse_unimodular(const Mat3& m) {
  const std::int64_t dt = det(m);
  if (dt != 1 && dt != -1) throw std::domain_error("inverse_unimodular: det != +-1");
  Mat3 inv{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      // cofactor of (j, i)
      const int r0 = (j + 1) % 3, r1 = (j + 2) % 3, c0 = (i + 1) % 3, c1 = (i + 2) % 3;
      inv[i][j] = (m[r0][c0] * m[r1][c1] - m[r0][c1] * m[r1][c0]) * dt;
    }
  return inv;
}

Vec3 apply(const Mat3& m, const Vec3& v) {
  Vec3 out{};
  for (int i = 0; i < 3; ++i) out[i] = m[i][0] * v[0] + m[i][1] * v[1] + m[i][2] * v[2];
  return out;
}

Gram3 TernaryForm::gram() const {
  return {{{2 * a, f, e}, {f, 2 * b, d}, {e, d, 2 * c}}};
}

std::int64_t TernaryForm::operator()(const Vec3& v) const {
  const auto [x, y, z] = v;
  return a * x * x + b * y * y + c * z * z + d * y * z + e * x * z + f * x * y;
}

std::int64_t TernaryForm::bilinear(const Vec3& u, const Vec3& v) const {
  const Gram3 g = gram();
  std::int64_t s = 0;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) s += u[i] * g[i][j] * v[j];
  return s;
}

std::int64_t TernaryForm::discriminant() const {
  const Gram3 g = gram();
  return g[0][0] * (g[1][1] * g[2][2] - g[1][2] * g[2][1]) -
         g[0][1] * (g[1][0] * g[2][2] - g[1][2] * g[2][0]) +
         g[0][2] * (g[1][0] * g[2][1] - g[1][1] * g[2][0]);
}

bool TernaryForm::positive_definite() const {
  const Gram3 g = gram();
  return g[0][0] > 0 && g[0][0] * g[1][1] - g[0][1] * g[1][0] > 0 && discriminant() > 0;
}

RationalMatrix TernaryForm::value_matrix() const {
  const Gram3 g = gram();
  RationalMatrix m(3, std::vector<Rational>(3));
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) m[i][j] = make_rational(g[i][j], 2);
  return m;
}

TernaryForm TernaryForm::substitute(const Mat3& t) const {
  const Gram3 g = gram();
  Gram3 out{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k)
        for (int l = 0; l < 3; ++l) out[i][j] += t[k][i] * g[k][l] * t[l][j];
  return from_gram(out);
}

TernaryForm TernaryForm::from_gram(const Gram3& g) {
  if (g[0][0] % 2 != 0 || g[1][1] % 2 != 0 || g[2][2] % 2 != 0) {
    throw std::invalid_argument("Gram matrix with odd diagonal");
  }
  return {g[0][0] / 2, g[1][1] / 2, g[2][2] / 2, g[1][2], g[0][2], g[0][1]};
}

std::string TernaryForm::to_string() const {
  std::ostringstream os;
  bool first = true;
  auto term = [&](std::int64_t coeff, const char* mono) {
    if (coeff == 0) return;
    if (first) {
      if (coeff < 0) os << "-";
    } else {
      os << (coeff < 0 ? " - " : " + ");
    }
    const std::int64_t m = std::llabs(coeff);
    if (m != 1) os << m;
    os << mono;
    first = false;
  };
  term(a, "x^2");
  term(b, "y^2");
  term(c, "z^2");
  term(d, "yz");
  term(e, "xz");
  term(f, "xy");
  if (first) os << "0";
  return os.str();
}

namespace {

using i128 = __int128;

i128 isqrt128(i128 n) {
  if (n <= 0) return 0;
  i128 r = static_cast<i128>(std::sqrt(static_cast<long double>(n)));
  while (r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r;
}

i128 floor_div128(i128 a, i128 b) {
  i128 q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

/// Integer range containing every t with alpha t^2 + beta t + gamma <= 0
/// (alpha > 0); may include a few extra t on each side.
std::pair<std::int64_t, std::int64_t> quadratic_range(i128 alpha, i128 beta, i128 gamma) {
  const i128 disc = beta * beta - 4 * alpha * gamma;
  if (disc < 0) return {1, 0};
  const i128 s = isqrt128(disc) + 1;
  return {static_cast<std::int64_t>(floor_div128(-beta - s, 2 * alpha)),
          static_cast<std::int64_t>(floor_div128(-beta + s, 2 * alpha) + 1)};
}

}  // namespace

void for_each_vector(const TernaryForm& q, std::int64_t bound,
                     const std::function<void(const Vec3&, std::int64_t)>& visit) {
  if (bound < 0) throw std::invalid_argument("enumerate: negative bound");
  if (!q.positive_definite()) throw std::domain_error("enumerate: form is not positive definite");
  // Completing the square in x, then in y, gives exact integer bounds:
  //   4a Q = (2a x + f y + e z)^2 + P y^2 + R yz + S z^2,
  //   4P (P y^2 + R yz + S z^2) = (2P y + R z)^2 + (4PS - R^2) z^2.
  const i128 a = q.a, n = bound;
  const i128 p = 4 * a * q.b - i128(q.f) * q.f;
  const i128 r = 4 * a * q.d - 2 * i128(q.e) * q.f;
  const i128 s = 4 * a * q.c - i128(q.e) * q.e;
  const auto [zlo, zhi] = quadratic_range(4 * p * s - r * r, 0, -16 * a * p * n);
  for (std::int64_t z = zlo; z <= zhi; ++z) {
    const auto [ylo, yhi] = quadratic_range(p, r * z, s * z * z - 4 * a * n);
    for (std::int64_t y = ylo; y <= yhi; ++y) {
      const i128 rest = i128(q.b) * y * y + i128(q.d) * y * z + i128(q.c) * z * z;
      const auto [xlo, xhi] = quadratic_range(a, i128(q.f) * y + i128(q.e) * z, rest - n);
      for (std::int64_t x = xlo; x <= xhi; ++x) {
        const Vec3 v{x, y, z};
        const std::int64_t value = q(v);
        if (value <= bound) visit(v, value);
      }
    }
  }
}

std::vector<LatticePoint> enumerate(const TernaryForm& q, std::int64_t bound) {
  std::vector<LatticePoint> out;
  for_each_vector(q, bound, [&](const Vec3& v, std::int64_t value) { out.push_back({v, value}); });
  std::sort(out.begin(), out.end(),
            [](const LatticePoint& x, const LatticePoint& y) { return x.v < y.v; });
  return out;
}

ThetaSeries theta_coefficients(const TernaryForm& q, std::int64_t bound) {
  std::vector<std::int64_t> counts(static_cast<std::size_t>(bound) + 1, 0);
  for_each_vector(q, bound, [&](const Vec3&, std::int64_t value) { ++counts[value]; });
  ThetaSeries theta{make_rational(1, 2), std::vector<std::int64_t>(counts.size(), 0)};
  for (std::size_t n = 1; n < counts.size(); ++n) {
    if (counts[n] % 2 != 0) throw std::logic_error("theta: odd representation count");
    theta.coefficients[n] = counts[n] / 2;
  }
  return theta;
}

namespace {

Vec3 cross(const Vec3& u, const Vec3& v) {
  return {u[1] * v[2] - u[2] * v[1], u[2] * v[0] - u[0] * v[2], u[0] * v[1] - u[1] * v[0]};
}

std::int64_t dot(const Vec3& u, const Vec3& v) { return u[0] * v[0] + u[1] * v[1] + u[2] * v[2]; }

std::int64_t round_div(std::int64_t num, std::int64_t den) {
  // nearest integer to num/den, den > 0
  const std::int64_t twice = 2 * num + den;
  const std::int64_t q = twice / (2 * den);
  return (twice % (2 * den) < 0) ? q - 1 : q;
}

/// Pairwise size reduction; only used to bound the third successive minimum.
std::array<Vec3, 3> greedy_basis(const TernaryForm& q) {
  std::array<Vec3, 3> basis{{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}};
  bool changed = true;
  while (changed) {
    changed = false;
    std::stable_sort(basis.begin(), basis.end(),
                     [&](const Vec3& u, const Vec3& v) { return q(u) < q(v); });
    for (int i = 1; i < 3; ++i) {
      for (int j = i - 1; j >= 0; --j) {
        const std::int64_t k = round_div(q.bilinear(basis[i], basis[j]), 2 * q(basis[j]));
        if (k == 0) continue;
        Vec3 cand = basis[i];
        for (int t = 0; t < 3; ++t) cand[t] -= k * basis[j][t];
        if (q(cand) < q(basis[i])) {
          basis[i] = cand;
          changed = true;
        }
      }
    }
  }
  return basis;
}

std::vector<LatticePoint> nonzero_sorted_by_value(const TernaryForm& q, std::int64_t bound) {
  std::vector<LatticePoint> pts;
  for_each_vector(q, bound, [&](const Vec3& v, std::int64_t value) {
    if (value > 0) pts.push_back({v, value});
  });
  std::sort(pts.begin(), pts.end(), [](const LatticePoint& x, const LatticePoint& y) {
    return std::tie(x.value, x.v) < std::tie(y.value, y.v);
  });
  return pts;
}

}  // namespace

ReducedForm reduce_with_transform(const TernaryForm& q) {
  if (!q.positive_definite()) throw std::domain_error("reduce: form is not positive definite");
  const auto basis = greedy_basis(q);
  std::int64_t bound = 0;
  for (const auto& b : basis) bound = std::max(bound, q(b));
  const auto pts = nonzero_sorted_by_value(q, bound);
  const std::int64_t min_value = pts.front().value;

  std::optional<std::array<std::int64_t, 6>> best;
  Mat3 best_t{};
  for (const auto& u1 : pts) {
    if (u1.value != min_value) break;
    for (const auto& u2 : pts) {
      if (best && u2.value > (*best)[1]) break;
      const Vec3 c12 = cross(u1.v, u2.v);
      if (gcd(gcd(c12[0], c12[1]), c12[2]) != 1) continue;
      const std::int64_t f = q.bilinear(u1.v, u2.v);
      for (const auto& u3 : pts) {
        if (best && u2.value == (*best)[1] && u3.value > (*best)[2]) break;
        const std::int64_t dt = dot(c12, u3.v);
        if (dt != 1 && dt != -1) continue;
        const std::array<std::int64_t, 6> key{u1.value, u2.value, u3.value,
                                              q.bilinear(u2.v, u3.v), q.bilinear(u1.v, u3.v), f};
        if (!best || key < *best) {
          best = key;
          for (int r = 0; r < 3; ++r) {
            best_t[r][0] = u1.v[r];
            best_t[r][1] = u2.v[r];
            best_t[r][2] = u3.v[r];
          }
        }
      }
    }
  }
  const auto& k = *best;
  return {{k[0], k[1], k[2], k[3], k[4], k[5]}, best_t};
}

TernaryForm reduce(const TernaryForm& q) { return reduce_with_transform(q).form; }

std::optional<Mat3> equivalent(const TernaryForm& q1, const TernaryForm& q2) {
  const ReducedForm r1 = reduce_with_transform(q1);
  const ReducedForm r2 = reduce_with_transform(q2);
  if (r1.form != r2.form) return std::nullopt;
  // q2(T2 w) = r(w) = q1(T1 w)  =>  q2(T2 T1^{-1} v) = q1(v)
  return multiply(r2.transform, inverse_unimodular(r1.transform));
}

std::size_t automorphism_count(const TernaryForm& q) {
  const TernaryForm r = reduce(q);
  const auto pts = nonzero_sorted_by_value(r, r.c);
  std::size_t count = 0;
  for (const auto& u1 : pts) {
    if (u1.value != r.a) continue;
    for (const auto& u2 : pts) {
      if (u2.value != r.b || r.bilinear(u1.v, u2.v) != r.f) continue;
      for (const auto& u3 : pts) {
        if (u3.value != r.c) continue;
        if (r.bilinear(u1.v, u3.v) == r.e && r.bilinear(u2.v, u3.v) == r.d) ++count;
      }
    }
  }
  return count;
}

}  // namespace twistlift
