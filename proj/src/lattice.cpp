#include "twistlift/lattice.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace twistlift {

Rational parse_rational(const std::string& text) {
  std::string t = text;
  if (!t.empty() && t[0] == '+') t.erase(0, 1);
  Rational r;
  if (t.empty() || r.set_str(t, 10) != 0) {
    throw std::invalid_argument("not a rational number: '" + text + "'");
  }
  if (r.get_den() == 0) throw std::invalid_argument("zero denominator: '" + text + "'");
  r.canonicalize();
  return r;
}

std::string to_string(const Rational& r) {
  if (r.get_den() == 1) return r.get_num().get_str();
  return r.get_num().get_str() + "/" + r.get_den().get_str();
}

std::int64_t to_int64(const Integer& z) {
  if (!z.fits_slong_p()) throw std::overflow_error("integer out of int64 range");
  return z.get_si();
}

std::int64_t to_int64(const Rational& r) {
  if (r.get_den() != 1) throw std::domain_error("rational " + to_string(r) + " is not integral");
  return to_int64(r.get_num());
}

Integer floor(const Rational& r) {
  Integer q;
  mpz_fdiv_q(q.get_mpz_t(), r.get_num_mpz_t(), r.get_den_mpz_t());
  return q;
}

std::optional<Rational> rational_sqrt(const Rational& r) {
  if (r < 0) return std::nullopt;
  if (!mpz_perfect_square_p(r.get_num_mpz_t()) || !mpz_perfect_square_p(r.get_den_mpz_t())) {
    return std::nullopt;
  }
  Integer n, d;
  mpz_sqrt(n.get_mpz_t(), r.get_num_mpz_t());
  mpz_sqrt(d.get_mpz_t(), r.get_den_mpz_t());
  Rational out(n, d);
  out.canonicalize();
  return out;
}

namespace {

void axpy_row(std::vector<Integer>& target, const Integer& q, const std::vector<Integer>& source) {
  for (std::size_t k = 0; k < target.size(); ++k) target[k] -= q * source[k];
}

Integer floor_div(const Integer& a, const Integer& b) {
  Integer q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

}  // namespace

IntegerMatrix hermite_normal_form(IntegerMatrix rows) {
  if (rows.empty()) return rows;
  const std::size_t ncols = rows.front().size();
  std::size_t top = 0;
  for (std::size_t col = 0; col < ncols && top < rows.size(); ++col) {
    for (;;) {
      std::size_t best = rows.size();
      for (std::size_t r = top; r < rows.size(); ++r) {
        if (rows[r][col] != 0 && (best == rows.size() || abs(rows[r][col]) < abs(rows[best][col]))) {
          best = r;
        }
      }
      if (best == rows.size()) break;
      std::swap(rows[top], rows[best]);
      bool done = true;
      for (std::size_t r = top + 1; r < rows.size(); ++r) {
        if (rows[r][col] == 0) continue;
        axpy_row(rows[r], floor_div(rows[r][col], rows[top][col]), rows[top]);
        if (rows[r][col] != 0) done = false;
      }
      if (done) break;
    }
    if (rows[top][col] == 0) continue;
    if (rows[top][col] < 0) {
      for (auto& x : rows[top]) x = -x;
    }
    for (std::size_t r = 0; r < top; ++r) {
      axpy_row(rows[r], floor_div(rows[r][col], rows[top][col]), rows[top]);
    }
    ++top;
  }
  rows.resize(top);
  return rows;
}

IntegerMatrix integer_kernel(std::span<const Integer> functional) {
  const std::size_t n = functional.size();
  std::vector<Integer> value(functional.begin(), functional.end());
  IntegerMatrix coeff(n, std::vector<Integer>(n, 0));
  for (std::size_t i = 0; i < n; ++i) coeff[i][i] = 1;

  // Unimodular row operations on (value | coeff) until one value is left.
  for (;;) {
    std::size_t best = n;
    for (std::size_t i = 0; i < n; ++i) {
      if (value[i] != 0 && (best == n || abs(value[i]) < abs(value[best]))) best = i;
    }
    if (best == n) break;
    bool done = true;
    for (std::size_t i = 0; i < n; ++i) {
      if (i == best || value[i] == 0) continue;
      const Integer q = floor_div(value[i], value[best]);
      value[i] -= q * value[best];
      axpy_row(coeff[i], q, coeff[best]);
      if (value[i] != 0) done = false;
    }
    if (done) break;
  }
  IntegerMatrix kernel;
  for (std::size_t i = 0; i < n; ++i) {
    if (value[i] == 0) kernel.push_back(coeff[i]);
  }
  return hermite_normal_form(std::move(kernel));
}

Rational determinant(RationalMatrix m) {
  const std::size_t n = m.size();
  Rational det = 1;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && m[piv][col] == 0) ++piv;
    if (piv == n) return 0;
    if (piv != col) {
      std::swap(m[piv], m[col]);
      det = -det;
    }
    det *= m[col][col];
    for (std::size_t r = col + 1; r < n; ++r) {
      if (m[r][col] == 0) continue;
      const Rational f = m[r][col] / m[col][col];
      for (std::size_t k = col; k < n; ++k) m[r][k] -= f * m[col][k];
    }
  }
  return det;
}

RationalMatrix inverse(RationalMatrix m) {
  const std::size_t n = m.size();
  RationalMatrix inv(n, std::vector<Rational>(n, 0));
  for (std::size_t i = 0; i < n; ++i) inv[i][i] = 1;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && m[piv][col] == 0) ++piv;
    if (piv == n) throw std::domain_error("inverse: singular matrix");
    std::swap(m[piv], m[col]);
    std::swap(inv[piv], inv[col]);
    const Rational p = m[col][col];
    for (std::size_t k = 0; k < n; ++k) {
      m[col][k] /= p;
      inv[col][k] /= p;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || m[r][col] == 0) continue;
      const Rational f = m[r][col];
      for (std::size_t k = 0; k < n; ++k) {
        m[r][k] -= f * m[col][k];
        inv[r][k] -= f * inv[col][k];
      }
    }
  }
  return inv;
}

RationalMatrix multiply(const RationalMatrix& a, const RationalMatrix& b) {
  const std::size_t n = a.size(), m = b.front().size(), inner = b.size();
  RationalMatrix c(n, std::vector<Rational>(m, 0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < inner; ++k) {
      if (a[i][k] == 0) continue;
      for (std::size_t j = 0; j < m; ++j) c[i][j] += a[i][k] * b[k][j];
    }
  return c;
}

RationalMatrix transpose(const RationalMatrix& a) {
  RationalMatrix t(a.front().size(), std::vector<Rational>(a.size()));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a[i].size(); ++j) t[j][i] = a[i][j];
  return t;
}

namespace {

class Enumerator {
 public:
  Enumerator(const RationalMatrix& a, const Rational& bound, const ShortVectorVisitor& visit)
      : n_(a.size()), q_(a), bound_(bound), visit_(visit), x_(n_, 0), remaining_(n_ + 1) {
    // Q(x) = sum_i q_ii (x_i + sum_{j>i} q_ij x_j)^2.
    for (std::size_t i = 0; i < n_; ++i) {
      if (q_[i][i] <= 0) throw std::domain_error("enumeration: form is not positive definite");
      for (std::size_t j = i + 1; j < n_; ++j) {
        q_[j][i] = q_[i][j];
        q_[i][j] /= q_[i][i];
      }
      for (std::size_t k = i + 1; k < n_; ++k)
        for (std::size_t l = k; l < n_; ++l) q_[k][l] -= q_[k][i] * q_[i][l];
    }
  }

  void run() {
    if (bound_ < 0) return;
    remaining_[n_] = bound_;
    level(n_ - 1);
  }

 private:
  void level(std::size_t i) {
    Rational center = 0;
    for (std::size_t j = i + 1; j < n_; ++j) center -= q_[i][j] * x_[j];
    const std::int64_t start = to_int64(floor(center));
    sweep(i, center, start, -1);
    sweep(i, center, start + 1, +1);
  }

  void sweep(std::size_t i, const Rational& center, std::int64_t t, int step) {
    Rational diff, used;
    for (;; t += step) {
      diff = Rational(t) - center;
      used = q_[i][i] * diff * diff;
      if (used > remaining_[i + 1]) return;
      remaining_[i] = remaining_[i + 1] - used;
      x_[i] = t;
      if (i == 0) {
        visit_(x_, bound_ - remaining_[0]);
      } else {
        level(i - 1);
      }
    }
  }

  std::size_t n_;
  RationalMatrix q_;
  Rational bound_;
  const ShortVectorVisitor& visit_;
  std::vector<std::int64_t> x_;
  std::vector<Rational> remaining_;
};

}  // namespace

void for_each_short_vector(const RationalMatrix& value_matrix, const Rational& bound,
                           const ShortVectorVisitor& visit) {
  if (value_matrix.empty()) throw std::invalid_argument("enumeration: empty form");
  Enumerator e(value_matrix, bound, visit);
  e.run();
}

}  // namespace twistlift
