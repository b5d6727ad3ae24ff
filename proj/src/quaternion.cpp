#include "twistlift/quaternion.hpp"

#include <sstream>
#include <stdexcept>

#include "twistlift/lattice.hpp"
#include "twistlift/numbers.hpp"

namespace twistlift {

QuaternionAlgebra::QuaternionAlgebra(std::int64_t a_, std::int64_t b_) : a(a_), b(b_) {
  if (a >= 0 || b >= 0) throw std::invalid_argument("quaternion algebra must be definite (a, b < 0)");
}

QuatElement QuatElement::operator+(const QuatElement& y) const {
  QuatElement z;
  for (int t = 0; t < 4; ++t) z.c[t] = c[t] + y.c[t];
  return z;
}

QuatElement QuatElement::operator-(const QuatElement& y) const {
  QuatElement z;
  for (int t = 0; t < 4; ++t) z.c[t] = c[t] - y.c[t];
  return z;
}

QuatElement QuatElement::operator*(const Rational& s) const {
  QuatElement z;
  for (int t = 0; t < 4; ++t) z.c[t] = c[t] * s;
  return z;
}

std::string QuatElement::to_string() const {
  std::ostringstream os;
  for (int t = 0; t < 4; ++t) os << (t ? " " : "") << twistlift::to_string(c[t]);
  return os.str();
}

QuatElement QuatElement::scalar(const Rational& r) {
  QuatElement z;
  z.c[0] = r;
  return z;
}

QuatElement multiply(const QuaternionAlgebra& alg, const QuatElement& x, const QuatElement& y) {
  const Rational a(alg.a), b(alg.b);
  const auto& p = x.c;
  const auto& q = y.c;
  QuatElement z;
  z.c[0] = p[0] * q[0] + a * p[1] * q[1] + b * p[2] * q[2] - a * b * p[3] * q[3];
  z.c[1] = p[0] * q[1] + p[1] * q[0] - b * p[2] * q[3] + b * p[3] * q[2];
  z.c[2] = p[0] * q[2] + p[2] * q[0] + a * p[1] * q[3] - a * p[3] * q[1];
  z.c[3] = p[0] * q[3] + p[3] * q[0] + p[1] * q[2] - p[2] * q[1];
  return z;
}

QuatElement conjugate(const QuatElement& x) {
  QuatElement z = x * Rational(-1);
  z.c[0] = x.c[0];
  return z;
}

Rational norm(const QuaternionAlgebra& alg, const QuatElement& x) {
  const Rational a(alg.a), b(alg.b);
  const auto& p = x.c;
  return p[0] * p[0] - a * p[1] * p[1] - b * p[2] * p[2] + a * b * p[3] * p[3];
}

Rational trace(const QuatElement& x) { return 2 * x.c[0]; }

Rational norm_pairing(const QuaternionAlgebra& alg, const QuatElement& x, const QuatElement& y) {
  return norm(alg, x + y) - norm(alg, x) - norm(alg, y);
}

namespace {

Integer lcm(const Integer& x, const Integer& y) {
  Integer r;
  mpz_lcm(r.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t());
  return r;
}

/// Integer HNF rows and a denominator for the Z-span of rational rows,
/// with the common content removed.
std::pair<IntegerMatrix, Integer> integral_row_basis(const RationalMatrix& rows) {
  Integer den = 1;
  for (const auto& r : rows)
    for (const auto& x : r) den = lcm(den, x.get_den());
  IntegerMatrix ints;
  for (const auto& r : rows) {
    std::vector<Integer> row;
    for (const auto& x : r) row.push_back(Integer(x.get_num() * (den / x.get_den())));
    ints.push_back(std::move(row));
  }
  IntegerMatrix h = hermite_normal_form(std::move(ints));
  Integer g = den;
  for (const auto& r : h)
    for (const auto& x : r) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
  for (auto& r : h)
    for (auto& x : r) x /= g;
  return {std::move(h), den / g};
}

RationalMatrix to_rational(const IntegerMatrix& rows, const Integer& den) {
  RationalMatrix out;
  for (const auto& r : rows) {
    std::vector<Rational> row;
    for (const auto& x : r) {
      Rational q(x, den);
      q.canonicalize();
      row.push_back(q);
    }
    out.push_back(std::move(row));
  }
  return out;
}

QuatElement from_row(const std::vector<Rational>& row) {
  QuatElement x;
  for (int t = 0; t < 4; ++t) x.c[t] = row[t];
  return x;
}

std::vector<Rational> to_row(const QuatElement& x) { return {x.c.begin(), x.c.end()}; }

}  // namespace

QuatLattice::QuatLattice(const QuaternionAlgebra& alg, std::span<const QuatElement> generators)
    : alg_(alg) {
  RationalMatrix gens;
  for (const auto& g : generators) gens.push_back(to_row(g));
  if (gens.size() < 4) throw std::invalid_argument("quaternion lattice needs rank 4");
  auto [rows, den] = integral_row_basis(gens);
  if (rows.size() != 4) throw std::invalid_argument("quaternion lattice needs rank 4");
  rows_ = std::move(rows);
  den_ = std::move(den);
  const RationalMatrix basis = to_rational(rows_, den_);
  for (const auto& r : basis) basis_.push_back(from_row(r));
  inverse_ = inverse(basis);
}

Rational QuatLattice::covolume() const {
  const Rational d = determinant(to_rational(rows_, den_));
  return d < 0 ? Rational(-d) : d;
}

std::array<Rational, 4> QuatLattice::coordinates(const QuatElement& x) const {
  std::array<Rational, 4> out{0, 0, 0, 0};
  for (int s = 0; s < 4; ++s)
    for (int t = 0; t < 4; ++t) out[t] += x.c[s] * inverse_[s][t];
  return out;
}

bool QuatLattice::contains(const QuatElement& x) const {
  for (const auto& c : coordinates(x))
    if (c.get_den() != 1) return false;
  return true;
}

bool QuatLattice::contains(const QuatLattice& other) const {
  for (const auto& b : other.basis())
    if (!contains(b)) return false;
  return true;
}

RationalMatrix QuatLattice::norm_matrix() const {
  RationalMatrix m(4, std::vector<Rational>(4));
  for (int s = 0; s < 4; ++s) {
    m[s][s] = norm(alg_, basis_[s]);
    for (int t = s + 1; t < 4; ++t) {
      m[s][t] = norm_pairing(alg_, basis_[s], basis_[t]) / 2;
      m[t][s] = m[s][t];
    }
  }
  return m;
}

QuatLattice QuatLattice::scaled(const Rational& s) const {
  std::vector<QuatElement> gens;
  for (const auto& b : basis_) gens.push_back(b * s);
  return QuatLattice(alg_, gens);
}

QuatLattice QuatLattice::conjugated() const {
  std::vector<QuatElement> gens;
  for (const auto& b : basis_) gens.push_back(conjugate(b));
  return QuatLattice(alg_, gens);
}

Order::Order(const QuatLattice& lattice) : QuatLattice(lattice) {
  if (!contains(QuatElement::scalar(1))) throw std::invalid_argument("order: does not contain 1");
  for (const auto& x : basis()) {
    if (trace(x).get_den() != 1) throw std::invalid_argument("order: non-integral trace");
    if (norm(algebra(), x).get_den() != 1) throw std::invalid_argument("order: non-integral norm");
    for (const auto& y : basis()) {
      if (!contains(multiply(algebra(), x, y))) {
        throw std::invalid_argument("order: not closed under multiplication");
      }
    }
  }
}

Ideal::Ideal(const QuatLattice& lattice, const Order& parent) : QuatLattice(lattice), parent_(parent) {
  if (!(algebra() == parent.algebra())) throw std::invalid_argument("ideal: algebra mismatch");
  for (const auto& r : parent.basis())
    for (const auto& x : basis())
      if (!contains(multiply(algebra(), r, x))) {
        throw std::invalid_argument("ideal: not a left ideal of its parent order");
      }
}

QuatLattice lattice_product(const QuatLattice& x, const QuatLattice& y) {
  if (!(x.algebra() == y.algebra())) throw std::invalid_argument("lattice_product: algebra mismatch");
  std::vector<QuatElement> gens;
  for (const auto& p : x.basis())
    for (const auto& q : y.basis()) gens.push_back(multiply(x.algebra(), p, q));
  return QuatLattice(x.algebra(), gens);
}

Rational ideal_norm(const Ideal& ideal) {
  const auto root = rational_sqrt(ideal.covolume() / ideal.parent().covolume());
  if (!root) throw std::domain_error("ideal_norm: index is not a square");
  return *root;
}

QuatLattice ideal_inverse(const Ideal& ideal) {
  return ideal.conjugated().scaled(1 / ideal_norm(ideal));
}

Order right_order(const QuatLattice& lattice) {
  // x = sum_k x_k e_k is in the right order iff every coordinate of b_m x in
  // the lattice basis is integral; those coordinates are linear in x.
  const QuaternionAlgebra& alg = lattice.algebra();
  RationalMatrix conditions;
  for (const auto& b : lattice.basis()) {
    std::array<std::array<Rational, 4>, 4> coords;  // [k][t]
    for (int k = 0; k < 4; ++k) {
      QuatElement e;
      e.c[k] = 1;
      coords[k] = lattice.coordinates(multiply(alg, b, e));
    }
    for (int t = 0; t < 4; ++t) {
      std::vector<Rational> row(4);
      for (int k = 0; k < 4; ++k) row[k] = coords[k][t];
      conditions.push_back(std::move(row));
    }
  }
  const auto [rows, den] = integral_row_basis(conditions);
  if (rows.size() != 4) throw std::domain_error("right_order: degenerate conditions");
  // Dual lattice: columns of the inverse of the condition basis.
  const RationalMatrix dual = inverse(to_rational(rows, den));
  std::vector<QuatElement> gens(4);
  for (int col = 0; col < 4; ++col)
    for (int k = 0; k < 4; ++k) gens[col].c[k] = dual[k][col];
  return Order(QuatLattice(alg, gens));
}

std::int64_t count_norm(const QuatLattice& lattice, const Rational& target) {
  std::int64_t count = 0;
  for_each_short_vector(lattice.norm_matrix(), target,
                        [&](std::span<const std::int64_t>, const Rational& value) {
                          if (value == target) ++count;
                        });
  return count;
}

std::int64_t unit_half_count(const Order& order) { return count_norm(order, Rational(1)) / 2; }

TernaryForm ternary_form_raw(const Order& order) {
  const QuaternionAlgebra& alg = order.algebra();
  std::vector<QuatElement> gens{QuatElement::scalar(1)};
  for (const auto& b : order.basis()) gens.push_back(b * Rational(2));
  const QuatLattice doubled(alg, gens);

  std::vector<Integer> traces;
  for (const auto& b : doubled.basis()) {
    const Rational t = trace(b);
    if (t.get_den() != 1) throw std::domain_error("ternary_form: non-integral trace");
    traces.push_back(t.get_num());
  }
  const IntegerMatrix kernel = integer_kernel(traces);
  if (kernel.size() != 3) throw std::domain_error("ternary_form: trace-zero part is not rank 3");
  std::array<QuatElement, 3> s;
  for (int r = 0; r < 3; ++r)
    for (int i = 0; i < 4; ++i) s[r] = s[r] + doubled.basis()[i] * Rational(kernel[r][i]);

  auto value = [](const Rational& q) { return to_int64(q); };
  return {value(norm(alg, s[0])),
          value(norm(alg, s[1])),
          value(norm(alg, s[2])),
          value(norm_pairing(alg, s[1], s[2])),
          value(norm_pairing(alg, s[0], s[2])),
          value(norm_pairing(alg, s[0], s[1]))};
}

TernaryForm ternary_form(const Order& order) { return reduce(ternary_form_raw(order)); }

RationalMatrix brandt_matrix(std::span<const Ideal> ideals, std::int64_t n, std::int64_t level) {
  if (n < 1) throw std::invalid_argument("brandt_matrix: n must be positive");
  if (gcd(n, level) != 1) throw std::invalid_argument("brandt_matrix: n must be coprime to the level");
  const std::size_t h = ideals.size();
  std::vector<Rational> norms;
  std::vector<QuatLattice> inverses;
  std::vector<std::int64_t> units;
  for (const auto& ideal : ideals) {
    norms.push_back(ideal_norm(ideal));
    inverses.push_back(ideal_inverse(ideal));
    units.push_back(unit_half_count(right_order(ideal)));
  }
  RationalMatrix m(h, std::vector<Rational>(h));
  for (std::size_t i = 0; i < h; ++i)
    for (std::size_t j = 0; j < h; ++j) {
      const QuatLattice quotient = lattice_product(inverses[j], ideals[i]);
      const Rational target = Rational(n) * norms[i] / norms[j];
      m[i][j] = Rational(count_norm(quotient, target)) / (2 * units[j]);
    }
  return m;
}

namespace {

std::optional<Rational> proportionality(const std::vector<Rational>& image,
                                        std::span<const std::int64_t> v) {
  std::optional<Rational> lambda;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i] != 0) {
      lambda = image[i] / Rational(v[i]);
      break;
    }
  }
  if (!lambda) return std::nullopt;
  for (std::size_t i = 0; i < v.size(); ++i)
    if (image[i] != *lambda * Rational(v[i])) return std::nullopt;
  return lambda;
}

}  // namespace

EigenCheck eigen_check(const RationalMatrix& m, std::span<const std::int64_t> v) {
  const std::size_t h = m.size();
  if (v.size() != h) throw std::invalid_argument("eigen_check: size mismatch");
  std::vector<Rational> col(h, 0), row(h, 0);
  for (std::size_t i = 0; i < h; ++i)
    for (std::size_t j = 0; j < h; ++j) {
      col[i] += m[i][j] * Rational(v[j]);
      row[j] += Rational(v[i]) * m[i][j];
    }
  return {proportionality(col, v), proportionality(row, v)};
}

std::int64_t height(std::span<const std::int64_t> eigenvector, std::span<const std::int64_t> weights) {
  if (eigenvector.size() != weights.size()) throw std::invalid_argument("height: size mismatch");
  std::int64_t h = 0;
  for (std::size_t i = 0; i < weights.size(); ++i) h += eigenvector[i] * eigenvector[i] * weights[i];
  return h;
}

}  // namespace twistlift
