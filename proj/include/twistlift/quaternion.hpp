#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "twistlift/rational.hpp"
#include "twistlift/ternary.hpp"

namespace twistlift {

/// The definite algebra (a, b): i^2 = a, j^2 = b, k = ij = -ji.
struct QuaternionAlgebra {
  std::int64_t a = -1;
  std::int64_t b = -3;

  QuaternionAlgebra() = default;
  QuaternionAlgebra(std::int64_t a_, std::int64_t b_);
  bool operator==(const QuaternionAlgebra&) const = default;
};

/// Coefficients on 1, i, j, k.
struct QuatElement {
  std::array<Rational, 4> c{0, 0, 0, 0};

  bool operator==(const QuatElement&) const = default;
  QuatElement operator+(const QuatElement& y) const;
  QuatElement operator-(const QuatElement& y) const;
  QuatElement operator*(const Rational& s) const;
  std::string to_string() const;

  static QuatElement scalar(const Rational& r);
};

QuatElement multiply(const QuaternionAlgebra& alg, const QuatElement& x, const QuatElement& y);
QuatElement conjugate(const QuatElement& x);
Rational norm(const QuaternionAlgebra& alg, const QuatElement& x);
Rational trace(const QuatElement& x);
/// Nr(x + y) - Nr(x) - Nr(y).
Rational norm_pairing(const QuaternionAlgebra& alg, const QuatElement& x, const QuatElement& y);

/// A full-rank lattice in B, stored as (integer HNF rows) / denominator with
/// the content removed, so equal lattices have identical representations.
class QuatLattice {
 public:
  /// Any generating set of rank 4; throws std::invalid_argument otherwise.
  QuatLattice(const QuaternionAlgebra& alg, std::span<const QuatElement> generators);

  const QuaternionAlgebra& algebra() const { return alg_; }
  const std::vector<QuatElement>& basis() const { return basis_; }
  const IntegerMatrix& numerators() const { return rows_; }
  const Integer& denominator() const { return den_; }

  bool operator==(const QuatLattice& o) const {
    return alg_ == o.alg_ && den_ == o.den_ && rows_ == o.rows_;
  }

  /// |det| of the basis in (1, i, j, k) coordinates.
  Rational covolume() const;
  /// Coordinates of x in this basis.
  std::array<Rational, 4> coordinates(const QuatElement& x) const;
  bool contains(const QuatElement& x) const;
  bool contains(const QuatLattice& other) const;
  /// Gram matrix of the reduced norm in this basis: Nr(sum x_i b_i) = x^T A x.
  RationalMatrix norm_matrix() const;
  QuatLattice scaled(const Rational& s) const;
  QuatLattice conjugated() const;

 private:
  QuaternionAlgebra alg_;
  IntegerMatrix rows_;
  Integer den_;
  std::vector<QuatElement> basis_;
  RationalMatrix inverse_;  // rows: coordinates of 1, i, j, k in this basis
};

/// A lattice that contains 1, is closed under multiplication and has
/// integral reduced traces and norms.
class Order : public QuatLattice {
 public:
  /// Throws std::invalid_argument naming the violated invariant.
  explicit Order(const QuatLattice& lattice);
};

/// A left ideal of a fixed order: R I is contained in I.
class Ideal : public QuatLattice {
 public:
  Ideal(const QuatLattice& lattice, const Order& parent);
  const Order& parent() const { return parent_; }

 private:
  Order parent_;
};

QuatLattice lattice_product(const QuatLattice& x, const QuatLattice& y);
/// Positive rational with covolume(I) = N(I)^2 covolume(R).
Rational ideal_norm(const Ideal& ideal);
/// conjugate(I) / N(I).
QuatLattice ideal_inverse(const Ideal& ideal);
/// {x in B : L x contained in L}.
Order right_order(const QuatLattice& lattice);
/// #{x in O : Nr(x) = 1} / 2.
std::int64_t unit_half_count(const Order& order);

/// Reduced norm on {x in 2O + Z : Tr x = 0} in the basis of its HNF.
TernaryForm ternary_form_raw(const Order& order);
/// Canonical (reduced) representative of ternary_form_raw.
TernaryForm ternary_form(const Order& order);

/// Number of x in the lattice with Nr(x) = target.
std::int64_t count_norm(const QuatLattice& lattice, const Rational& target);

/// B(n)_{ij} = #{x in I_j^{-1} I_i : Nr(x) N(I_j)/N(I_i) = n} / (2 w_j),
/// w_j = unit_half_count(right_order(I_j)). n must be coprime to `level`.
RationalMatrix brandt_matrix(std::span<const Ideal> ideals, std::int64_t n, std::int64_t level);

/// Eigenvalues of v under both actions, when v is an eigenvector.
struct EigenCheck {
  std::optional<Rational> column;  // B v = lambda v
  std::optional<Rational> row;     // v^T B = lambda v^T
};

EigenCheck eigen_check(const RationalMatrix& m, std::span<const std::int64_t> v);

/// sum v_i^2 w_i.
std::int64_t height(std::span<const std::int64_t> eigenvector, std::span<const std::int64_t> weights);

}  // namespace twistlift
