#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "twistlift/numbers.hpp"
#include "twistlift/rational.hpp"

namespace twistlift {

/// Columns are the images of the standard basis vectors.
using Mat3 = std::array<std::array<std::int64_t, 3>, 3>;

Mat3 identity3();
Mat3 multiply(const Mat3& a, const Mat3& b);
std::int64_t det(const Mat3& m);
/// Inverse of a unimodular integer matrix; throws if |det| != 1.
Mat3 inverse_unimodular(const Mat3& m);
Vec3 apply(const Mat3& m, const Vec3& v);

/// The integral ternary form a x^2 + b y^2 + c z^2 + d yz + e xz + f xy.
struct TernaryForm {
  std::int64_t a = 0, b = 0, c = 0, d = 0, e = 0, f = 0;

  auto operator<=>(const TernaryForm&) const = default;

  /// G = [[2a, f, e], [f, 2b, d], [e, d, 2c]], so that Q(v) = v.G.v / 2.
  Gram3 gram() const;
  std::int64_t operator()(const Vec3& v) const;
  /// u.G.v; equals Q(u+v) - Q(u) - Q(v).
  std::int64_t bilinear(const Vec3& u, const Vec3& v) const;
  /// det G.
  std::int64_t discriminant() const;
  bool positive_definite() const;
  /// Q(v) = x^T A x with A = G / 2.
  RationalMatrix value_matrix() const;
  /// The form v -> Q(T v).
  TernaryForm substitute(const Mat3& t) const;

  std::string to_string() const;
  static TernaryForm from_gram(const Gram3& g);
};

struct LatticePoint {
  Vec3 v;
  std::int64_t value;
};

/// Every v with Q(v) <= bound (including 0), sorted lexicographically.
std::vector<LatticePoint> enumerate(const TernaryForm& q, std::int64_t bound);

/// Unsorted streaming variant of enumerate.
void for_each_vector(const TernaryForm& q, std::int64_t bound,
                     const std::function<void(const Vec3&, std::int64_t)>& visit);

/// Theta series (1/2) sum_v q^{Q(v)} up to q^bound. coefficients[n] is the
/// coefficient of q^n for n >= 1; the constant 1/2 is kept separately and
/// coefficients[0] is 0.
struct ThetaSeries {
  Rational constant_term;
  std::vector<std::int64_t> coefficients;
};

ThetaSeries theta_coefficients(const TernaryForm& q, std::int64_t bound);

struct ReducedForm {
  TernaryForm form;  // form(v) == original(transform v)
  Mat3 transform;
};

/// Canonical representative of the GL3(Z) class: the lexicographically
/// smallest (a, b, c, d, e, f) over all bases of the lattice.
ReducedForm reduce_with_transform(const TernaryForm& q);
TernaryForm reduce(const TernaryForm& q);

/// T with q2(T v) == q1(v) for all v, if the forms are equivalent.
std::optional<Mat3> equivalent(const TernaryForm& q1, const TernaryForm& q2);

/// Order of the integral orthogonal group O(Q), including -1.
std::size_t automorphism_count(const TernaryForm& q);

}  // namespace twistlift
