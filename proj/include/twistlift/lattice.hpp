#pragma once

#include <cstdint>
#include <functional>
#include <span>

#include "twistlift/rational.hpp"

// Exact integer/rational linear algebra shared by the quaternion and
// ternary-form code, plus Fincke-Pohst enumeration with rational pivots.

namespace twistlift {

/// Row-style Hermite normal form: the nonzero rows of the echelon form of
/// the row lattice, pivots positive, entries above each pivot in [0, pivot).
IntegerMatrix hermite_normal_form(IntegerMatrix rows);

/// Basis of {x in Z^n : sum f_i x_i = 0}.
IntegerMatrix integer_kernel(std::span<const Integer> functional);

Rational determinant(RationalMatrix m);

/// Throws std::domain_error if m is singular.
RationalMatrix inverse(RationalMatrix m);

RationalMatrix multiply(const RationalMatrix& a, const RationalMatrix& b);
RationalMatrix transpose(const RationalMatrix& a);

using ShortVectorVisitor = std::function<void(std::span<const std::int64_t>, const Rational&)>;

/// Calls visit(x, Q(x)) for every integer vector x with Q(x) = x^T A x <= bound,
/// including x = 0. A must be symmetric positive definite; the bounds at each
/// level are computed exactly, so the enumeration is exhaustive. Visit order
/// is deterministic but not lexicographic.
void for_each_short_vector(const RationalMatrix& value_matrix, const Rational& bound,
                           const ShortVectorVisitor& visit);

}  // namespace twistlift
