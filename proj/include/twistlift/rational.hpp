#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace twistlift {

using Integer = mpz_class;
using Rational = mpq_class;
using IntegerMatrix = std::vector<std::vector<Integer>>;
using RationalMatrix = std::vector<std::vector<Rational>>;

/// Parses "p", "-p" or "p/q" into a canonical rational.
Rational parse_rational(const std::string& text);

/// "p" for integers, "p/q" otherwise.
std::string to_string(const Rational& r);

std::int64_t to_int64(const Integer& z);

/// Exact value of r as int64; throws if r is not an integer or out of range.
std::int64_t to_int64(const Rational& r);

Integer floor(const Rational& r);

/// The nonnegative rational square root, if r is the square of a rational.
std::optional<Rational> rational_sqrt(const Rational& r);

inline Rational make_rational(std::int64_t num, std::int64_t den = 1) {
  Rational r(Integer(static_cast<long>(num)), Integer(static_cast<long>(den)));
  r.canonicalize();
  return r;
}

}  // namespace twistlift
