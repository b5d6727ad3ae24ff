#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace twistlift {

using Vec3 = std::array<std::int64_t, 3>;
using Gram3 = std::array<std::array<std::int64_t, 3>, 3>;

/// Non-negative residue of a modulo m (m > 0).
constexpr std::int64_t mod(std::int64_t a, std::int64_t m) {
  const std::int64_t r = a % m;
  return r < 0 ? r + m : r;
}

std::int64_t gcd(std::int64_t a, std::int64_t b);
std::int64_t isqrt(std::int64_t n);
bool is_prime(std::int64_t n);
bool is_squarefree(std::int64_t n);

/// Prime factorization of |n| by trial division, primes ascending.
std::vector<std::pair<std::int64_t, int>> factor(std::int64_t n);

/// Inverse of a modulo a prime p; throws if p | a.
std::int64_t inverse_mod(std::int64_t a, std::int64_t p);

/// Some x with x^2 = a (mod p) for an odd prime p, if one exists.
/// Returns the smaller of the two roots.
std::int64_t sqrt_mod(std::int64_t a, std::int64_t p);

/// Kronecker symbol (a/n), total extension: (a/0) = [a = +-1],
/// (a/-1) = sign(a), (a/2) from a mod 8.
int kronecker(std::int64_t a, std::int64_t n);

/// True iff D is 1 or the discriminant of a quadratic field.
bool is_fundamental(std::int64_t d);

/// A fundamental discriminant (D = 1 admitted, the trivial character).
class Discriminant {
 public:
  explicit Discriminant(std::int64_t value);
  std::int64_t value() const { return value_; }
  std::int64_t abs() const { return value_ < 0 ? -value_ : value_; }

 private:
  std::int64_t value_;
};

/// Fundamental discriminant of Q(sqrt(n)) for a nonzero non-square n.
std::int64_t fundamental_part(std::int64_t n);

/// Kronecker signs (D/p) at an increasing list of odd primes.
struct TypePattern {
  std::vector<std::pair<std::int64_t, int>> entries;

  bool operator==(const TypePattern&) const = default;
  /// Renders as "(+,-,0)".
  std::string to_string() const;
  std::vector<int> signs() const;
  /// Parses "(+,0)" against the given primes.
  static TypePattern parse(const std::string& text, std::span<const std::int64_t> primes);
};

TypePattern type_of(const Discriminant& d, std::span<const std::int64_t> primes);

/// A form v -> Q(v) that is u * l(v)^2 modulo an odd prime.
struct Rank1Decomposition {
  std::int64_t prime;
  Vec3 linear;  // coefficients of l, reduced mod prime
  std::int64_t unit;

  std::int64_t eval(const Vec3& v) const;
};

/// Writes the form with Gram matrix `gram` (Q(v) = v.G.v / 2) as u*l^2 mod p.
/// l is scaled so its first nonzero coefficient is 1.
Rank1Decomposition rank1_decompose(const Gram3& gram, std::int64_t p);

/// Same, but with the unit forced to `unit` (which must lie in the square
/// class of the natural unit); l is then fixed up to sign, and the sign is
/// chosen so the first nonzero coefficient lies in 1..(p-1)/2.
Rank1Decomposition rank1_decompose(const Gram3& gram, std::int64_t p, std::int64_t unit);

}  // namespace twistlift
