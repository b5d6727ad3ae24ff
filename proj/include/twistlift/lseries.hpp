#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace twistlift {

/// Atkin-Lehner eigenvalue at the prime power q = p^e exactly dividing N.
struct AtkinLehner {
  std::int64_t prime;
  std::int64_t prime_power;
  int sign;
};

/// Minimal Weierstrass model y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6
/// together with the local data of its newform.
struct EllipticCurve {
  std::string label;
  std::array<std::int64_t, 5> a{};  // a1, a2, a3, a4, a6
  std::int64_t conductor = 0;
  std::vector<AtkinLehner> atkin_lehner;
  int root_number = 1;
  /// Fundamental discriminant d with f (x) chi_d = f, if any.
  std::optional<std::int64_t> self_twist;

  std::int64_t b2() const;
  std::int64_t b4() const;
  std::int64_t b6() const;
  std::int64_t b8() const;
  std::int64_t discriminant() const;
  /// Atkin-Lehner sign at p; throws if p does not divide the conductor.
  int atkin_lehner_sign(std::int64_t p) const;
  /// Throws std::invalid_argument on a singular model or inconsistent data.
  void validate() const;
};

/// p + 1 - #E(F_p), counting the singular point for bad p, so that bad
/// primes give 0 (additive) or +-1 (multiplicative).
std::int64_t ap(const EllipticCurve& curve, std::int64_t p);

/// a(1..M) of the newform, by Hecke recursion and multiplicativity.
class CoefficientTable {
 public:
  CoefficientTable(const EllipticCurve& curve, std::int64_t size);
  std::int64_t operator[](std::int64_t m) const { return a_[static_cast<std::size_t>(m)]; }
  std::int64_t size() const { return static_cast<std::int64_t>(a_.size()) - 1; }

 private:
  std::vector<std::int64_t> a_;
};

/// Discriminant used for the local data of the twist: D itself, or, when
/// the curve has a self-twist d and D shares a prime with d, the
/// fundamental part of d D (same twisted newform, coprime to d).
std::int64_t effective_discriminant(const EllipticCurve& curve, std::int64_t d);

/// Sign of the functional equation of L(f, D, s).
int twist_sign(const EllipticCurve& curve, std::int64_t d);

/// Level of f twisted by chi_D; primes p | gcd(D, N) must satisfy p || N.
std::int64_t twisted_conductor(const EllipticCurve& curve, std::int64_t d);

struct CentralValue {
  long double value = 0;
  bool trivial_zero = false;  // odd functional equation: exactly 0
  std::int64_t terms = 0;
  std::int64_t conductor = 0;
};

/// Smoothed Dirichlet series for L(f, D, 1):
///   2 sum_m a(m) (D/m) / m exp(-2 pi m / sqrt(C)),
/// truncated where the tail bound drops below 1e-12. Immutable after
/// construction; central_value is safe to call concurrently.
class LSeriesOracle {
 public:
  explicit LSeriesOracle(EllipticCurve curve, std::int64_t max_terms = 20000);

  const EllipticCurve& curve() const { return curve_; }
  const CoefficientTable& coefficients() const { return table_; }

  /// Number of terms needed for the 1e-12 tail bound at conductor C.
  static std::int64_t terms_for(std::int64_t conductor);
  /// Table size covering every |D| <= dmax at the given length factor.
  static std::int64_t terms_for_range(const EllipticCurve& curve, std::int64_t dmax,
                                      double length_factor = 2.0);

  /// `length_factor` multiplies the number of terms (robustness checks).
  CentralValue central_value(std::int64_t d, double length_factor = 1.0) const;

 private:
  EllipticCurve curve_;
  CoefficientTable table_;
};

}  // namespace twistlift
