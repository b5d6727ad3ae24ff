#include "twistlift/lseries.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "twistlift/numbers.hpp"

namespace twistlift {

std::int64_t EllipticCurve::b2() const { return a[0] * a[0] + 4 * a[1]; }
std::int64_t EllipticCurve::b4() const { return 2 * a[3] + a[0] * a[2]; }
std::int64_t EllipticCurve::b6() const { return a[2] * a[2] + 4 * a[4]; }
std::int64_t EllipticCurve::b8() const {
  return a[0] * a[0] * a[4] + 4 * a[1] * a[4] - a[0] * a[2] * a[3] + a[1] * a[2] * a[2] - a[3] * a[3];
}

std::int64_t EllipticCurve::discriminant() const {
  const std::int64_t c2 = b2(), c4 = b4(), c6 = b6(), c8 = b8();
  return -c2 * c2 * c8 - 8 * c4 * c4 * c4 - 27 * c6 * c6 + 9 * c2 * c4 * c6;
}

int EllipticCurve::atkin_lehner_sign(std::int64_t p) const {
  for (const auto& w : atkin_lehner)
    if (w.prime == p) return w.sign;
  throw std::invalid_argument("no Atkin-Lehner sign recorded at p = " + std::to_string(p));
}

void EllipticCurve::validate() const {
  if (discriminant() == 0) throw std::invalid_argument("curve " + label + ": singular model");
  if (conductor < 1) throw std::invalid_argument("curve " + label + ": conductor must be positive");
  if (root_number != 1 && root_number != -1) throw std::invalid_argument("curve " + label + ": bad root number");
  const auto fac = factor(conductor);
  if (fac.size() != atkin_lehner.size()) {
    throw std::invalid_argument("curve " + label + ": need one Atkin-Lehner sign per prime of the level");
  }
  int product = 1;
  for (std::size_t i = 0; i < fac.size(); ++i) {
    const auto& w = atkin_lehner[i];
    std::int64_t q = 1;
    for (int e = 0; e < fac[i].second; ++e) q *= fac[i].first;
    if (w.prime != fac[i].first || w.prime_power != q || (w.sign != 1 && w.sign != -1)) {
      throw std::invalid_argument("curve " + label + ": Atkin-Lehner data inconsistent with the level");
    }
    product *= w.sign;
  }
  // epsilon(f) = - prod_p w_p for weight two.
  if (-product != root_number) {
    throw std::invalid_argument("curve " + label + ": root number disagrees with Atkin-Lehner signs");
  }
  if (self_twist && !is_fundamental(*self_twist)) {
    throw std::invalid_argument("curve " + label + ": self-twist must be a fundamental discriminant");
  }
}

std::int64_t ap(const EllipticCurve& curve, std::int64_t p) {
  if (!is_prime(p)) throw std::invalid_argument("ap: p must be prime");
  const auto& a = curve.a;
  std::int64_t affine = 0;
  if (p == 2) {
    for (std::int64_t x = 0; x < 2; ++x)
      for (std::int64_t y = 0; y < 2; ++y) {
        const std::int64_t lhs = y * y + a[0] * x * y + a[2] * y;
        const std::int64_t rhs = x * x * x + a[1] * x * x + a[3] * x + a[4];
        if (mod(lhs - rhs, 2) == 0) ++affine;
      }
  } else {
    // (2y + a1 x + a3)^2 = 4x^3 + b2 x^2 + 2 b4 x + b6.
    const std::int64_t b2 = mod(curve.b2(), p), b4 = mod(curve.b4(), p), b6 = mod(curve.b6(), p);
    std::vector<char> roots(static_cast<std::size_t>(p), 0);  // number of square roots of r
    for (std::int64_t y = 0; y < p; ++y) ++roots[y * y % p];
    for (std::int64_t x = 0; x < p; ++x) {
      const std::int64_t rhs = ((4 * x % p + b2) % p * x % p + 2 * b4) % p * x % p + b6;
      affine += roots[rhs % p];
    }
  }
  return p - affine;
}

CoefficientTable::CoefficientTable(const EllipticCurve& curve, std::int64_t size)
    : a_(static_cast<std::size_t>(std::max<std::int64_t>(size, 1)) + 1, 0) {
  const std::int64_t n = static_cast<std::int64_t>(a_.size()) - 1;
  std::vector<std::int64_t> spf(a_.size(), 0);
  for (std::int64_t i = 2; i <= n; ++i) {
    if (spf[i] != 0) continue;
    for (std::int64_t j = i; j <= n; j += i)
      if (spf[j] == 0) spf[j] = i;
  }
  a_[1] = 1;
  for (std::int64_t m = 2; m <= n; ++m) {
    const std::int64_t p = spf[m];
    std::int64_t rest = m;
    int r = 0;
    while (rest % p == 0) {
      rest /= p;
      ++r;
    }
    if (rest > 1) {
      a_[m] = a_[m / rest] * a_[rest];
    } else if (r == 1) {
      a_[m] = ap(curve, p);
      if (curve.conductor % p != 0 && p <= 10000 && a_[m] * a_[m] > 4 * p) {
        throw std::logic_error("Hasse bound violated at p = " + std::to_string(p));
      }
    } else if (curve.conductor % p != 0) {
      a_[m] = a_[p] * a_[m / p] - p * a_[m / p / p];
    } else {
      a_[m] = a_[p] * a_[m / p];
    }
  }
}

std::int64_t effective_discriminant(const EllipticCurve& curve, std::int64_t d) {
  if (!is_fundamental(d)) throw std::invalid_argument("not a fundamental discriminant: " + std::to_string(d));
  if (!curve.self_twist) return d;
  const std::int64_t t = *curve.self_twist;
  if (gcd(d, t) == 1) return d;
  return fundamental_part(d * t);
}

namespace {

int power_sign(int s, int e) { return (e % 2 == 0 && s != 0) ? 1 : s; }

}  // namespace

int twist_sign(const EllipticCurve& curve, std::int64_t d) {
  const std::int64_t de = effective_discriminant(curve, d);
  int sign = curve.root_number * kronecker(de, -1);
  for (const auto& [p, e] : factor(curve.conductor)) {
    if (de % p != 0) {
      sign *= power_sign(kronecker(de, p), e);
    } else if (e == 1) {
      sign *= curve.atkin_lehner_sign(p);
    } else {
      throw std::domain_error("twist_sign: unsupported twist with p^2 | N and p | D");
    }
  }
  return sign;
}

std::int64_t twisted_conductor(const EllipticCurve& curve, std::int64_t d) {
  const std::int64_t de = effective_discriminant(curve, d);
  std::int64_t c = curve.conductor * de * de;
  for (const auto& [p, e] : factor(curve.conductor)) {
    if (de % p != 0) continue;
    if (e != 1) throw std::domain_error("twisted_conductor: unsupported twist with p^2 | N and p | D");
    c /= p;
  }
  return c;
}

LSeriesOracle::LSeriesOracle(EllipticCurve curve, std::int64_t max_terms)
    : curve_(std::move(curve)), table_((curve_.validate(), curve_), max_terms) {}

std::int64_t LSeriesOracle::terms_for(std::int64_t conductor) {
  // |a(m)| <= d(m) sqrt(m) <= 2m bounds each term by 4 e^{-xm}.
  const long double x = 2 * std::numbers::pi_v<long double> / std::sqrt(static_cast<long double>(conductor));
  const long double target = 1e-12L * (1 - std::exp(-x)) / 4;
  return static_cast<std::int64_t>(std::ceil(-std::log(target) / x));
}

std::int64_t LSeriesOracle::terms_for_range(const EllipticCurve& curve, std::int64_t dmax,
                                            double length_factor) {
  const std::int64_t c = curve.conductor * dmax * dmax;
  return static_cast<std::int64_t>(std::ceil(static_cast<double>(terms_for(c)) * length_factor)) + 1;
}

CentralValue LSeriesOracle::central_value(std::int64_t d, double length_factor) const {
  CentralValue out;
  out.conductor = twisted_conductor(curve_, d);
  if (twist_sign(curve_, d) != 1) {
    out.trivial_zero = true;
    return out;
  }
  const std::int64_t terms =
      static_cast<std::int64_t>(std::ceil(static_cast<double>(terms_for(out.conductor)) * length_factor));
  if (terms > table_.size()) {
    throw std::out_of_range("central_value: needs " + std::to_string(terms) + " coefficients, table has " +
                            std::to_string(table_.size()));
  }
  const long double x = 2 * std::numbers::pi_v<long double> / std::sqrt(static_cast<long double>(out.conductor));
  long double sum = 0;
  for (std::int64_t m = 1; m <= terms; ++m) {
    const std::int64_t am = table_[m];
    if (am == 0) continue;
    const int chi = kronecker(d, m);
    if (chi == 0) continue;
    sum += static_cast<long double>(am * chi) / m * std::exp(-x * m);
  }
  out.value = 2 * sum;
  out.terms = terms;
  return out;
}

}  // namespace twistlift
