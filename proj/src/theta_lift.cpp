#include "twistlift/theta_lift.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace twistlift {

std::optional<int> TwistFamily::star_for(std::int64_t d, std::span<const std::int64_t> level_primes) const {
  if (!is_fundamental(d) || (d > 0 ? 1 : -1) != sign) return std::nullopt;
  const TypePattern t = type_of(Discriminant(d), level_primes);
  for (const auto& adm : types)
    if (adm.type == t) return adm.star;
  return std::nullopt;
}

std::vector<std::int64_t> odd_level_primes(std::int64_t level) {
  std::vector<std::int64_t> out;
  for (const auto& [p, e] : factor(level))
    if (p != 2) out.push_back(p);
  return out;
}

std::int64_t find_auxiliary_prime(const LSeriesOracle& oracle, const TwistFamily& family,
                                  std::int64_t search_bound) {
  if (!family.aux_type) throw std::invalid_argument("family " + family.name + " has no auxiliary type");
  const auto& curve = oracle.curve();
  const auto primes = odd_level_primes(curve.conductor);
  for (std::int64_t l = 3; l < search_bound; l += 2) {
    if (!is_prime(l) || curve.conductor % l == 0) continue;
    const std::int64_t d = -family.sign * l;
    if (!is_fundamental(d)) continue;
    if (!(type_of(Discriminant(d), primes) == *family.aux_type)) continue;
    const auto value = oracle.central_value(d);
    if (!value.trivial_zero && std::abs(value.value) > 1e-3L) return l;
  }
  throw std::runtime_error("no auxiliary prime below " + std::to_string(search_bound) + " for family " +
                           family.name);
}

std::vector<WeightFunction> class_weights(const TwistFamily& family, std::span<const TernaryForm> forms,
                                          std::size_t index, std::int64_t aux_prime) {
  std::vector<WeightFunction> out;
  if (family.has_first_kind()) out.push_back(WeightFunction::first_kind(forms[index], aux_prime));
  for (const std::int64_t p : family.second_kind) {
    const std::int64_t unit = rank1_decompose(forms.front().gram(), p).unit;
    out.push_back(WeightFunction::second_kind(forms[index], p, unit));
  }
  return out;
}

std::vector<Rational> weighted_theta(const TernaryForm& q, std::span<const WeightFunction> weights,
                                     std::int64_t divisor, std::int64_t bound) {
  for (const auto& w : weights) {
    if (w.kind() == WeightKind::first && w.prime() != divisor) {
      throw std::invalid_argument("weighted_theta: first-kind prime must equal the divisor");
    }
  }
  std::vector<std::int64_t> sums(static_cast<std::size_t>(bound) + 1, 0);
  for_each_vector(q, divisor * bound, [&](const Vec3& v, std::int64_t value) {
    int product = 1;
    for (const auto& w : weights) {
      product *= w(v);
      if (product == 0) return;
    }
    if (value % divisor != 0) throw std::logic_error("weighted_theta: weight supported off l | Q(v)");
    sums[value / divisor] += product;
  });
  std::vector<Rational> out(sums.size());
  for (std::size_t n = 0; n < sums.size(); ++n) out[n] = make_rational(sums[n], 2);
  return out;
}

std::vector<std::vector<Rational>> class_thetas(const TwistFamily& family, std::span<const TernaryForm> forms,
                                                std::int64_t aux_prime, std::int64_t bound) {
  const std::int64_t divisor = family.has_first_kind() ? aux_prime : 1;
  std::vector<std::vector<Rational>> out;
  for (std::size_t i = 0; i < forms.size(); ++i) {
    std::size_t same = i;
    for (std::size_t j = 0; j < i; ++j)
      if (forms[j] == forms[i]) {
        same = j;
        break;
      }
    if (same != i) {
      out.push_back(out[same]);
      continue;
    }
    const auto weights = class_weights(family, forms, i, aux_prime);
    out.push_back(weighted_theta(forms[i], weights, divisor, bound));
  }
  return out;
}

Rational Eigenform::coefficient(std::int64_t n) const {
  if (n < 0 || n > bound()) throw std::out_of_range("coefficient index " + std::to_string(n) + " beyond bound");
  return coefficients[n];
}

std::string Eigenform::to_string(std::int64_t upto) const {
  std::ostringstream os;
  bool first = true;
  for (std::int64_t n = 1; n <= std::min(upto, bound()); ++n) {
    Rational c = coefficients[n];
    if (c == 0) continue;
    const bool negative = c < 0;
    if (negative) c = -c;
    if (first) {
      if (negative) os << "-";
    } else {
      os << (negative ? " - " : " + ");
    }
    if (c != 1) os << twistlift::to_string(c);
    os << "q";
    if (n != 1) os << "^" << n;
    first = false;
  }
  if (first) os << "0";
  return os.str();
}

Eigenform build_eigenform(const TwistFamily& family, std::span<const std::vector<Rational>> thetas,
                          std::span<const std::int64_t> eigenvector, std::span<const int> signs) {
  if (thetas.size() != eigenvector.size() || signs.size() != eigenvector.size()) {
    throw std::invalid_argument("build_eigenform: size mismatch");
  }
  Eigenform g;
  g.family = family.name;
  g.signs.assign(signs.begin(), signs.end());
  g.coefficients.assign(thetas.front().size(), Rational(0));
  for (std::size_t i = 0; i < thetas.size(); ++i)
    for (std::size_t n = 0; n < g.coefficients.size(); ++n)
      g.coefficients[n] += Rational(eigenvector[i] * signs[i]) * thetas[i][n];
  g.coefficients[0] = 0;

  bool nonzero = false;
  for (const auto& c : g.coefficients) nonzero = nonzero || c != 0;
  if (!nonzero) throw std::domain_error("build_eigenform: family " + family.name + " is identically zero");

  g.scale = 1;
  if (!family.expansion.empty()) {
    const auto [n, printed] = *family.expansion.begin();
    if (n > g.bound()) throw std::out_of_range("build_eigenform: bound below the first printed term");
    if (g.coefficients[n] == 0) {
      throw std::domain_error("build_eigenform: coefficient " + std::to_string(n) + " vanishes but is printed");
    }
    g.scale = Rational(printed) / g.coefficients[n];
    for (auto& c : g.coefficients) c *= g.scale;
  }
  return g;
}

Rational coefficient_at(const Eigenform& g, const TwistFamily& family, std::int64_t d,
                        std::span<const std::int64_t> level_primes) {
  if (!family.admissible(d, level_primes)) {
    throw std::invalid_argument("D = " + std::to_string(d) + " is not admissible for family " + family.name);
  }
  return g.coefficient(d < 0 ? -d : d);
}

std::vector<Rational> eisenstein_combination(std::span<const std::vector<Rational>> thetas,
                                             std::span<const int> signs, std::span<const std::int64_t> units) {
  if (thetas.size() != signs.size() || thetas.size() != units.size()) {
    throw std::invalid_argument("eisenstein_combination: size mismatch");
  }
  std::vector<Rational> out(thetas.front().size(), Rational(0));
  for (std::size_t i = 0; i < thetas.size(); ++i)
    for (std::size_t n = 0; n < out.size(); ++n) out[n] += Rational(signs[i]) * thetas[i][n] / Rational(units[i]);
  return out;
}

std::vector<std::int64_t> admissible_discriminants(const TwistFamily& family, std::int64_t level,
                                                   std::int64_t dmax) {
  const auto primes = odd_level_primes(level);
  std::vector<std::int64_t> out;
  for (std::int64_t n = 1; n <= dmax; ++n) {
    const std::int64_t d = family.sign * n;
    if (family.admissible(d, primes)) out.push_back(d);
  }
  return out;
}

std::vector<CalibrationProbe> make_probes(const LSeriesOracle& oracle, const TwistFamily& family,
                                          std::int64_t dmax, std::size_t count) {
  const auto primes = odd_level_primes(oracle.curve().conductor);
  std::vector<CalibrationProbe> probes;
  for (const std::int64_t d : admissible_discriminants(family, oracle.curve().conductor, dmax)) {
    if (probes.size() == count) break;
    const auto value = oracle.central_value(d);
    probes.push_back({d < 0 ? -d : d, static_cast<double>(value.value),
                      static_cast<double>(*family.star_for(d, primes))});
  }
  return probes;
}

}  // namespace twistlift
