#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "twistlift/lseries.hpp"
#include "twistlift/numbers.hpp"
#include "twistlift/rational.hpp"
#include "twistlift/ternary.hpp"
#include "twistlift/weights.hpp"

namespace twistlift {

struct AdmissibleType {
  TypePattern type;
  int star = 1;
};

/// One weight-3/2 form g: which discriminants it covers, how its theta
/// series are weighted, and the printed data it must reproduce.
struct TwistFamily {
  std::string name;
  int sign = -1;  // sign of the discriminants D covered
  std::vector<AdmissibleType> types;
  /// Expected auxiliary prime l (1 when there is no first-kind weight).
  std::int64_t aux = 1;
  /// Type required of the auxiliary discriminant -sign * l.
  std::optional<TypePattern> aux_type;
  /// Primes dividing the level that carry a second-kind weight.
  std::vector<std::int64_t> second_kind;
  /// Printed leading terms of g, as exponent -> coefficient.
  std::map<std::int64_t, std::int64_t> expansion;
  std::string k_printed;
  std::optional<std::string> k_identity;

  bool has_first_kind() const { return aux != 1; }
  /// Star factor of D, or nullopt if D is not covered by this family.
  std::optional<int> star_for(std::int64_t d, std::span<const std::int64_t> level_primes) const;
  bool admissible(std::int64_t d, std::span<const std::int64_t> level_primes) const {
    return star_for(d, level_primes).has_value();
  }
};

/// Odd primes dividing the level, ascending.
std::vector<std::int64_t> odd_level_primes(std::int64_t level);

/// Smallest prime l not dividing the level such that d = -sign l is a
/// fundamental discriminant of type aux_type with |L(f, d, 1)| > 1e-3.
/// Throws if none exists below `search_bound`.
std::int64_t find_auxiliary_prime(const LSeriesOracle& oracle, const TwistFamily& family,
                                  std::int64_t search_bound = 1000);

/// Weight functions of the family on the i-th class form. Second-kind
/// linear forms are scaled to share the unit of the first class form.
std::vector<WeightFunction> class_weights(const TwistFamily& family, std::span<const TernaryForm> forms,
                                          std::size_t index, std::int64_t aux_prime);

/// c[n] = (1/2) sum over Q(v) = divisor * n of the product of the weights.
std::vector<Rational> weighted_theta(const TernaryForm& q, std::span<const WeightFunction> weights,
                                     std::int64_t divisor, std::int64_t bound);

/// weighted_theta for every class form (identical forms computed once).
std::vector<std::vector<Rational>> class_thetas(const TwistFamily& family, std::span<const TernaryForm> forms,
                                                std::int64_t aux_prime, std::int64_t bound);

/// The eigenform sum_i v_i e_i theta_i, rescaled by `scale`.
struct Eigenform {
  std::string family;
  std::vector<Rational> coefficients;  // index 0..bound
  Rational scale;
  std::vector<int> signs;

  std::int64_t bound() const { return static_cast<std::int64_t>(coefficients.size()) - 1; }
  Rational coefficient(std::int64_t n) const;
  /// Nonzero terms up to `upto` as "q^4 - q^7 - 2q^40".
  std::string to_string(std::int64_t upto) const;
};

/// Scale fixed by the first printed term of the family's expansion.
Eigenform build_eigenform(const TwistFamily& family, std::span<const std::vector<Rational>> thetas,
                          std::span<const std::int64_t> eigenvector, std::span<const int> signs);

/// c(|D|); throws if D is inadmissible for the family or beyond the bound.
Rational coefficient_at(const Eigenform& g, const TwistFamily& family, std::int64_t d,
                        std::span<const std::int64_t> level_primes);

/// sum_i e_i theta_i / w_i: the combination attached to the Eisenstein
/// eigenvector, with w_i the unit half-counts.
std::vector<Rational> eisenstein_combination(std::span<const std::vector<Rational>> thetas,
                                             std::span<const int> signs, std::span<const std::int64_t> units);

/// Admissible fundamental discriminants D of the family with 0 < |D| <= dmax,
/// ascending in |D|.
std::vector<std::int64_t> admissible_discriminants(const TwistFamily& family, std::int64_t level,
                                                   std::int64_t dmax);

/// Oracle probes over the first `count` admissible discriminants.
std::vector<CalibrationProbe> make_probes(const LSeriesOracle& oracle, const TwistFamily& family,
                                          std::int64_t dmax, std::size_t count);

}  // namespace twistlift
