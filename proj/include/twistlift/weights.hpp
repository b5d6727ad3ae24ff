#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "twistlift/numbers.hpp"
#include "twistlift/rational.hpp"
#include "twistlift/ternary.hpp"

namespace twistlift {

enum class WeightKind { first, second };

/// +1 if t mod p lies in 1..(p-1)/2, -1 if in (p+1)/2..p-1, 0 if p | t.
int half_range_sign(std::int64_t t, std::int64_t p);

/// The sign character used by second-kind weights: the Legendre symbol for
/// p = 3 (mod 4), the half-range sign for p = 1 (mod 4). Both are odd.
int second_kind_symbol(std::int64_t t, std::int64_t p);

/// All nonzero w in (Z/l)^3 with Q(w) = 0 (mod l), lexicographic.
std::vector<Vec3> cone_points(const TernaryForm& q, std::int64_t l);

/// A function on Z^3, periodic modulo its prime, with values in {-1, 0, 1}.
class WeightFunction {
 public:
  /// First kind at an auxiliary prime l: supported on l | Q(v). Off the
  /// tangent line at the base point w it is (b(v, w) / l); on it,
  /// v = lambda w and the value is (lambda / l) * (2 det G / l).
  static WeightFunction first_kind(const TernaryForm& q, std::int64_t l);
  static WeightFunction first_kind(const TernaryForm& q, std::int64_t l, const Vec3& base);

  /// Second kind at a prime p dividing the level, where Q = u l^2 (mod p):
  /// v -> symbol(l(v)). With `unit` given, l is scaled so that u = unit.
  static WeightFunction second_kind(const TernaryForm& q, std::int64_t p);
  static WeightFunction second_kind(const TernaryForm& q, std::int64_t p, std::int64_t unit);

  int operator()(const Vec3& v) const;

  std::int64_t prime() const { return prime_; }
  WeightKind kind() const { return kind_; }
  int sign() const { return sign_; }
  WeightFunction with_sign(int s) const;
  /// First kind only.
  const Vec3& base_point() const { return base_; }
  /// Second kind only.
  const Rank1Decomposition& linear_form() const { return *rank1_; }

 private:
  WeightFunction() = default;

  std::int64_t prime_ = 0;
  WeightKind kind_ = WeightKind::first;
  int sign_ = 1;
  Gram3 gram_{};  // reduced mod prime
  TernaryForm form_{};
  Vec3 base_{};
  int tangent_factor_ = 1;
  std::optional<Rank1Decomposition> rank1_;
};

/// One probe for sign calibration: the coefficient index |D|, the oracle
/// central value and the star factor of its type.
struct CalibrationProbe {
  std::int64_t index;
  double central_value;
  double star;
};

struct Calibration {
  std::vector<int> signs;  // first entry +1
  double k_hat = 0;        // median of sqrt|D| L / (star c^2) over the probes
  double spread = 0;       // max relative deviation from k_hat
  std::size_t probes_used = 0;
};

/// Chooses signs e (e_0 = +1; entries with v_i = 0 fixed at +1) so that
/// c = sum v_i e_i theta_i is nonzero, vanishes exactly where the probe
/// value vanishes, and sqrt(index) L / (star c^2) is constant within
/// `tolerance` relative. A class whose theta series equals an earlier
/// class's is tied to it so that the two contributions add. Returns the
/// first qualifying vector in increasing bit order, or nullopt.
std::optional<Calibration> calibrate_signs(std::span<const std::vector<Rational>> class_thetas,
                                           std::span<const std::int64_t> eigenvector,
                                           std::span<const CalibrationProbe> probes,
                                           double tolerance = 1e-6);

/// Median and maximal relative deviation of the ratios sqrt|D| L / (star c^2)
/// over the probes with c != 0; nullopt if fewer than `min_probes` qualify.
struct RatioFit {
  double median;
  double spread;
  std::size_t count;
};

std::optional<RatioFit> fit_ratios(std::span<const Rational> coefficients,
                                   std::span<const CalibrationProbe> probes,
                                   std::size_t min_probes = 2);

}  // namespace twistlift
