#include "twistlift/weights.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace twistlift {

int half_range_sign(std::int64_t t, std::int64_t p) {
  const std::int64_t r = mod(t, p);
  if (r == 0) return 0;
  return r <= (p - 1) / 2 ? 1 : -1;
}

int second_kind_symbol(std::int64_t t, std::int64_t p) {
  return p % 4 == 3 ? kronecker(t, p) : half_range_sign(t, p);
}

std::vector<Vec3> cone_points(const TernaryForm& q, std::int64_t l) {
  std::vector<Vec3> out;
  for (std::int64_t x = 0; x < l; ++x)
    for (std::int64_t y = 0; y < l; ++y)
      for (std::int64_t z = 0; z < l; ++z) {
        if (x == 0 && y == 0 && z == 0) continue;
        if (mod(q({x, y, z}), l) == 0) out.push_back({x, y, z});
      }
  return out;
}

WeightFunction WeightFunction::first_kind(const TernaryForm& q, std::int64_t l) {
  if (l <= 2 || !is_prime(l)) throw std::invalid_argument("first_kind: l must be an odd prime");
  const auto cone = cone_points(q, l);
  if (cone.empty()) throw std::domain_error("first_kind: no cone point");
  return first_kind(q, l, cone.front());
}

WeightFunction WeightFunction::first_kind(const TernaryForm& q, std::int64_t l, const Vec3& base) {
  if (l <= 2 || !is_prime(l)) throw std::invalid_argument("first_kind: l must be an odd prime");
  if (mod(q.discriminant(), l) == 0) throw std::domain_error("first_kind: form is degenerate mod l");
  WeightFunction w;
  w.prime_ = l;
  w.kind_ = WeightKind::first;
  w.form_ = q;
  const Gram3 g = q.gram();
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) w.gram_[i][j] = mod(g[i][j], l);
  for (int i = 0; i < 3; ++i) w.base_[i] = mod(base[i], l);
  if (w.base_ == Vec3{0, 0, 0} || mod(q(w.base_), l) != 0) {
    throw std::invalid_argument("first_kind: base point is not a nonzero cone point");
  }
  w.tangent_factor_ = kronecker(mod(2 * q.discriminant(), l), l);
  return w;
}

WeightFunction WeightFunction::second_kind(const TernaryForm& q, std::int64_t p) {
  WeightFunction w;
  w.prime_ = p;
  w.kind_ = WeightKind::second;
  w.form_ = q;
  w.rank1_ = rank1_decompose(q.gram(), p);
  return w;
}

WeightFunction WeightFunction::second_kind(const TernaryForm& q, std::int64_t p, std::int64_t unit) {
  WeightFunction w = second_kind(q, p);
  w.rank1_ = rank1_decompose(q.gram(), p, unit);
  return w;
}

WeightFunction WeightFunction::with_sign(int s) const {
  if (s != 1 && s != -1) throw std::invalid_argument("weight sign must be +1 or -1");
  WeightFunction w = *this;
  w.sign_ = s;
  return w;
}

int WeightFunction::operator()(const Vec3& v) const {
  const std::int64_t p = prime_;
  if (kind_ == WeightKind::second) {
    return sign_ * second_kind_symbol(rank1_->eval(v), p);
  }
  Vec3 r{mod(v[0], p), mod(v[1], p), mod(v[2], p)};
  if (mod(form_(r), p) != 0) return 0;
  std::int64_t b = 0;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) b += r[i] * gram_[i][j] % p * base_[j];
  b = mod(b, p);
  if (b != 0) return sign_ * kronecker(b, p);
  // On the cone and on the tangent plane at w: r = lambda w.
  int pivot = 0;
  while (base_[pivot] == 0) ++pivot;
  const std::int64_t lambda = r[pivot] * inverse_mod(base_[pivot], p) % p;
  for (int i = 0; i < 3; ++i) {
    if (r[i] != lambda * base_[i] % p) throw std::logic_error("first-kind weight: tangent point off the line");
  }
  return sign_ * kronecker(lambda, p) * tangent_factor_;
}

std::optional<RatioFit> fit_ratios(std::span<const Rational> coefficients,
                                   std::span<const CalibrationProbe> probes, std::size_t min_probes) {
  std::vector<double> ratios;
  for (const auto& probe : probes) {
    if (probe.index < 0 || static_cast<std::size_t>(probe.index) >= coefficients.size()) {
      throw std::out_of_range("fit_ratios: probe index beyond the coefficient bound");
    }
    const double c = coefficients[probe.index].get_d();
    if (c == 0) continue;
    ratios.push_back(std::sqrt(static_cast<double>(probe.index)) * probe.central_value /
                     (probe.star * c * c));
  }
  if (ratios.size() < min_probes || ratios.empty()) return std::nullopt;
  std::vector<double> sorted = ratios;
  std::sort(sorted.begin(), sorted.end());
  const std::size_t n = sorted.size();
  const double median = n % 2 ? sorted[n / 2] : 0.5 * (sorted[n / 2 - 1] + sorted[n / 2]);
  double spread = 0;
  for (double r : ratios) spread = std::max(spread, std::abs(r - median) / std::abs(median));
  return RatioFit{median, spread, n};
}

std::optional<Calibration> calibrate_signs(std::span<const std::vector<Rational>> class_thetas,
                                           std::span<const std::int64_t> eigenvector,
                                           std::span<const CalibrationProbe> probes, double tolerance) {
  const std::size_t h = class_thetas.size();
  if (h == 0 || eigenvector.size() != h) throw std::invalid_argument("calibrate_signs: size mismatch");
  const std::size_t len = class_thetas.front().size();
  for (const auto& t : class_thetas)
    if (t.size() != len) throw std::invalid_argument("calibrate_signs: theta lengths differ");

  // A class whose theta series repeats an earlier one is tied to it so
  // that the two contributions add; the others are searched freely.
  std::vector<std::size_t> free;
  std::vector<std::optional<std::size_t>> tied(h);
  for (std::size_t i = 1; i < h; ++i) {
    if (eigenvector[i] == 0) continue;
    for (std::size_t j = 0; j < i && !tied[i]; ++j)
      if (eigenvector[j] != 0 && class_thetas[j] == class_thetas[i]) tied[i] = j;
    if (!tied[i]) free.push_back(i);
  }

  constexpr double zero_threshold = 1e-6;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << free.size()); ++mask) {
    std::vector<int> signs(h, 1);
    for (std::size_t b = 0; b < free.size(); ++b)
      if (mask >> b & 1) signs[free[b]] = -1;
    for (std::size_t i = 1; i < h; ++i)
      if (tied[i]) {
        const std::size_t j = *tied[i];
        signs[i] = signs[j] * ((eigenvector[i] > 0) == (eigenvector[j] > 0) ? 1 : -1);
      }
    std::vector<Rational> c(len, 0);
    bool nonzero = false;
    for (std::size_t n = 0; n < len; ++n) {
      for (std::size_t i = 0; i < h; ++i) {
        if (eigenvector[i] != 0) c[n] += Rational(eigenvector[i] * signs[i]) * class_thetas[i][n];
      }
      if (n > 0 && c[n] != 0) nonzero = true;
    }
    if (!nonzero) continue;
    bool coherent = true;
    for (const auto& probe : probes) {
      const bool l_zero = std::abs(probe.central_value) < zero_threshold;
      if (l_zero != (c[probe.index] == 0)) {
        coherent = false;
        break;
      }
    }
    if (!coherent) continue;
    const auto fit = fit_ratios(c, probes, 2);
    if (!fit || fit->spread > tolerance) continue;
    return Calibration{signs, fit->median, fit->spread, fit->count};
  }
  return std::nullopt;
}

}  // namespace twistlift
