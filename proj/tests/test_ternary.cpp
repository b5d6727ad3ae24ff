#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <map>

#include "twistlift/ternary.hpp"

using namespace twistlift;

namespace {

const std::vector<TernaryForm> kFixtureForms{
    {4, 27, 28, 0, -4, 0}, {7, 16, 31, 16, 2, 4},    {4, 15, 16, 0, -4, 0},
    {4, 75, 76, 0, -4, 0}, {16, 19, 79, 2, 16, 4}, {24, 31, 39, 6, 12, 24},
};

// Box containing every v with Q(v) <= bound: |v_i| <= sqrt(bound (A^-1)_ii).
std::vector<LatticePoint> naive(const TernaryForm& q, std::int64_t bound) {
  const Gram3 g = q.gram();
  const double det = static_cast<double>(q.discriminant()) / 8.0;
  auto cof = [&](int i) {
    const int a = (i + 1) % 3, b = (i + 2) % 3;
    return (g[a][a] * g[b][b] - g[a][b] * g[b][a]) / 4.0;
  };
  std::array<std::int64_t, 3> r{};
  for (int i = 0; i < 3; ++i) r[i] = static_cast<std::int64_t>(std::ceil(std::sqrt(bound * cof(i) / det))) + 1;
  std::vector<LatticePoint> out;
  for (std::int64_t x = -r[0]; x <= r[0]; ++x)
    for (std::int64_t y = -r[1]; y <= r[1]; ++y)
      for (std::int64_t z = -r[2]; z <= r[2]; ++z) {
        const std::int64_t v = q({x, y, z});
        if (v <= bound) out.push_back({{x, y, z}, v});
      }
  return out;
}

bool same_points(std::vector<LatticePoint> a, std::vector<LatticePoint> b) {
  auto key = [](const LatticePoint& p) { return p.v; };
  auto less = [&](const LatticePoint& x, const LatticePoint& y) { return key(x) < key(y); };
  std::sort(a.begin(), a.end(), less);
  std::sort(b.begin(), b.end(), less);
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i].v != b[i].v || a[i].value != b[i].value) return false;
  return true;
}

}  // namespace

TEST_CASE("form basics") {
  const TernaryForm q{4, 27, 28, 0, -4, 0};
  CHECK(q({1, 0, 0}) == 4);
  CHECK(q({1, 0, 1}) == 28);
  CHECK(q.bilinear({1, 0, 0}, {0, 0, 1}) == -4);
  CHECK(q.discriminant() == 23328);
  CHECK(q.positive_definite());
  CHECK_FALSE((TernaryForm{1, 1, -1, 0, 0, 0}).positive_definite());
  CHECK(q.to_string() == "4x^2 + 27y^2 + 28z^2 - 4xz");
  CHECK(TernaryForm::from_gram(q.gram()) == q);
  CHECK((TernaryForm{1, 1, 1, 0, 0, 0}).discriminant() == 8);
}

TEST_CASE("enumeration agrees with a naive box search on fixture forms") {
  for (const auto& q : kFixtureForms) {
    CAPTURE(q.to_string());
    const auto pts = enumerate(q, 2000);
    CHECK(same_points(pts, naive(q, 2000)));
    CHECK(std::is_sorted(pts.begin(), pts.end(), [](const auto& a, const auto& b) { return a.v < b.v; }));
    std::vector<LatticePoint> streamed;
    for_each_vector(q, 2000, [&](const Vec3& v, std::int64_t value) { streamed.push_back({v, value}); });
    CHECK(same_points(streamed, pts));
  }
}

TEST_CASE("theta series of the sum of three squares") {
  const auto t = theta_coefficients(TernaryForm{1, 1, 1, 0, 0, 0}, 10);
  CHECK(t.constant_term == make_rational(1, 2));
  // r3(n) / 2 for n = 0..10.
  const std::vector<std::int64_t> expected{0, 3, 6, 4, 3, 12, 12, 0, 6, 15, 12};
  CHECK(t.coefficients == expected);
}

TEST_CASE("reduction is a class invariant") {
  const std::vector<Mat3> transforms{
      Mat3{{{1, 0, 0}, {1, 1, 0}, {0, 0, 1}}},
      Mat3{{{0, 1, 0}, {1, 0, 0}, {0, 0, -1}}},
      Mat3{{{2, 1, 0}, {1, 1, 0}, {3, -1, 1}}},
      Mat3{{{1, -2, 5}, {0, 1, 3}, {0, 0, 1}}},
  };
  for (const auto& q : kFixtureForms) {
    const TernaryForm r = reduce(q);
    const auto rt = reduce_with_transform(q);
    for (std::int64_t x = -2; x <= 2; ++x)
      for (std::int64_t y = -2; y <= 2; ++y)
        for (std::int64_t z = -2; z <= 2; ++z) CHECK(rt.form({x, y, z}) == q(apply(rt.transform, {x, y, z})));
    for (const auto& t : transforms) {
      REQUIRE(std::llabs(det(t)) == 1);
      const TernaryForm moved = q.substitute(t);
      CHECK(reduce(moved) == r);
      const auto e = equivalent(moved, q);
      REQUIRE(e.has_value());
      for (std::int64_t x = -2; x <= 2; ++x)
        for (std::int64_t y = -2; y <= 2; ++y)
          for (std::int64_t z = -2; z <= 2; ++z) CHECK(q(apply(*e, {x, y, z})) == moved({x, y, z}));
    }
  }
  CHECK_FALSE(equivalent(kFixtureForms[0], kFixtureForms[1]).has_value());
}

TEST_CASE("unimodular matrices") {
  const Mat3 t{{{2, 1, 0}, {1, 1, 0}, {3, -1, 1}}};
  CHECK(multiply(t, inverse_unimodular(t)) == identity3());
  CHECK_THROWS(inverse_unimodular(Mat3{{{2, 0, 0}, {0, 1, 0}, {0, 0, 1}}}));
}

TEST_CASE("automorphism counts") {
  CHECK(automorphism_count(TernaryForm{1, 1, 1, 0, 0, 0}) == 48);
  CHECK(automorphism_count(kFixtureForms[0]) == 8);
  CHECK(automorphism_count(kFixtureForms[1]) == 4);
  CHECK(automorphism_count(kFixtureForms[2]) == 8);
  CHECK(automorphism_count(kFixtureForms[3]) == 8);
  CHECK(automorphism_count(kFixtureForms[4]) == 4);
  CHECK(automorphism_count(kFixtureForms[5]) == 4);
}

TEST_CASE("genus invariant: one discriminant per level") {
  CHECK(kFixtureForms[0].discriminant() == kFixtureForms[1].discriminant());
  CHECK(kFixtureForms[3].discriminant() == kFixtureForms[4].discriminant());
  CHECK(kFixtureForms[3].discriminant() == kFixtureForms[5].discriminant());
}
