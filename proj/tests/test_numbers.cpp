#include <doctest.h>

#include "twistlift/numbers.hpp"

using namespace twistlift;

namespace {

int legendre_by_euler(std::int64_t a, std::int64_t p) {
  a = mod(a, p);
  if (a == 0) return 0;
  std::int64_t r = 1, b = a, e = (p - 1) / 2;
  while (e > 0) {
    if (e & 1) r = r * b % p;
    b = b * b % p;
    e >>= 1;
  }
  return r == 1 ? 1 : -1;
}

}  // namespace

TEST_CASE("elementary arithmetic") {
  CHECK(gcd(12, -18) == 6);
  CHECK(gcd(0, 5) == 5);
  CHECK(isqrt(0) == 0);
  CHECK(isqrt(99) == 9);
  CHECK(isqrt(100) == 10);
  CHECK(is_prime(2));
  CHECK(is_prime(97));
  CHECK_FALSE(is_prime(1));
  CHECK_FALSE(is_prime(91));
  CHECK(is_squarefree(30));
  CHECK_FALSE(is_squarefree(75));
  const auto f = factor(-360);
  REQUIRE(f.size() == 3);
  CHECK(f[0] == std::pair<std::int64_t, int>{2, 3});
  CHECK(f[1] == std::pair<std::int64_t, int>{3, 2});
  CHECK(f[2] == std::pair<std::int64_t, int>{5, 1});
  CHECK(mod(-7, 5) == 3);
}

TEST_CASE("modular inverse and square roots") {
  for (const std::int64_t p : {3, 5, 7, 13, 23, 101}) {
    for (std::int64_t a = 1; a < p; ++a) {
      CHECK(mod(a * inverse_mod(a, p), p) == 1);
      if (legendre_by_euler(a, p) == 1) {
        const std::int64_t r = sqrt_mod(a, p);
        CHECK(mod(r * r - a, p) == 0);
        CHECK(r <= p - r);
      }
    }
  }
  CHECK_THROWS(inverse_mod(7, 7));
}

TEST_CASE("kronecker symbol") {
  for (const std::int64_t p : {3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47}) {
    for (std::int64_t a = -60; a <= 60; ++a) CHECK(kronecker(a, p) == legendre_by_euler(a, p));
  }
  // (a/2) depends on a mod 8.
  CHECK(kronecker(1, 2) == 1);
  CHECK(kronecker(7, 2) == 1);
  CHECK(kronecker(3, 2) == -1);
  CHECK(kronecker(5, 2) == -1);
  CHECK(kronecker(4, 2) == 0);
  CHECK(kronecker(-5, -1) == -1);
  CHECK(kronecker(5, -1) == 1);
  // Multiplicative in the bottom argument.
  for (std::int64_t a = -20; a <= 20; ++a)
    for (std::int64_t m = 1; m <= 15; ++m)
      for (std::int64_t n = 1; n <= 15; ++n) CHECK(kronecker(a, m * n) == kronecker(a, m) * kronecker(a, n));
}

TEST_CASE("fundamental discriminants") {
  std::vector<std::int64_t> found;
  for (std::int64_t d = -30; d <= 30; ++d)
    if (is_fundamental(d)) found.push_back(d);
  const std::vector<std::int64_t> expected{-24, -23, -20, -19, -15, -11, -8, -7, -4, -3,
                                           1,   5,   8,   12,  13,  17,  21,  24, 28, 29};
  CHECK(found == expected);
  CHECK(fundamental_part(12) == 12);
  CHECK(fundamental_part(18) == 8);
  CHECK(fundamental_part(-27) == -3);
  CHECK(fundamental_part(45) == 5);
  CHECK_THROWS(Discriminant(9));
  CHECK(Discriminant(-20).abs() == 20);
}

TEST_CASE("types of discriminants") {
  const std::vector<std::int64_t> p35{3, 5};
  CHECK(type_of(Discriminant(-20), p35).to_string() == "(+,0)");
  CHECK(type_of(Discriminant(-4), p35).to_string() == "(-,+)");
  CHECK(type_of(Discriminant(-15), p35).to_string() == "(0,0)");
  const auto t = TypePattern::parse("(+,-)", p35);
  CHECK(t.to_string() == "(+,-)");
  CHECK(t.signs() == std::vector<int>{1, -1});
  CHECK_THROWS(TypePattern::parse("(+)", p35));
  CHECK_THROWS(TypePattern::parse("(+,-,0)", p35));
  CHECK_THROWS(TypePattern::parse("(x,-)", p35));
}

TEST_CASE("rank-1 decomposition modulo primes of the level") {
  struct Case {
    Gram3 gram;
    std::int64_t p;
  };
  const Gram3 q27{{{8, 0, -4}, {0, 54, 0}, {-4, 0, 56}}};
  const Gram3 q15{{{8, 0, -4}, {0, 30, 0}, {-4, 0, 32}}};
  for (const auto& [g, p] : {Case{q27, 3}, Case{q15, 3}, Case{q15, 5}}) {
    const auto r = rank1_decompose(g, p);
    int first = 0;
    while (r.linear[first] == 0) ++first;
    CHECK(r.linear[first] == 1);
    const auto forced = rank1_decompose(g, p, mod(r.unit * 4, p));
    for (std::int64_t x = 0; x < p; ++x)
      for (std::int64_t y = 0; y < p; ++y)
        for (std::int64_t z = 0; z < p; ++z) {
          const Vec3 v{x, y, z};
          std::int64_t q = 0;
          for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j) q += v[i] * g[i][j] * v[j];
          q /= 2;
          const std::int64_t l = r.eval(v);
          CHECK(mod(q - r.unit * l * l, p) == 0);
          const std::int64_t lf = forced.eval(v);
          CHECK(mod(q - forced.unit * lf * lf, p) == 0);
        }
  }
}
