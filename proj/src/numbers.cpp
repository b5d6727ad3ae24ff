#include "twistlift/numbers.hpp"

#include <cstdlib>
#include <sstream>

namespace twistlift {

std::int64_t gcd(std::int64_t a, std::int64_t b) {
  a = std::llabs(a);
  b = std::llabs(b);
  while (b != 0) {
    const std::int64_t t = a % b;
    a = b;
    b = t;
  }
  return a;
}

std::int64_t isqrt(std::int64_t n) {
  if (n < 0) throw std::domain_error("isqrt of negative number");
  std::int64_t r = static_cast<std::int64_t>(__builtin_sqrtl(static_cast<long double>(n)));
  while (r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r;
}

bool is_prime(std::int64_t n) {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (std::int64_t d = 3; d * d <= n; d += 2) {
    if (n % d == 0) return false;
  }
  return true;
}

std::vector<std::pair<std::int64_t, int>> factor(std::int64_t n) {
  std::vector<std::pair<std::int64_t, int>> out;
  n = std::llabs(n);
  for (std::int64_t p = 2; p * p <= n; ++p) {
    int e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    if (e > 0) out.emplace_back(p, e);
  }
  if (n > 1) out.emplace_back(n, 1);
  return out;
}

bool is_squarefree(std::int64_t n) {
  if (n == 0) return false;
  for (const auto& [p, e] : factor(n)) {
    if (e > 1) return false;
  }
  return true;
}

std::int64_t inverse_mod(std::int64_t a, std::int64_t p) {
  std::int64_t r0 = mod(a, p), r1 = p, s0 = 1, s1 = 0;
  while (r1 != 0) {
    const std::int64_t q = r0 / r1;
    std::int64_t t = r0 - q * r1;
    r0 = r1;
    r1 = t;
    t = s0 - q * s1;
    s0 = s1;
    s1 = t;
  }
  if (r0 != 1) throw std::domain_error("inverse_mod: not invertible");
  return mod(s0, p);
}

std::int64_t sqrt_mod(std::int64_t a, std::int64_t p) {
  a = mod(a, p);
  for (std::int64_t x = 0; x <= p / 2; ++x) {
    if (x * x % p == a) return x;
  }
  throw std::domain_error("sqrt_mod: not a square");
}

int kronecker(std::int64_t a, std::int64_t n) {
  if (n == 0) return (a == 1 || a == -1) ? 1 : 0;
  int result = 1;
  if (n < 0) {
    n = -n;
    if (a < 0) result = -result;
  }
  int twos = 0;
  while ((n & 1) == 0) {
    n >>= 1;
    ++twos;
  }
  if (twos > 0) {
    if ((a & 1) == 0) return 0;
    const std::int64_t r = mod(a, 8);
    if ((twos & 1) && (r == 3 || r == 5)) result = -result;
  }
  // Jacobi symbol for odd positive n.
  std::int64_t x = mod(a, n);
  std::int64_t m = n;
  while (x != 0) {
    while ((x & 1) == 0) {
      x >>= 1;
      const std::int64_t r = m % 8;
      if (r == 3 || r == 5) result = -result;
    }
    std::swap(x, m);
    if (x % 4 == 3 && m % 4 == 3) result = -result;
    x %= m;
  }
  return m == 1 ? result : 0;
}

bool is_fundamental(std::int64_t d) {
  if (d == 1) return true;
  if (d == 0) return false;
  const std::int64_t r = mod(d, 4);
  if (r == 1) return is_squarefree(d);
  if (r != 0) return false;
  const std::int64_t m = d / 4;
  const std::int64_t rm = mod(m, 4);
  return (rm == 2 || rm == 3) && is_squarefree(m);
}

Discriminant::Discriminant(std::int64_t value) : value_(value) {
  if (!is_fundamental(value)) {
    throw std::invalid_argument("not a fundamental discriminant: " + std::to_string(value));
  }
}

std::int64_t fundamental_part(std::int64_t n) {
  if (n == 0) throw std::invalid_argument("fundamental_part of 0");
  std::int64_t core = n < 0 ? -1 : 1;
  for (const auto& [p, e] : factor(n)) {
    if (e % 2 == 1) core *= p;
  }
  return mod(core, 4) == 1 ? core : 4 * core;
}

std::string TypePattern::to_string() const {
  std::string s = "(";
  for (std::size_t i = 0; i < entries.size(); ++i) {
    if (i > 0) s += ",";
    const int e = entries[i].second;
    s += e > 0 ? "+" : (e < 0 ? "-" : "0");
  }
  return s + ")";
}

std::vector<int> TypePattern::signs() const {
  std::vector<int> out;
  for (const auto& [p, s] : entries) out.push_back(s);
  return out;
}

TypePattern TypePattern::parse(const std::string& text, std::span<const std::int64_t> primes) {
  TypePattern t;
  std::size_t k = 0;
  for (char ch : text) {
    int s;
    if (ch == '+') {
      s = 1;
    } else if (ch == '-') {
      s = -1;
    } else if (ch == '0') {
      s = 0;
    } else if (ch == '(' || ch == ')' || ch == ',' || ch == ' ') {
      continue;
    } else {
      throw std::invalid_argument("bad type pattern: " + text);
    }
    if (k >= primes.size()) throw std::invalid_argument("type pattern too long: " + text);
    t.entries.emplace_back(primes[k++], s);
  }
  if (k != primes.size()) throw std::invalid_argument("type pattern too short: " + text);
  return t;
}

TypePattern type_of(const Discriminant& d, std::span<const std::int64_t> primes) {
  TypePattern t;
  for (const std::int64_t p : primes) {
    if (p % 2 == 0) throw std::invalid_argument("type_of: primes must be odd");
    t.entries.emplace_back(p, kronecker(d.value(), p));
  }
  return t;
}

std::int64_t Rank1Decomposition::eval(const Vec3& v) const {
  std::int64_t s = 0;
  for (int i = 0; i < 3; ++i) s += linear[i] * mod(v[i], prime);
  return mod(s, prime);
}

Rank1Decomposition rank1_decompose(const Gram3& gram, std::int64_t p) {
  if (p <= 2 || !is_prime(p)) throw std::invalid_argument("rank1_decompose: p must be an odd prime");
  Gram3 g{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) g[i][j] = mod(gram[i][j], p);

  int pivot = -1;
  for (int i = 0; i < 3 && pivot < 0; ++i) {
    if (g[i][i] != 0) pivot = i;
  }
  if (pivot < 0) throw std::domain_error("rank1_decompose: form has rank != 1 mod p");

  // G = c * l l^T with l[pivot] = 1, so l is row `pivot` divided by c.
  const std::int64_t c = g[pivot][pivot];
  const std::int64_t cinv = inverse_mod(c, p);
  Vec3 l{};
  for (int j = 0; j < 3; ++j) l[j] = g[pivot][j] * cinv % p;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      if (g[i][j] != c * l[i] % p * l[j] % p) {
        throw std::domain_error("rank1_decompose: form has rank != 1 mod p");
      }
    }
  int first = 0;
  while (l[first] == 0) ++first;
  const std::int64_t s = inverse_mod(l[first], p);
  for (auto& x : l) x = x * s % p;
  // Q = (c/2) l_old^2 and l_old = l / s.
  const std::int64_t unit = c * inverse_mod(2, p) % p * inverse_mod(s * s % p, p) % p;
  return {p, l, unit};
}

Rank1Decomposition rank1_decompose(const Gram3& gram, std::int64_t p, std::int64_t unit) {
  Rank1Decomposition r = rank1_decompose(gram, p);
  unit = mod(unit, p);
  // u l^2 = unit (l/t)^2 requires t^2 = unit / u.
  const std::int64_t ratio = unit * inverse_mod(r.unit, p) % p;
  if (kronecker(ratio, p) != 1) {
    throw std::domain_error("rank1_decompose: requested unit is in the wrong square class");
  }
  const std::int64_t tinv = inverse_mod(sqrt_mod(ratio, p), p);
  for (auto& x : r.linear) x = x * tinv % p;
  int first = 0;
  while (r.linear[first] == 0) ++first;
  if (r.linear[first] > (p - 1) / 2) {
    for (auto& x : r.linear) x = mod(-x, p);
  }
  r.unit = unit;
  return r;
}

}  // namespace twistlift
