// Acceptance suite: one PASS/FAIL line per criterion, details on failure.
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "printed_rules.hpp"
#include "support.hpp"
#include "twistlift/fixture.hpp"
#include "twistlift/quaternion.hpp"
#include "twistlift/waldspurger.hpp"

using namespace twistlift;
using namespace twistlift::testing;

namespace {

constexpr std::int64_t kDmax = 200;

struct Report {
  std::vector<std::string> failures;
  std::size_t checks = 0;

  void expect(bool ok, const std::string& what) {
    ++checks;
    if (!ok) failures.push_back(what);
  }
};

struct Level {
  std::string file;
  Fixture fx;
  LSeriesOracle oracle;
  std::map<std::string, FamilyAnalysis> families;
};

struct TableSpec {
  std::string level;
  std::string family;
  std::size_t rows;
};

// Every printed table block with its row count.
const std::vector<TableSpec> kTables{
    {"27a", "imaginary", 23}, {"27a", "real", 21}, {"15a", "g1", 10},  {"15a", "g17", 22}, {"15a", "g-19", 14},
    {"15a", "g-23", 15},      {"75a", "g1", 10},   {"75a", "g13", 10}, {"75a", "g-19", 14}, {"75a", "g-7", 16},
};

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(12);
  os << x;
  return os.str();
}

std::vector<Level> load_levels() {
  std::vector<Level> out;
  for (const std::string name : {"27a", "15a", "75a"}) {
    Fixture fx = load(name + ".fx");
    LSeriesOracle oracle(fx.curve, LSeriesOracle::terms_for_range(fx.curve, kDmax, 2.0));
    Level level{name, fx, std::move(oracle), {}};
    const auto forms = level.fx.forms();
    for (const auto& f : level.fx.families) {
      level.families.emplace(f.name, analyze_family(level.oracle, f, forms, level.fx.eigenvector, kDmax));
    }
    out.push_back(std::move(level));
  }
  return out;
}

const Level& level_of(const std::vector<Level>& levels, const std::string& name) {
  for (const auto& l : levels)
    if (l.file == name) return l;
  throw std::logic_error("unknown level " + name);
}

struct Comparison {
  std::vector<ExpectedRow> expected;
  std::map<std::int64_t, TableRow> generated;
};

Comparison compare(const Level& level, const TableSpec& spec) {
  const auto& a = level.families.at(spec.family);
  Comparison c;
  c.expected = read_expected_table(table_path(spec.level + "-" + spec.family + ".tsv"));
  for (const auto& row : make_table(a.family, a.g, level.oracle, a.fit.k, kDmax)) c.generated.emplace(row.d, row);
  return c;
}

Report criterion_coefficients(const std::vector<Level>& levels) {
  Report r;
  for (const auto& spec : kTables) {
    const auto c = compare(level_of(levels, spec.level), spec);
    const std::string tag = spec.level + "/" + spec.family;
    r.expect(c.expected.size() == spec.rows, tag + ": expected file has " + std::to_string(c.expected.size()) +
                                                 " rows, want " + std::to_string(spec.rows));
    std::set<std::int64_t> printed;
    for (const auto& e : c.expected) {
      printed.insert(e.d);
      const auto it = c.generated.find(e.d);
      r.expect(it != c.generated.end(), tag + ": D = " + std::to_string(e.d) + " not generated");
      if (it == c.generated.end()) continue;
      r.expect(it->second.c == e.c, tag + ": c(" + std::to_string(e.d) + ") = " + std::to_string(it->second.c) +
                                        ", printed " + std::to_string(e.c));
    }
    for (const auto& [d, row] : c.generated)
      r.expect(printed.count(d) == 1, tag + ": generated D = " + std::to_string(d) + " is not printed");
  }
  return r;
}

Report criterion_values(const std::vector<Level>& levels) {
  Report r;
  for (const auto& spec : kTables) {
    const auto c = compare(level_of(levels, spec.level), spec);
    for (const auto& e : c.expected) {
      const auto it = c.generated.find(e.d);
      if (it == c.generated.end()) {
        r.expect(false, spec.level + "/" + spec.family + ": D = " + std::to_string(e.d) + " missing");
        continue;
      }
      const double diff = std::abs(it->second.oracle - e.value);
      r.expect(diff <= kTableTolerance, spec.level + "/" + spec.family + ": L(" + std::to_string(e.d) + ") = " +
                                            fmt(it->second.oracle) + ", printed " + fmt(e.value));
    }
  }
  return r;
}

Report criterion_constants(const std::vector<Level>& levels) {
  Report r;
  for (const auto& level : levels) {
    for (const auto& [name, a] : level.families) {
      const std::string tag = level.file + "/" + name;
      const double printed = std::stod(a.family.k_printed);
      const double rel = std::abs(a.fit.k - printed) / printed;
      r.expect(rel <= kRelativeTolerance, tag + ": k = " + fmt(a.fit.k) + ", printed " + a.family.k_printed);
      if (a.family.k_identity) {
        const auto id = verify_identity(*a.family.k_identity, level.oracle, a.fit.k);
        r.expect(id.ok, tag + ": identity k = " + id.text + " off by " + fmt(id.relative_error));
      }
    }
  }
  // Six families carry a printed identity.
  std::size_t identities = 0;
  for (const auto& level : levels)
    for (const auto& [name, a] : level.families) identities += a.family.k_identity.has_value();
  r.expect(identities == 6, "expected 6 identity checks, found " + std::to_string(identities));
  return r;
}

Report criterion_constancy(const std::vector<Level>& levels) {
  Report r;
  for (const auto& level : levels) {
    for (const auto& [name, a] : level.families) {
      const auto rows = make_table(a.family, a.g, level.oracle, a.fit.k, kDmax);
      double lo = 1e300, hi = -1e300;
      std::size_t n = 0;
      for (const auto& row : rows) {
        if (row.c == 0) continue;
        const double ratio = std::sqrt(std::abs(double(row.d))) * row.oracle / (row.star * double(row.c * row.c));
        lo = std::min(lo, ratio);
        hi = std::max(hi, ratio);
        ++n;
      }
      const double spread = (hi - lo) / std::abs(a.fit.k);
      r.expect(n >= 3 && spread < kRelativeTolerance,
               level.file + "/" + name + ": ratio spread " + fmt(spread) + " over " + std::to_string(n) + " rows");
    }
  }
  return r;
}

Report criterion_quaternion(const std::vector<Level>& levels) {
  Report r;
  for (const std::string name : {"27a", "15a"}) {
    const auto& level = level_of(levels, name);
    const auto& fx = level.fx;
    r.expect(fx.quaternion.has_value(), name + ": no quaternion data");
    if (!fx.quaternion) continue;
    std::size_t derived = 0;
    for (const auto& check : verify_fixture(fx)) {
      r.expect(check.ok, name + ": " + check.name + " (" + check.detail + ")");
      derived += check.name.rfind("form of class", 0) == 0;
    }
    r.expect(derived == fx.classes.size(), name + ": not every class form was derived from an ideal");
    const auto ideals = class_ideals(fx);
    const auto b2 = brandt_matrix(ideals, 2, fx.curve.conductor);
    const auto cusp = eigen_check(b2, fx.eigenvector);
    const Rational a2 = ap(fx.curve, 2);
    r.expect((cusp.column && *cusp.column == a2) || (cusp.row && *cusp.row == a2),
             name + ": B(2) has no eigenvalue a_2 = " + to_string(a2) + " on the eigenvector");
    const std::vector<std::int64_t> ones(fx.classes.size(), 1);
    const auto eis = eigen_check(b2, ones);
    r.expect((eis.column && *eis.column == 3) || (eis.row && *eis.row == 3), name + ": Eisenstein eigenvalue is not 3");
  }
  r.expect(level_of(levels, "27a").fx.height == 3 && level_of(levels, "15a").fx.height == 4, "fixture heights");
  return r;
}

Report criterion_weights() {
  Report r;
  const std::int64_t unit = rank1_decompose(kQ1.gram(), 3).unit;
  r.expect(global_sign(WeightFunction::first_kind(kQ1, 7), printed_omega7_1, 7) != 0, "omega_7 on Q1");
  r.expect(global_sign(WeightFunction::first_kind(kQ2, 7), printed_omega7_2, 7) != 0, "omega_7 on Q2");
  r.expect(global_sign(WeightFunction::second_kind(kQ1, 3, unit), printed_omega3_1, 3) != 0, "omega_3 on Q1");
  r.expect(global_sign(WeightFunction::second_kind(kQ2, 3, unit), printed_omega3_2, 3) != 0, "omega_3 on Q2");
  return r;
}

Report criterion_structure(const std::vector<Level>& levels) {
  Report r;
  const auto& l27 = level_of(levels, "27a");
  const auto& real = l27.families.at("real");
  const auto forms = l27.fx.forms();
  const auto thetas = class_thetas(real.family, forms, real.aux_prime, 2000);
  const auto eis = eisenstein_combination(thetas, real.calibration.signs, unit_weights(l27.fx));
  bool any = false;
  for (std::size_t n = 1; n < eis.size(); ++n) {
    if (eis[n] == 0) continue;
    any = true;
    const auto s = isqrt(static_cast<std::int64_t>(n));
    r.expect(s * s == static_cast<std::int64_t>(n), "Eisenstein coefficient at non-square " + std::to_string(n));
  }
  r.expect(any, "Eisenstein combination vanishes identically");

  for (const auto& e : read_expected_table(table_path("27a-real.tsv"))) {
    if (e.d == 1) continue;
    r.expect(e.c % 3 == 0, "printed c(" + std::to_string(e.d) + ") not divisible by 3");
  }
  for (const auto& row : make_table(real.family, real.g, l27.oracle, real.fit.k, kDmax)) {
    if (row.d == 1) {
      r.expect(row.c % 3 != 0, "c(1) unexpectedly divisible by 3");
      continue;
    }
    r.expect(row.c % 3 == 0, "c(" + std::to_string(row.d) + ") not divisible by 3");
  }

  std::set<TernaryForm> distinct;
  for (const auto& level : levels)
    for (const auto& c : level.fx.classes) distinct.insert(c.form);
  for (const std::int64_t l : {7, 13, 17, 19, 23}) {
    for (const auto& q : distinct) {
      if (q.discriminant() % l == 0) continue;
      const auto w = WeightFunction::first_kind(q, l);
      bool ok = true;
      for (std::int64_t x = 0; x < l && ok; ++x)
        for (std::int64_t y = 0; y < l && ok; ++y)
          for (std::int64_t z = 0; z < l && ok; ++z) {
            const Vec3 v{x, y, z};
            const int value = w(v);
            const bool cone = mod(q(v), l) == 0 && !(x == 0 && y == 0 && z == 0);
            ok = (value != 0) == cone;
            for (std::int64_t lambda = 1; lambda < l && ok; ++lambda)
              ok = w({lambda * x, lambda * y, lambda * z}) == kronecker(lambda, l) * value;
          }
      r.expect(ok, "first-kind invariants fail for l = " + std::to_string(l) + " on " + q.to_string());
    }
  }
  return r;
}

Report criterion_oracle(const std::vector<Level>& levels) {
  Report r;
  for (const auto& level : levels) {
    for (const auto& [name, a] : level.families) {
      for (const auto d : admissible_discriminants(a.family, level.fx.curve.conductor, kDmax)) {
        const auto once = level.oracle.central_value(d, 1.0).value;
        const auto twice = level.oracle.central_value(d, 2.0).value;
        r.expect(std::abs(static_cast<double>(once - twice)) <= 1e-10,
                 level.file + ": L(" + std::to_string(d) + ") moves by " + fmt(double(once - twice)));
      }
    }
  }
  const auto& l27 = level_of(levels, "27a");
  // Partners reach |3D|, beyond the shared oracle's range.
  const LSeriesOracle wide(l27.fx.curve, LSeriesOracle::terms_for_range(l27.fx.curve, 3 * kDmax, 1.0));
  std::size_t pairs = 0;
  for (std::int64_t n = 1; n <= kDmax; ++n) {
    for (const std::int64_t d : {-n, n}) {
      if (!is_fundamental(d) || d % 3 == 0) continue;
      const std::int64_t partner = fundamental_part(-3 * d);
      const auto lhs = wide.central_value(d).value;
      const auto rhs = wide.central_value(partner).value;
      ++pairs;
      r.expect(std::abs(static_cast<double>(lhs - rhs)) <= 1e-8,
               "27A self-twist: L(" + std::to_string(d) + ") vs L(" + std::to_string(partner) + ")");
    }
  }
  r.expect(pairs > 50, "too few self-twist pairs: " + std::to_string(pairs));
  return r;
}

}  // namespace

int main() {
  std::vector<Level> levels;
  try {
    levels = load_levels();
  } catch (const std::exception& e) {
    std::cout << "FAIL setup: " << e.what() << "\n";
    return 1;
  }

  struct Criterion {
    int id;
    const char* name;
    std::function<Report()> run;
  };
  const std::vector<Criterion> criteria{
      {1, "table coefficients", [&] { return criterion_coefficients(levels); }},
      {2, "table central values", [&] { return criterion_values(levels); }},
      {3, "constants and identities", [&] { return criterion_constants(levels); }},
      {4, "ratio constancy", [&] { return criterion_constancy(levels); }},
      {5, "quaternion side", [&] { return criterion_quaternion(levels); }},
      {6, "printed weight rules", [] { return criterion_weights(); }},
      {7, "structural properties", [&] { return criterion_structure(levels); }},
      {8, "oracle robustness", [&] { return criterion_oracle(levels); }},
  };

  bool all = true;
  for (const auto& c : criteria) {
    Report r;
    try {
      r = c.run();
    } catch (const std::exception& e) {
      r.failures.push_back(std::string("exception: ") + e.what());
    }
    const bool ok = r.failures.empty();
    all = all && ok;
    std::cout << (ok ? "PASS" : "FAIL") << " criterion " << c.id << ": " << c.name << " (" << r.checks
              << " checks)\n";
    for (std::size_t i = 0; i < r.failures.size() && i < 20; ++i) std::cout << "    " << r.failures[i] << "\n";
  }
  return all ? 0 : 1;
}
