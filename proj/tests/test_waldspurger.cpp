#include <doctest.h>

#include <cmath>
#include <sstream>

#include "support.hpp"
#include "twistlift/waldspurger.hpp"

using namespace twistlift;
using twistlift::testing::load;

TEST_CASE("identity parsing") {
  auto t = parse_identity("2*L(-4)");
  REQUIRE(t.size() == 1);
  CHECK(t[0].coefficient == 2);
  CHECK(t[0].d == -4);
  t = parse_identity("1/4*L(1)");
  REQUIRE(t.size() == 1);
  CHECK(t[0].coefficient == make_rational(1, 4));
  t = parse_identity("L(1) - 3*L(-3)");
  REQUIRE(t.size() == 2);
  CHECK(t[1].coefficient == -3);
  CHECK(t[1].d == -3);
  CHECK_THROWS(parse_identity(""));
  CHECK_THROWS(parse_identity("2L(-4)"));
  CHECK_THROWS(parse_identity("L(1) L(5)"));
}

TEST_CASE("expected tables") {
  std::istringstream in("# comment\n-4\t1\t1.529954\n\n-7 -1 1.156537  # trailing\n");
  const auto rows = read_expected_table(in);
  REQUIRE(rows.size() == 2);
  CHECK(rows[1].d == -7);
  CHECK(rows[1].c == -1);
  CHECK(rows[1].value == doctest::Approx(1.156537));
  std::istringstream bad("-4 1\n");
  CHECK_THROWS(read_expected_table(bad));
}

TEST_CASE("level 27 imaginary family end to end") {
  const Fixture fx = load("27a.fx");
  const auto& family = fx.family("imaginary");
  const LSeriesOracle oracle(fx.curve);
  const auto forms = fx.forms();
  const auto a = analyze_family(oracle, family, forms, fx.eigenvector, 200);
  CHECK(a.fit.k == doctest::Approx(3.059908074114385749826388345).epsilon(1e-9));
  CHECK(a.fit.spread < 1e-9);
  const auto id = verify_identity(*family.k_identity, oracle, a.fit.k);
  CHECK(id.ok);
  CHECK(predict(family, a.g, -40, a.fit.k, fx.level_primes()) ==
        doctest::Approx(a.fit.k * 4 / std::sqrt(40.0)));
  CHECK_THROWS(predict(family, a.g, -11, a.fit.k, fx.level_primes()));

  const auto rows = make_table(family, a.g, oracle, a.fit.k, 200);
  CHECK(rows.size() == 23);
  CHECK_THROWS_AS(make_table(family, a.g, oracle, a.fit.k, 500), std::out_of_range);

  // Text and CSV carry the same numbers.
  std::istringstream text(format_text(rows));
  std::istringstream csv(format_csv(rows));
  std::string tline, cline;
  std::getline(text, tline);
  std::getline(csv, cline);
  while (std::getline(text, tline) && std::getline(csv, cline)) {
    for (auto& ch : cline)
      if (ch == ',') ch = ' ';
    std::istringstream ts(tline), cs(cline);
    std::vector<std::string> tw, cw;
    for (std::string w; ts >> w;) tw.push_back(w);
    for (std::string w; cs >> w;) cw.push_back(w);
    CHECK(tw == cw);
  }
  const auto oracle_only = format_csv(rows, TableColumns::oracle_only);
  CHECK(oracle_only.substr(0, oracle_only.find('\n')) == "D,c,star,oracle");
  const auto predict_only = format_text(rows, TableColumns::predict_only);
  CHECK(predict_only.find("oracle") == std::string::npos);

  std::vector<std::int64_t> two{-4, -7};
  CHECK_THROWS_AS(fit_k(family, a.g, oracle, two), std::domain_error);
}
