#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <iomanip>
#include <iostream>
#include <string>

#include "twistlift/fixture.hpp"
#include "twistlift/quaternion.hpp"
#include "twistlift/waldspurger.hpp"

using namespace twistlift;

namespace {

constexpr int kOk = 0;
constexpr int kMismatch = 1;
constexpr int kUsage = 2;

// Theta bound used for calibration regardless of the requested output range.
constexpr std::int64_t kMinimumBound = 200;

LSeriesOracle make_oracle(const EllipticCurve& curve, std::int64_t dmax) {
  return LSeriesOracle(curve, LSeriesOracle::terms_for_range(curve, std::max<std::int64_t>(dmax, 4), 1.0));
}

FamilyAnalysis analyze(const Fixture& fx, const TwistFamily& family, const LSeriesOracle& oracle,
                       std::int64_t bound) {
  const auto forms = fx.forms();
  return analyze_family(oracle, family, forms, fx.eigenvector, std::max(bound, kMinimumBound));
}

int verify_fixture_cmd(const std::string& path) {
  const Fixture fx = parse_fixture_file(path);
  bool ok = true;
  for (const auto& check : verify_fixture(fx)) {
    std::cout << (check.ok ? "ok    " : "FAIL  ") << check.name << ": " << check.detail << "\n";
    ok = ok && check.ok;
  }
  return ok ? kOk : kMismatch;
}

int theta_cmd(const std::string& path, const std::string& name, std::int64_t bound) {
  const Fixture fx = parse_fixture_file(path);
  const auto& family = fx.family(name);
  const auto oracle = make_oracle(fx.curve, std::max(bound, kMinimumBound));
  const auto a = analyze(fx, family, oracle, bound);
  std::cout << a.g.to_string(bound) << "\n";
  return kOk;
}

int table_cmd(const std::string& path, const std::string& name, std::int64_t dmax, const std::string& format,
              bool oracle_only, bool predict_only) {
  const Fixture fx = parse_fixture_file(path);
  const auto& family = fx.family(name);
  const auto oracle = make_oracle(fx.curve, std::max(dmax, kMinimumBound));
  const auto a = analyze(fx, family, oracle, dmax);
  const auto rows = make_table(family, a.g, oracle, a.fit.k, dmax);
  const TableColumns cols =
      oracle_only ? TableColumns::oracle_only : (predict_only ? TableColumns::predict_only : TableColumns::all);
  std::cout << (format == "csv" ? format_csv(rows, cols) : format_text(rows, cols));
  return kOk;
}

int brandt_cmd(const std::string& path, std::int64_t n) {
  const Fixture fx = parse_fixture_file(path);
  const auto ideals = class_ideals(fx);
  const auto b = brandt_matrix(ideals, n, fx.curve.conductor);
  std::cout << "B(" << n << ") =\n";
  for (const auto& row : b) {
    for (std::size_t j = 0; j < row.size(); ++j) std::cout << (j ? " " : "  ") << std::setw(4) << to_string(row[j]);
    std::cout << "\n";
  }
  auto show = [](const char* label, const std::optional<Rational>& x) {
    std::cout << "  " << label << ": " << (x ? to_string(*x) : std::string("not an eigenvector")) << "\n";
  };
  const auto cusp = eigen_check(b, fx.eigenvector);
  std::cout << "eigenvector";
  for (const auto v : fx.eigenvector) std::cout << " " << v;
  std::cout << "\n";
  show("column (B v)", cusp.column);
  show("row (v^T B)", cusp.row);
  const std::vector<std::int64_t> ones(fx.classes.size(), 1);
  const auto eis = eigen_check(b, ones);
  std::cout << "all-ones vector\n";
  show("column (B v)", eis.column);
  show("row (v^T B)", eis.row);
  return kOk;
}

int lvalue_cmd(const std::string& path, std::int64_t d) {
  const Fixture fx = parse_fixture_file(path);
  const auto oracle = make_oracle(fx.curve, d < 0 ? -d : d);
  const auto v = oracle.central_value(d);
  std::cout << std::setprecision(18) << v.value << "\n";
  std::cerr << "conductor " << v.conductor << ", terms " << v.terms << (v.trivial_zero ? ", odd sign" : "") << "\n";
  return kOk;
}

int calibrate_cmd(const std::string& path, const std::string& name) {
  const Fixture fx = parse_fixture_file(path);
  const auto& family = fx.family(name);
  const auto oracle = make_oracle(fx.curve, kMinimumBound);
  const auto a = analyze(fx, family, oracle, kMinimumBound);
  bool ok = true;
  std::cout << "family " << family.name << "\n";
  if (family.has_first_kind()) std::cout << "auxiliary prime " << a.aux_prime << "\n";
  std::cout << "signs";
  for (const int s : a.calibration.signs) std::cout << " " << (s > 0 ? "+1" : "-1");
  std::cout << "\nscale " << to_string(a.g.scale) << "\n";
  std::cout << std::setprecision(15);
  std::cout << "k fitted " << a.fit.k << " (spread " << std::setprecision(3) << a.fit.spread << " over " << a.fit.count
            << " rows)\n"
            << std::setprecision(15);
  const double printed = std::stod(family.k_printed);
  const double rel = std::abs(a.fit.k - printed) / printed;
  const bool k_ok = rel <= kRelativeTolerance && a.fit.spread <= kRelativeTolerance;
  std::cout << "k printed " << family.k_printed << " (relative error " << std::setprecision(3) << rel << ") "
            << (k_ok ? "ok" : "MISMATCH") << "\n";
  ok = ok && k_ok;
  if (family.k_identity) {
    const auto r = verify_identity(*family.k_identity, oracle, a.fit.k);
    std::cout << std::setprecision(15) << "identity k = " << r.text << " = " << r.value << " (relative error "
              << std::setprecision(3) << r.relative_error << ") " << (r.ok ? "ok" : "MISMATCH") << "\n";
    ok = ok && r.ok;
  }
  return ok ? kOk : kMismatch;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Central values of quadratic twists via weight 3/2 theta lifts"};
  app.require_subcommand(1);

  std::string file, family, format = "text";
  std::int64_t bound = 100, dmax = 200, n = 2, d = 1;
  bool oracle_only = false, predict_only = false;

  auto* verify = app.add_subcommand("verify-fixture", "Recompute forms, unit weights and the height identity");
  verify->add_option("file", file, "Fixture file")->required()->check(CLI::ExistingFile);

  auto* theta = app.add_subcommand("theta", "Print the q-expansion of a family's eigenform");
  theta->add_option("file", file, "Fixture file")->required()->check(CLI::ExistingFile);
  theta->add_option("--family", family, "Family name")->required();
  theta->add_option("--bound", bound, "Largest exponent printed")->check(CLI::PositiveNumber);

  auto* table = app.add_subcommand("table", "Coefficients, predicted and oracle central values");
  table->add_option("file", file, "Fixture file")->required()->check(CLI::ExistingFile);
  table->add_option("--family", family, "Family name")->required();
  table->add_option("--dmax", dmax, "Largest |D|")->check(CLI::PositiveNumber);
  table->add_option("--format", format, "Output format")->check(CLI::IsMember({"text", "csv"}));
  auto* oo = table->add_flag("--oracle-only", oracle_only, "Omit predicted values and ratios");
  table->add_flag("--predict-only", predict_only, "Omit oracle values and ratios")->excludes(oo);

  auto* brandt = app.add_subcommand("brandt", "Brandt matrix B(n) and eigenvector checks");
  brandt->add_option("file", file, "Fixture file")->required()->check(CLI::ExistingFile);
  brandt->add_option("--n", n, "Index n, coprime to the level")->check(CLI::PositiveNumber);

  auto* lvalue = app.add_subcommand("lvalue", "Central value L(f, D, 1) from the series oracle");
  lvalue->add_option("file", file, "Fixture file")->required()->check(CLI::ExistingFile);
  lvalue->add_option("-D", d, "Fundamental discriminant")->required();

  auto* calibrate = app.add_subcommand("calibrate", "Signs, fitted constant and identity check");
  calibrate->add_option("file", file, "Fixture file")->required()->check(CLI::ExistingFile);
  calibrate->add_option("--family", family, "Family name")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*verify) return verify_fixture_cmd(file);
    if (*theta) return theta_cmd(file, family, bound);
    if (*table) return table_cmd(file, family, dmax, format, oracle_only, predict_only);
    if (*brandt) return brandt_cmd(file, n);
    if (*lvalue) return lvalue_cmd(file, d);
    if (*calibrate) return calibrate_cmd(file, family);
  } catch (const FixtureError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::out_of_range& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kMismatch;
  }
  return kUsage;
}
