#include "twistlift/waldspurger.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <regex>
#include <sstream>
#include <stdexcept>

namespace twistlift {

namespace {

std::int64_t integral(const Rational& c, std::int64_t d) {
  if (c.get_den() != 1) {
    throw std::domain_error("coefficient at D = " + std::to_string(d) + " is not integral: " + to_string(c));
  }
  return to_int64(c);
}

}  // namespace

double predict(const TwistFamily& family, const Eigenform& g, std::int64_t d, double k,
               std::span<const std::int64_t> level_primes) {
  const auto star = family.star_for(d, level_primes);
  if (!star) throw std::invalid_argument("D = " + std::to_string(d) + " is not admissible for " + family.name);
  const double c = coefficient_at(g, family, d, level_primes).get_d();
  return *star * k * c * c / std::sqrt(static_cast<double>(d < 0 ? -d : d));
}

KFit fit_k(const TwistFamily& family, const Eigenform& g, const LSeriesOracle& oracle,
           std::span<const std::int64_t> probes) {
  const auto primes = odd_level_primes(oracle.curve().conductor);
  std::vector<CalibrationProbe> data;
  for (const std::int64_t d : probes) {
    const auto star = family.star_for(d, primes);
    if (!star) throw std::invalid_argument("fit_k: D = " + std::to_string(d) + " is not admissible");
    data.push_back({d < 0 ? -d : d, static_cast<double>(oracle.central_value(d).value), double(*star)});
  }
  const auto fit = fit_ratios(g.coefficients, data, 3);
  if (!fit) throw std::domain_error("fit_k: fewer than 3 usable probes for family " + family.name);
  return {fit->median, fit->spread, fit->count};
}

std::vector<IdentityTerm> parse_identity(const std::string& text) {
  static const std::regex term(R"(\s*([+-])?\s*(?:(\d+(?:/\d+)?)\s*\*\s*)?L\(\s*([+-]?\d+)\s*\)\s*)");
  std::vector<IdentityTerm> out;
  auto it = text.cbegin();
  std::smatch m;
  while (it != text.cend()) {
    if (!std::regex_search(it, text.cend(), m, term, std::regex_constants::match_continuous)) {
      throw std::invalid_argument("cannot parse identity '" + text + "'");
    }
    if (!out.empty() && !m[1].matched) throw std::invalid_argument("missing operator in identity '" + text + "'");
    Rational coeff = m[2].matched ? parse_rational(m[2].str()) : Rational(1);
    if (m[1].matched && m[1].str() == "-") coeff = -coeff;
    out.push_back({coeff, std::stoll(m[3].str())});
    it = m[0].second;
  }
  if (out.empty()) throw std::invalid_argument("empty identity");
  return out;
}

IdentityReport verify_identity(const std::string& identity, const LSeriesOracle& oracle, double k,
                               double tolerance) {
  IdentityReport report;
  report.text = identity;
  report.k = k;
  for (const auto& t : parse_identity(identity)) {
    report.value += t.coefficient.get_d() * static_cast<double>(oracle.central_value(t.d).value);
  }
  report.relative_error = std::abs(report.value - k) / std::abs(k);
  report.ok = report.relative_error <= tolerance;
  return report;
}

std::vector<TableRow> make_table(const TwistFamily& family, const Eigenform& g, const LSeriesOracle& oracle,
                                 double k, std::int64_t dmax) {
  const auto primes = odd_level_primes(oracle.curve().conductor);
  const std::int64_t needed = dmax;
  if (g.bound() < needed) {
    throw std::out_of_range("eigenform bound " + std::to_string(g.bound()) + " is below dmax; need bound " +
                            std::to_string(needed));
  }
  std::vector<TableRow> rows;
  for (const std::int64_t d : admissible_discriminants(family, oracle.curve().conductor, dmax)) {
    TableRow row;
    row.d = d;
    row.c = integral(coefficient_at(g, family, d, primes), d);
    row.star = *family.star_for(d, primes);
    row.predicted = predict(family, g, d, k, primes);
    row.oracle = static_cast<double>(oracle.central_value(d).value);
    row.ratio = row.c != 0 ? row.oracle / row.predicted : 0;
    rows.push_back(row);
  }
  return rows;
}

FamilyAnalysis analyze_family(const LSeriesOracle& oracle, const TwistFamily& family,
                              std::span<const TernaryForm> forms, std::span<const std::int64_t> eigenvector,
                              std::int64_t bound, std::size_t probes) {
  FamilyAnalysis out;
  out.family = family;
  if (family.has_first_kind()) {
    out.aux_prime = find_auxiliary_prime(oracle, family);
    if (out.aux_prime != family.aux) {
      throw std::runtime_error("family " + family.name + ": auxiliary prime search gave " +
                               std::to_string(out.aux_prime) + ", fixture says " + std::to_string(family.aux));
    }
  }
  out.thetas = class_thetas(family, forms, out.aux_prime, bound);
  const auto probe_data = make_probes(oracle, family, bound, probes);
  const auto calibration = calibrate_signs(out.thetas, eigenvector, probe_data);
  if (!calibration) throw std::runtime_error("family " + family.name + ": no sign choice passes calibration");
  out.calibration = *calibration;
  out.g = build_eigenform(family, out.thetas, eigenvector, out.calibration.signs);
  const auto ds = admissible_discriminants(family, oracle.curve().conductor, bound);
  out.fit = fit_k(family, out.g, oracle, ds);
  return out;
}

namespace {

std::string fixed6(double x) {
  // Avoid printing "-0.000000" for tiny negative oracle noise.
  if (std::abs(x) < 5e-7) x = 0;
  std::ostringstream os;
  os << std::fixed << std::setprecision(6) << x;
  return os.str();
}

std::string ratio_text(const TableRow& r) {
  if (r.c == 0) return "-";
  std::ostringstream os;
  os << std::fixed << std::setprecision(9) << r.ratio;
  return os.str();
}

}  // namespace

std::string format_text(std::span<const TableRow> rows, TableColumns columns) {
  std::ostringstream os;
  os << std::setw(6) << "D" << std::setw(6) << "c" << std::setw(5) << "star";
  if (columns != TableColumns::oracle_only) os << std::setw(14) << "predicted";
  if (columns != TableColumns::predict_only) os << std::setw(14) << "oracle";
  if (columns == TableColumns::all) os << std::setw(14) << "ratio";
  os << "\n";
  for (const auto& r : rows) {
    os << std::setw(6) << r.d << std::setw(6) << r.c << std::setw(5) << r.star;
    if (columns != TableColumns::oracle_only) os << std::setw(14) << fixed6(r.predicted);
    if (columns != TableColumns::predict_only) os << std::setw(14) << fixed6(r.oracle);
    if (columns == TableColumns::all) os << std::setw(14) << ratio_text(r);
    os << "\n";
  }
  return os.str();
}

std::string format_csv(std::span<const TableRow> rows, TableColumns columns) {
  std::ostringstream os;
  os << "D,c,star";
  if (columns != TableColumns::oracle_only) os << ",predicted";
  if (columns != TableColumns::predict_only) os << ",oracle";
  if (columns == TableColumns::all) os << ",ratio";
  os << "\n";
  for (const auto& r : rows) {
    os << r.d << "," << r.c << "," << r.star;
    if (columns != TableColumns::oracle_only) os << "," << fixed6(r.predicted);
    if (columns != TableColumns::predict_only) os << "," << fixed6(r.oracle);
    if (columns == TableColumns::all) os << "," << ratio_text(r);
    os << "\n";
  }
  return os.str();
}

std::vector<ExpectedRow> read_expected_table(std::istream& in) {
  std::vector<ExpectedRow> rows;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream is(line);
    ExpectedRow r;
    if (!(is >> r.d)) continue;
    if (!(is >> r.c >> r.value)) {
      throw std::invalid_argument("expected table line " + std::to_string(lineno) + ": need 'D c L'");
    }
    rows.push_back(r);
  }
  return rows;
}

std::vector<ExpectedRow> read_expected_table(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return read_expected_table(in);
}

}  // namespace twistlift
