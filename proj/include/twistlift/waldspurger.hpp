#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "twistlift/lseries.hpp"
#include "twistlift/rational.hpp"
#include "twistlift/theta_lift.hpp"

namespace twistlift {

/// Absolute tolerance for 6-decimal table values.
inline constexpr double kTableTolerance = 1e-5;
/// Relative tolerance for constancy and constant checks.
inline constexpr double kRelativeTolerance = 1e-6;

/// star(type(D)) * k * c(D)^2 / sqrt|D|.
double predict(const TwistFamily& family, const Eigenform& g, std::int64_t d, double k,
               std::span<const std::int64_t> level_primes);

struct KFit {
  double k;
  double spread;
  std::size_t count;
};

/// Median of sqrt|D| L(f,D,1) / (star c(D)^2) over the probes with c != 0.
/// Throws if fewer than 3 probes are usable.
KFit fit_k(const TwistFamily& family, const Eigenform& g, const LSeriesOracle& oracle,
           std::span<const std::int64_t> probes);

/// coefficient * L(f, d, 1).
struct IdentityTerm {
  Rational coefficient;
  std::int64_t d;
};

/// Parses "2*L(-4)", "L(1)", "1/4*L(1)", or sums of such terms.
std::vector<IdentityTerm> parse_identity(const std::string& text);

struct IdentityReport {
  std::string text;
  double value = 0;
  double k = 0;
  double relative_error = 0;
  bool ok = false;
};

IdentityReport verify_identity(const std::string& identity, const LSeriesOracle& oracle, double k,
                               double tolerance = kRelativeTolerance);

struct TableRow {
  std::int64_t d;
  std::int64_t c;
  int star;
  double predicted;
  double oracle;
  double ratio;  // oracle / predicted, or 0 when c = 0
};

/// One row per admissible D with 0 < |D| <= dmax, ascending |D|.
std::vector<TableRow> make_table(const TwistFamily& family, const Eigenform& g, const LSeriesOracle& oracle,
                                 double k, std::int64_t dmax);

enum class TableColumns { all, oracle_only, predict_only };

std::string format_text(std::span<const TableRow> rows, TableColumns columns = TableColumns::all);
std::string format_csv(std::span<const TableRow> rows, TableColumns columns = TableColumns::all);

/// A printed table row: D, c(D) and the 6-decimal central value.
struct ExpectedRow {
  std::int64_t d;
  std::int64_t c;
  double value;
};

/// Everything derived for one family: auxiliary prime, class thetas, the
/// calibrated signs, the eigenform g and the fitted constant.
struct FamilyAnalysis {
  TwistFamily family;
  std::int64_t aux_prime = 1;
  std::vector<std::vector<Rational>> thetas;
  Calibration calibration;
  Eigenform g;
  KFit fit;
};

/// Runs the lift for one family with theta coefficients up to `bound`.
/// Calibrates on the first `probes` admissible discriminants and fits k on
/// every admissible |D| <= bound. Throws std::runtime_error when the
/// auxiliary prime differs from the family's or no sign choice qualifies.
FamilyAnalysis analyze_family(const LSeriesOracle& oracle, const TwistFamily& family,
                              std::span<const TernaryForm> forms, std::span<const std::int64_t> eigenvector,
                              std::int64_t bound, std::size_t probes = 12);

/// Whitespace-separated "D c L" lines; '#' starts a comment.
std::vector<ExpectedRow> read_expected_table(std::istream& in);
std::vector<ExpectedRow> read_expected_table(const std::string& path);

}  // namespace twistlift
