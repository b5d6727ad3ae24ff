#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "twistlift/lseries.hpp"
#include "twistlift/quaternion.hpp"
#include "twistlift/ternary.hpp"
#include "twistlift/theta_lift.hpp"

namespace twistlift {

/// Syntax or invariant error in a fixture file. `line` is 0 when the error
/// concerns a whole section rather than one line.
class FixtureError : public std::runtime_error {
 public:
  FixtureError(const std::string& source, int line, const std::string& message);
  int line() const { return line_; }

 private:
  int line_;
};

/// Printed quaternion data: an order and left ideals of it.
struct QuaternionData {
  QuaternionAlgebra algebra;
  std::string order_name = "R";
  std::vector<QuatElement> order;
  std::vector<std::pair<std::string, std::vector<QuatElement>>> ideals;

  Order make_order() const;
  /// Ideal by name; the order's own name gives R as an ideal of itself.
  Ideal make_ideal(const std::string& name) const;
};

/// One ideal class: the ideal it comes from ("-" if not printed) and its
/// ternary form.
struct ClassEntry {
  std::string source = "-";
  TernaryForm form;
};

struct Fixture {
  EllipticCurve curve;
  std::optional<QuaternionData> quaternion;
  std::vector<std::int64_t> eigenvector;
  std::int64_t height = 0;
  std::vector<ClassEntry> classes;
  std::vector<TwistFamily> families;

  std::vector<TernaryForm> forms() const;
  /// Throws std::invalid_argument listing the known names.
  const TwistFamily& family(const std::string& name) const;
  std::vector<std::int64_t> level_primes() const { return odd_level_primes(curve.conductor); }
};

/// Ideals of the classes in order; throws if a class has no printed ideal.
std::vector<Ideal> class_ideals(const Fixture& fixture);

/// Unit weight of each class: unit_half_count of the right order when the
/// class comes from a printed ideal, |Aut(Q_i)| / 4 otherwise.
std::vector<std::int64_t> unit_weights(const Fixture& fixture);

struct FixtureCheck {
  std::string name;
  bool ok;
  std::string detail;
};

/// Recomputes forms from printed ideals, the common discriminant, and the
/// height identity sum v_i^2 w_i = height.
std::vector<FixtureCheck> verify_fixture(const Fixture& fixture);

/// Line-oriented format: "[section]" headers, "key = value" entries and,
/// inside [order NAME] and [ideal NAME], one basis element per line as four
/// rationals. '#' starts a comment.
Fixture parse_fixture(std::istream& in, const std::string& source = "<input>");
Fixture parse_fixture_file(const std::string& path);
std::string serialize(const Fixture& fixture);

/// Parses "2q^3 - 4q^8 + q^15" into exponent -> coefficient.
std::map<std::int64_t, std::int64_t> parse_expansion(const std::string& text);
std::string format_expansion(const std::map<std::int64_t, std::int64_t>& terms);

}  // namespace twistlift
