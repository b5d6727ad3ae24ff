#pragma once

#include <string>

#include "twistlift/fixture.hpp"

namespace twistlift::testing {

inline std::string fixture_path(const std::string& name) { return std::string(TWISTLIFT_FIXTURE_DIR) + "/" + name; }
inline std::string table_path(const std::string& name) {
  return std::string(TWISTLIFT_DATA_DIR) + "/tables/" + name;
}
inline Fixture load(const std::string& name) { return parse_fixture_file(fixture_path(name)); }

}  // namespace twistlift::testing
