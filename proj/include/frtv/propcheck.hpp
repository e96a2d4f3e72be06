#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace frtv {

enum class Direction { at_most, at_least };

struct PropertyCase {
  std::string description;
  double measured = 0.0;
  double bound = 0.0;
  Direction direction = Direction::at_most;
  bool pass = false;
};

PropertyCase make_case(std::string description, double measured, double bound,
                       Direction direction = Direction::at_most);

struct PropertyReport {
  std::string suite;
  std::string note;
  std::vector<PropertyCase> cases;
  std::vector<int> grid_sizes;
  std::uint64_t seed = 0;

  bool passed() const;
  std::size_t failures() const;
};

/// Registered suite names in execution order.
const std::vector<std::string>& suite_names();

/// Runs one suite; throws std::invalid_argument for unknown names or sizes
/// outside the suite's range.
PropertyReport run_suite(const std::string& name, const std::vector<int>& sizes,
                         std::uint64_t seed);

/// "all" expands to every registered suite.
std::vector<PropertyReport> run_suites(const std::string& name, const std::vector<int>& sizes,
                                       std::uint64_t seed);

}  // namespace frtv
