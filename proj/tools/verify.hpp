#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace maxdecouple {

struct PropertyTally {
  std::string name;
  std::size_t passed = 0;
  std::size_t total = 0;
};

/// Runs every randomized property with `trials` instances each (LP
/// properties are capped at 50 instances; G-nonnegativity uses 10x trials).
/// Prints one "name: passed/total" line per property and, for each failure,
/// the offending instance as JSON. Output depends only on seed and trials.
std::vector<PropertyTally> run_property_battery(std::uint64_t seed, std::size_t trials,
                                                std::ostream& out);

}  // namespace maxdecouple
