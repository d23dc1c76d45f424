#pragma once

// File formats.
//
//   {"kind":"bernoulli-joint","n":3,"atoms":[{"mask":0,"p":0.25}, ...]}
//   {"kind":"nonneg-joint","n":2,"atoms":[{"values":[1.0,0.0],"p":0.5}, ...]}
//
// Mask bit i (LSB = bit 0) is the value of X_{i+1}.

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "maxdecouple/bounds.hpp"
#include "maxdecouple/continuous.hpp"
#include "maxdecouple/joint.hpp"
#include "maxdecouple/optimize.hpp"

namespace maxdecouple {

/// Malformed document: bad JSON, a missing or mistyped field, or an
/// invariant violation. what() names the line or field at fault.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

using AnyJoint = std::variant<JointBernoulli, NonnegJoint>;

AnyJoint parse_joint(std::string_view text);
JointBernoulli parse_bernoulli_joint(std::string_view text);

std::string to_json(const JointBernoulli& j);
std::string to_json(const NonnegJoint& j);

std::string report_to_json(const BoundReport& r);
std::string report_to_json(const ContinuousReport& r);

/// Header row and data rows with the JSON field names as columns.
std::string report_csv_header();
std::string report_csv_row(const BoundReport& r);
std::string continuous_csv_header();
std::string continuous_csv_row(const ContinuousReport& r);

std::string sweep_csv_header();
std::string sweep_csv_row(const SweepRow& row);

/// %.17g: round-trips every double.
std::string format_real(double v);

}  // namespace maxdecouple
