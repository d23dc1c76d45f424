#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace maxdecouple::cli {

enum ExitCode : int {
  kSuccess = 0,
  kInputError = 1,
  kInvariantFailure = 2,
  kUsage = 64,
};

/// Default seed for `sample` and `verify`.
inline constexpr std::uint64_t kDefaultSeed = 0;

enum class Format { json, csv };

/// Runs one invocation; args[0] is the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

int run_report(const std::string& input_path, Format format, double tol, std::ostream& out,
               std::ostream& err);
int run_verify(std::uint64_t seed, std::size_t trials, std::ostream& out, std::ostream& err);

}  // namespace maxdecouple::cli
