#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>

namespace penlq::cli {

enum ExitCode : int {
  kOk = 0,
  kUsage = 1,
  kConditionViolation = 2,
  kUnknown = 3,
  kTheoremViolation = 4,
  kSizeGuard = 5,
};

struct CliConfig {
  std::string command;
  std::string input;
  std::string output;
  std::string spec;
  std::string solution;
  std::string partition;
  std::uint64_t seed = 0;
  std::uint64_t trials = 10'000;
  int grid = 1'000;
  int verbosity = 0;
};

/// Runs one penlq command line. JSON results go to `out`, diagnostics and
/// progress to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace penlq::cli
