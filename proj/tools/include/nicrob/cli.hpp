#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "nicrob/arith.hpp"
#include "nicrob/enumerator.hpp"
#include "nicrob/numerics.hpp"
#include "nicrob/primes.hpp"

namespace nicrob::cli {

enum ExitCode : int {
  kOk = 0,
  kUsage = 1,
  kConfigError = 2,
  kUnfactorable = 3,
  kUndecided = 4,
  kDisagreement = 5,  // oracle mismatch, failed bound or failed re-verification
  kResource = 6,
};

struct LoadedConfig {
  PrimeClassConfig config;
  PrecisionSchedule schedule;
};

// A built-in name ("mod4", "a2plus3b2") or a path to a JSON config.
// Throws ConfigError on anything malformed.
LoadedConfig load_config(const std::string& name_or_path);
LoadedConfig parse_config_json(std::string_view text);
// Round-trips through parse_config_json.
std::string config_json(const LoadedConfig& loaded);

// Decimal ("720") or a product of powers ("2^4*3^2*5"). Bases of a product
// are factored themselves, so "6^2" is accepted. Throws
// std::invalid_argument on syntax errors and UnfactoredError when trial
// division and the primality check cannot finish the job.
FactoredNumber parse_number(std::string_view text, const FactorBudget& budget = {});

// One JSON object per record, no trailing newline.
std::string record_line(const ExceptionRecord& rec);
// FNV-1a 64 over the newline-terminated record lines, as 16 hex digits.
std::string digest(const std::vector<ExceptionRecord>& records);
std::string digest_lines(const std::vector<std::string>& lines);

// Runs the command line; args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace nicrob::cli
