// Verification suites: every identity the library claims, run as named
// checks against a seeded random stream, collected into a JSON report.
#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace stheta {

struct SuiteConfig {
  std::vector<long> primes{3, 5, 7};
  double tol_numeric = 1e-8;
  double theta_tol = 1e-12;
  std::uint64_t seed = 20240611;
  std::vector<std::string> suites{"theta", "modularity", "action", "cm", "primgen"};

  /// Throws std::invalid_argument: primes must be odd primes, tolerances
  /// positive and finite, suite names known.
  void validate() const;
};

const std::vector<std::string>& known_suites();

/// Reads a JSON object with optional keys primes, tol_numeric, theta_tol,
/// seed, suites. A missing "suites" selects every suite. Throws
/// std::invalid_argument on malformed input.
SuiteConfig parse_suite_config(std::string_view json_text);

enum class Status { pass, fail, skip };
std::string to_string(Status s);

struct CheckRecord {
  std::string name;
  Status status = Status::pass;
  double measured = 0;   // max error, or mismatch count for exact checks
  double tolerance = 0;  // 0 for exact checks
  double runtime_ms = 0;
  std::string detail;
};

struct Report {
  std::uint64_t seed = 0;
  std::vector<CheckRecord> checks;

  std::size_t count(Status s) const;
  /// 0 when nothing failed, 1 otherwise.
  int exit_status() const;
};

/// Runs the selected suites in a fixed order. Throws std::invalid_argument
/// for an invalid config.
Report run_suite(const SuiteConfig& config);

/// Numbers carry 15 significant digits. Without runtimes the output depends
/// only on the config.
std::string to_json(const Report& report, bool include_runtime = true);

}  // namespace stheta
