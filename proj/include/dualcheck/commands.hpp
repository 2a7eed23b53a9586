#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "dualcheck/problem_io.hpp"
#include "dualcheck/report.hpp"

namespace dualcheck {

inline constexpr const char* kToolVersion = "dualcheck 1.0.0";

struct VerdictRecord {
  std::string claim_id;
  Status status;
  std::optional<Witness> witness;
  std::vector<std::pair<std::string, double>> values;
  std::vector<std::pair<std::string, double>> tolerances;
  std::string detail;
  bool expected = true;  // false when the status differs from what the run requires
};

struct RunReport {
  std::string tool_version = kToolVersion;
  std::string input_digest;
  std::string command;
  bool golden = true;
  std::vector<VerdictRecord> verdicts;
  Json tables = Json::object();
  std::int64_t timing_ms = 0;

  std::optional<std::string> curve_csv;
  std::optional<std::string> table_csv;

  bool all_expected() const;
  // 0 when every verdict is as expected, 1 otherwise.
  int exit_code() const;
  const VerdictRecord& verdict(const std::string& id) const;
};

Json report_to_json(const RunReport& report);

// One line per verdict: "<STATUS> <claim_id> ...".
std::string report_summary(const RunReport& report);

struct CommonOptions {
  std::optional<double> tol;
  std::uint64_t seed = 1;
  std::optional<std::size_t> samples;
  std::optional<std::filesystem::path> json;
  std::optional<std::filesystem::path> csv;
  std::optional<std::filesystem::path> curve;
};

// Writes the requested JSON/CSV/curve files atomically. Returns the names of
// requested outputs the report has no content for.
std::vector<std::string> write_outputs(const RunReport& report, const CommonOptions& opts);

// tol: critical-point tolerance (default 1e-8); samples: curve rows (default 629).
// A lambda override turns the run NON-GOLDEN: golden assertions are skipped.
struct Example1Options {
  CommonOptions common;
  std::optional<double> lambda;
};

RunReport cmd_reproduce_example1(const Example1Options& opts);

// tol: gradient-norm tolerance at the critical point (default 1e-10);
// samples: oracle samples (default 10^4).
struct Example2Options {
  CommonOptions common;
  double gamma = 0.25;
};

RunReport cmd_reproduce_example2(const Example2Options& opts);

// Either a problem file or a seeded sweep. Sweep instance k uses seed
// common.seed + k and dimension 1 + k mod max_n, entries in [-5, 5].
struct BinaryVerifyOptions {
  CommonOptions common;
  std::optional<std::filesystem::path> problem;
  bool sweep = false;
  int seeds = 200;
  int max_n = 6;
};

RunReport cmd_binary_verify(const BinaryVerifyOptions& opts);

// tol overrides every threshold; samples is the number of points (default 100).
// `at` adds a gradient-norm check at one dual point (box family only).
struct FdCheckOptions {
  CommonOptions common;
  std::filesystem::path problem;
  std::optional<Vector> at;
};

RunReport cmd_fd_check(const FdCheckOptions& opts);

}  // namespace dualcheck
