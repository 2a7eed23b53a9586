#include <iostream>

#include <CLI11.hpp>

#include "dualcheck/commands.hpp"
#include "dualcheck/error.hpp"

namespace {

using namespace dualcheck;

constexpr int kExitInput = 2;
constexpr int kExitResource = 3;

void add_common(CLI::App* cmd, CommonOptions& opts, std::optional<std::string>& json,
                std::optional<std::string>& csv, std::optional<std::string>& curve) {
  cmd->add_option("--tol", opts.tol, "Command-specific tolerance override");
  cmd->add_option("--seed", opts.seed, "Base RNG seed")->capture_default_str();
  cmd->add_option("--samples", opts.samples, "Sample count (curve rows, oracle samples or check points)");
  cmd->add_option("--json", json, "Write the run report as JSON");
  cmd->add_option("--csv", csv, "Write the command's table as CSV");
  cmd->add_option("--curve", curve, "Write the boundary curve as CSV");
}

void resolve_paths(CommonOptions& opts, const std::optional<std::string>& json,
                   const std::optional<std::string>& csv, const std::optional<std::string>& curve) {
  if (json) opts.json = *json;
  if (csv) opts.csv = *csv;
  if (curve) opts.curve = *curve;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Canonical-duality claim checker"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kToolVersion);

  std::optional<std::string> json, csv, curve;

  Example1Options ex1;
  auto* cmd_ex1 = app.add_subcommand("reproduce-example1", "Quadratically constrained counterexample");
  add_common(cmd_ex1, ex1.common, json, csv, curve);
  cmd_ex1->add_option("--lambda", ex1.lambda, "Override the constraint level (NON-GOLDEN run)");

  Example2Options ex2;
  auto* cmd_ex2 = app.add_subcommand("reproduce-example2", "Box-constrained counterexample");
  add_common(cmd_ex2, ex2.common, json, csv, curve);
  cmd_ex2->add_option("--gamma", ex2.gamma, "Path parameter for the reported witnesses")->capture_default_str();

  BinaryVerifyOptions bin;
  std::optional<std::string> bin_problem;
  auto* cmd_bin = app.add_subcommand("binary-verify", "Certify critical pairs of a 0-1 quadratic program");
  add_common(cmd_bin, bin.common, json, csv, curve);
  cmd_bin->add_option("problem", bin_problem, "Problem file (family \"binary\")");
  cmd_bin->add_flag("--sweep", bin.sweep, "Run a seeded random sweep instead of a file");
  cmd_bin->add_option("--seeds", bin.seeds, "Sweep instance count")->capture_default_str();
  cmd_bin->add_option("--n", bin.max_n, "Sweep maximum dimension")->capture_default_str();

  FdCheckOptions fd;
  std::string fd_problem;
  std::vector<double> fd_at;
  auto* cmd_fd = app.add_subcommand("fd-check", "Compare analytic derivatives with finite differences");
  add_common(cmd_fd, fd.common, json, csv, curve);
  cmd_fd->add_option("problem", fd_problem, "Problem file")->required();
  cmd_fd->add_option("--at", fd_at, "Dual point for a gradient-norm check (box), comma separated")
      ->delimiter(',');

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitInput;
  }

  try {
    RunReport report;
    CommonOptions* common = nullptr;
    if (cmd_ex1->parsed()) {
      common = &ex1.common;
      resolve_paths(*common, json, csv, curve);
      report = cmd_reproduce_example1(ex1);
    } else if (cmd_ex2->parsed()) {
      common = &ex2.common;
      resolve_paths(*common, json, csv, curve);
      report = cmd_reproduce_example2(ex2);
    } else if (cmd_bin->parsed()) {
      common = &bin.common;
      resolve_paths(*common, json, csv, curve);
      if (bin_problem) bin.problem = *bin_problem;
      report = cmd_binary_verify(bin);
    } else {
      common = &fd.common;
      resolve_paths(*common, json, csv, curve);
      fd.problem = fd_problem;
      if (!fd_at.empty()) fd.at = Eigen::Map<const Vector>(fd_at.data(), static_cast<Eigen::Index>(fd_at.size()));
      report = cmd_fd_check(fd);
    }
    for (const auto& flag : write_outputs(report, *common)) {
      std::cerr << "warning: " << flag << " has no content for " << report.command << "\n";
    }
    std::cout << report_summary(report);
    return report.exit_code();
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.code() == ErrorCode::kInstanceTooLarge ? kExitResource : kExitInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  }
}
