#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "fracineq/catalog.hpp"
#include "fracineq/report.hpp"

namespace fracineq::cli {

enum class Command { verify, audit, search, reduce };
std::string to_string(Command c);

/// Fully resolved invocation. Text fields hold the canonical grammar form.
struct RunPlan {
  Command command = Command::verify;
  std::vector<catalog::InequalityId> ids;
  std::vector<catalog::CorollaryId> corollaries;
  std::optional<std::string> f;
  std::string h = "id";
  std::string eta = "diff";
  double lambda = 1.0;
  double a = 0.0;
  double b = 1.0;
  std::vector<double> alpha;
  std::vector<double> s;
  std::vector<double> p;
  std::uint64_t seed = 0;
  std::size_t n = 0;
  std::size_t budget = 200;
  bool waive_certification = false;
  std::optional<std::string> out;
  ReportFormat format = ReportFormat::jsonl;
  std::optional<double> quad_tol;

  friend bool operator==(const RunPlan&, const RunPlan&) = default;
};

/// Raised for malformed command lines and config files; exit code 1.
/// Precedence: flags > config file > FRACINEQ_QUAD_TOL > per-command defaults.
/// argv excludes the program name.
RunPlan parse_args(const std::vector<std::string>& argv, const std::map<std::string, std::string>& env = {});

/// Flags that reproduce `plan` through parse_args (no env needed).
std::vector<std::string> render_args(const RunPlan& plan);

enum ExitCode : int { kExitOk = 0, kExitError = 1, kExitFindings = 2 };

/// Runs the plan, writing records to plan.out (atomically) or `out`.
/// Diagnostics go to `err`.
int execute_plan(const RunPlan& plan, std::ostream& out, std::ostream& err);

/// Exit status for finished work: findings when any report fails.
int exit_code_for(const std::vector<catalog::BoundReport>& reports);
int exit_code_for(const std::vector<harness::AuditReport>& audit);

/// parse_args + execute_plan with usage errors mapped to exit 1.
int run(const std::vector<std::string>& argv, const std::map<std::string, std::string>& env,
        std::ostream& out, std::ostream& err);

}  // namespace fracineq::cli
