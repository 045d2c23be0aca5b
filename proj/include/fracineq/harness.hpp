#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "fracineq/catalog.hpp"
#include "fracineq/funclasses.hpp"

namespace fracineq::harness {

struct GenerationConfig {
  std::vector<FunctionSpec> families;
  std::vector<HClass> h_classes;
  std::vector<double> alpha_grid;
  std::vector<double> p_grid;
  std::vector<Interval> intervals;
  std::vector<double> lambdas;
  std::vector<InvexityMap::Kind> etas;
  quad::QuadConfig quad;
  /// Every emitted scenario is certified for the hypotheses of these ids.
  std::vector<catalog::InequalityId> certify_for{catalog::kTheorems.begin(), catalog::kTheorems.end()};
  int certification_grid = 9;
  int max_retries = 50;

  /// Certifiable default pool: quartic polynomials, e^{kx} and |x|^k (k > 3)
  /// on non-negative intervals, every h-class, lambda in {1, 0.5}.
  static GenerationConfig defaults();
};

struct GenerationResult {
  std::vector<Scenario> scenarios;
  std::vector<std::string> notes;  // skipped indices
  std::size_t attempts = 0;
  std::size_t rejected = 0;
};

/// Draws n scenarios; candidate i, attempt k uses the counter stream
/// (seed, i, k), so the output depends only on (config, seed, n).
/// Throws ExhaustionError if more than 99% of candidates were rejected.
GenerationResult generate_scenarios(const GenerationConfig& cfg, std::uint64_t seed, std::size_t n);

struct RunSummary {
  std::size_t scenarios_run = 0;
  std::size_t violations = 0;
  double min_margin = std::numeric_limits<double>::infinity();
  std::vector<catalog::BoundReport> reports;
  std::uint64_t seed = 0;
};

/// One report per (scenario, id), scenario-major. Evaluation errors become
/// per-report error entries with holds = false.
RunSummary run_verification(const std::vector<catalog::InequalityId>& ids,
                            const std::vector<Scenario>& scenarios, bool waive_certification = false,
                            std::uint64_t seed = 0);

// ---------------------------------------------------------------------------

enum class Classification { exact, looser_upper, under_oracle, inconclusive };
std::string to_string(Classification c);

constexpr double kAuditRelativeTolerance = 1e-8;

struct AuditReport {
  catalog::CorollaryId corollary = catalog::CorollaryId::C3_3;
  double alpha = 1.0;
  std::optional<double> s;
  std::optional<double> p;
  double printed_value = 0.0;
  double oracle_value = 0.0;
  double oracle_error = 0.0;
  Classification classification = Classification::inconclusive;
};

/// exact when |printed - oracle| <= 1e-8 max(1,|oracle|); otherwise by sign.
/// inconclusive when the oracle did not converge, its error bound is not
/// below the tolerance, or either value is non-finite.
Classification classify(double printed, double oracle, double oracle_error, bool oracle_converged);

/// Quadrature settings used for audit oracles.
quad::QuadConfig audit_quad_config();

/// One report per corollary and grid point; s and p are only iterated for
/// corollaries whose formulas use them.
std::vector<AuditReport> audit_constants(const std::vector<catalog::CorollaryId>& ids,
                                         const std::vector<double>& alpha_grid,
                                         const std::vector<double>& s_grid,
                                         const std::vector<double>& p_grid,
                                         const quad::QuadConfig& cfg = audit_quad_config());

// ---------------------------------------------------------------------------

struct SearchConfig {
  std::size_t budget = 200;
  std::uint64_t seed = 0;
  double perturbation_scale = 0.1;
  std::size_t steps_per_restart = 25;
  GenerationConfig generation = GenerationConfig::defaults();
};

struct SearchOutcome {
  RunSummary summary;
  std::optional<Scenario> best;  // minimal-margin scenario
};

/// Coordinate-wise random hill climb on the margin of `id`, restarted from a
/// fresh generated scenario every steps_per_restart evaluations. With
/// certification on, only certified candidates are evaluated; waived runs
/// also draw from a pool containing non-preinvex inputs.
SearchOutcome search_counterexamples(catalog::InequalityId id, const SearchConfig& cfg,
                                     bool waive_certification);

}  // namespace fracineq::harness
