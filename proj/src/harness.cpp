#include "fracineq/harness.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <thread>

#include "fracineq/error.hpp"
#include "fracineq/rng.hpp"

namespace fracineq::harness {
namespace {

using catalog::BoundReport;
using catalog::InequalityId;

// Runs body(i) for i in [0, n) on a few threads. Results must be written to
// slot i only; the first exception (lowest index) is rethrown.
template <class Body>
void parallel_for(std::size_t n, Body&& body) {
  const std::size_t workers =
      std::min<std::size_t>(n, std::max(1u, std::min(8u, std::thread::hardware_concurrency())));
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::vector<std::exception_ptr> errors(n);
  std::vector<std::jthread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      for (std::size_t i = w; i < n; i += workers) {
        try {
          body(i);
        } catch (...) {
          errors[i] = std::current_exception();
        }
      }
    });
  }
  pool.clear();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

bool certified(const GenerationConfig& cfg, const Scenario& s) {
  for (InequalityId id : cfg.certify_for) {
    if (!catalog::certify_for(id, s, cfg.certification_grid).holds) return false;
  }
  return true;
}

Scenario draw(const GenerationConfig& cfg, CounterRng& rng) {
  Scenario s;
  s.f = rng.pick(cfg.families);
  s.h = rng.pick(cfg.h_classes);
  s.alpha = rng.pick(cfg.alpha_grid);
  s.p = rng.pick(cfg.p_grid);
  const Interval iv = rng.pick(cfg.intervals);
  s.a = iv.lo;
  s.b = iv.hi;
  const double lambda = rng.pick(cfg.lambdas);
  s.map = InvexityMap(rng.pick(cfg.etas), lambda);
  s.quad_cfg = cfg.quad;
  return s;
}

BoundReport evaluate_guarded(InequalityId id, const Scenario& s, bool waive) {
  try {
    return catalog::eval_inequality(id, s, waive);
  } catch (const std::exception& e) {
    BoundReport r;
    r.id = id;
    r.scenario_digest = s.digest();
    r.waived = waive;
    r.lhs = r.rhs = r.margin = r.quad_error = std::nan("");
    r.holds = false;
    r.error = e.what();
    return r;
  }
}

void tally(RunSummary& summary) {
  summary.violations = 0;
  summary.min_margin = std::numeric_limits<double>::infinity();
  for (const auto& r : summary.reports) {
    if (!r.holds) ++summary.violations;
    if (std::isfinite(r.margin)) summary.min_margin = std::min(summary.min_margin, r.margin);
  }
}

// Family parameter nudged by `delta`; returns nullopt when no parameter exists.
std::optional<FunctionSpec> perturb_family(const FunctionSpec& f, CounterRng& rng, double delta) {
  if (const auto* p = std::get_if<FunctionSpec::Poly>(&f.family())) {
    auto coeffs = p->coeffs;
    coeffs[rng.index(coeffs.size())] += delta;
    return FunctionSpec::poly(std::move(coeffs)).with_domain(f.domain());
  }
  if (const auto* e = std::get_if<FunctionSpec::ExpScaled>(&f.family())) {
    return FunctionSpec::exp_scaled(e->k + delta).with_domain(f.domain());
  }
  if (const auto* pa = std::get_if<FunctionSpec::PowerAbs>(&f.family())) {
    return FunctionSpec::power_abs(std::max(2.0, pa->k + 4.0 * delta)).with_domain(f.domain());
  }
  return std::nullopt;
}

Scenario perturb(const Scenario& s, CounterRng& rng, double scale) {
  Scenario out = s;
  const double delta = scale * rng.uniform(-1.0, 1.0);
  switch (rng.index(6)) {
    case 0:
      out.a = s.a + delta * (1.0 + std::abs(s.a));
      out.b = out.a + (s.b - s.a);
      break;
    case 1:
      out.b = s.a + std::clamp((s.b - s.a) * (1.0 + delta), 0.05, 5.0);
      break;
    case 2:
      out.alpha = std::clamp(s.alpha * (1.0 + 2.0 * delta), 0.05, 5.0);
      break;
    case 3:
      out.p = std::clamp(s.p * (1.0 + 2.0 * delta), 1.05, 8.0);
      break;
    case 4:
      out.map = InvexityMap(s.map.kind(), std::clamp(s.map.lambda() + delta, 0.05, 1.0));
      break;
    default:
      if (auto f = perturb_family(s.f, rng, delta)) out.f = *f;
      break;
  }
  return out;
}

GenerationConfig waived_pool(GenerationConfig cfg) {
  // |f'| concave or sign-changing on [0,1]: outside every built-in h-class.
  cfg.families.push_back(FunctionSpec::poly({0.0, 0.0, 0.5, -1.0 / 3.0}));
  cfg.families.push_back(FunctionSpec::poly({0.0, 1.0, -0.5}));
  cfg.families.push_back(FunctionSpec::exp_scaled(-1.5));
  cfg.certify_for.clear();
  return cfg;
}

}  // namespace

GenerationConfig GenerationConfig::defaults() {
  GenerationConfig cfg;
  cfg.families = {
      FunctionSpec::poly({0.0, 0.0, 0.0, 0.0, 1.0}),
      FunctionSpec::poly({1.0, 1.0, 0.5, 0.2, 0.1}),
      FunctionSpec::exp_scaled(1.0),
      FunctionSpec::exp_scaled(0.5),
      FunctionSpec::exp_scaled(2.0),
      FunctionSpec::power_abs(3.5),
      FunctionSpec::power_abs(5.0),
  };
  cfg.h_classes = {HClass::identity(), HClass::power(0.5), HClass::power(0.25), HClass::one(),
                   HClass::tabulated({{0.0, 0.0}, {0.5, 0.6}, {1.0, 1.0}})};
  cfg.alpha_grid = {0.3, 0.5, 1.0, 1.7, 2.5};
  cfg.p_grid = {1.5, 2.0, 3.0};
  cfg.intervals = {{0.0, 1.0}, {0.5, 2.0}, {1.0, 3.0}, {0.0, 2.0}, {0.25, 1.25}};
  cfg.lambdas = {1.0, 0.5};
  cfg.etas = {InvexityMap::Difference{}, InvexityMap::Affine{2.0}, InvexityMap::Affine{0.5}};
  cfg.quad.abs_tol = 1e-12;
  cfg.quad.rel_tol = 1e-11;
  return cfg;
}

GenerationResult generate_scenarios(const GenerationConfig& cfg, std::uint64_t seed, std::size_t n) {
  if (n == 0) throw PreconditionError("generate_scenarios needs n >= 1");
  if (cfg.families.empty() || cfg.h_classes.empty() || cfg.alpha_grid.empty() || cfg.p_grid.empty() ||
      cfg.intervals.empty() || cfg.lambdas.empty() || cfg.etas.empty()) {
    throw PreconditionError("generation pools must be non-empty");
  }

  std::vector<std::optional<Scenario>> slots(n);
  std::vector<std::size_t> attempts(n, 0);
  parallel_for(n, [&](std::size_t i) {
    for (int k = 0; k < cfg.max_retries; ++k) {
      ++attempts[i];
      CounterRng rng(seed, i, static_cast<std::uint64_t>(k));
      try {
        Scenario s = draw(cfg, rng);
        s.validate();
        if (certified(cfg, s)) {
          slots[i] = std::move(s);
          return;
        }
      } catch (const Error&) {
        // invalid candidate: resample
      }
    }
  });

  GenerationResult out;
  for (std::size_t i = 0; i < n; ++i) {
    out.attempts += attempts[i];
    out.rejected += attempts[i] - (slots[i] ? 1 : 0);
    if (slots[i]) {
      out.scenarios.push_back(std::move(*slots[i]));
    } else {
      out.notes.push_back("candidate " + std::to_string(i) + " skipped after " +
                          std::to_string(cfg.max_retries) + " rejected draws");
    }
  }
  if (static_cast<double>(out.rejected) > 0.99 * static_cast<double>(out.attempts)) {
    throw ExhaustionError("scenario generation rejected " + std::to_string(out.rejected) + " of " +
                          std::to_string(out.attempts) + " candidates");
  }
  return out;
}

RunSummary run_verification(const std::vector<InequalityId>& ids, const std::vector<Scenario>& scenarios,
                            bool waive_certification, std::uint64_t seed) {
  RunSummary summary;
  summary.seed = seed;
  summary.scenarios_run = scenarios.size();
  summary.reports.resize(ids.size() * scenarios.size());
  parallel_for(scenarios.size(), [&](std::size_t i) {
    for (std::size_t j = 0; j < ids.size(); ++j) {
      summary.reports[i * ids.size() + j] = evaluate_guarded(ids[j], scenarios[i], waive_certification);
    }
  });
  tally(summary);
  return summary;
}

// ---------------------------------------------------------------------------

std::string to_string(Classification c) {
  switch (c) {
    case Classification::exact:
      return "exact";
    case Classification::looser_upper:
      return "looser_upper";
    case Classification::under_oracle:
      return "under_oracle";
    case Classification::inconclusive:
      return "inconclusive";
  }
  return "?";
}

Classification classify(double printed, double oracle, double oracle_error, bool oracle_converged) {
  if (!oracle_converged || !std::isfinite(printed) || !std::isfinite(oracle) || !std::isfinite(oracle_error)) {
    return Classification::inconclusive;
  }
  const double tol = kAuditRelativeTolerance * std::max(1.0, std::abs(oracle));
  if (!(oracle_error < tol)) return Classification::inconclusive;
  const double diff = printed - oracle;
  if (std::abs(diff) <= tol) return Classification::exact;
  return diff > 0.0 ? Classification::looser_upper : Classification::under_oracle;
}

quad::QuadConfig audit_quad_config() {
  quad::QuadConfig cfg;
  cfg.abs_tol = 1e-13;
  cfg.rel_tol = 1e-13;
  cfg.max_subdivisions = 4000;
  return cfg;
}

std::vector<AuditReport> audit_constants(const std::vector<catalog::CorollaryId>& ids,
                                         const std::vector<double>& alpha_grid,
                                         const std::vector<double>& s_grid,
                                         const std::vector<double>& p_grid, const quad::QuadConfig& cfg) {
  std::vector<AuditReport> out;
  for (auto id : ids) {
    const auto info = catalog::corollary_info(id);
    std::vector<std::optional<double>> s_values{std::nullopt};
    std::vector<std::optional<double>> p_values{std::nullopt};
    if (info.needs_s) s_values.assign(s_grid.begin(), s_grid.end());
    if (info.needs_p) p_values.assign(p_grid.begin(), p_grid.end());
    for (double alpha : alpha_grid) {
      for (const auto& s : s_values) {
        for (const auto& p : p_values) {
          AuditReport r;
          r.corollary = id;
          r.alpha = alpha;
          r.s = s;
          r.p = p;
          try {
            r.printed_value = catalog::corollary_constant(id, alpha, s, p);
            const catalog::Estimate oracle = catalog::generic_constant(id, alpha, s, p, cfg);
            r.oracle_value = oracle.value;
            r.oracle_error = oracle.error;
            r.classification = classify(r.printed_value, oracle.value, oracle.error, oracle.converged);
          } catch (const Error&) {
            r.printed_value = r.oracle_value = r.oracle_error = std::nan("");
            r.classification = Classification::inconclusive;
          }
          out.push_back(r);
        }
      }
    }
  }
  return out;
}

// ---------------------------------------------------------------------------

SearchOutcome search_counterexamples(InequalityId id, const SearchConfig& cfg, bool waive_certification) {
  if (cfg.budget == 0) throw PreconditionError("search budget must be >= 1");
  GenerationConfig gen = cfg.generation;
  if (waive_certification) {
    gen = waived_pool(std::move(gen));
  } else {
    gen.certify_for = {id};
  }

  SearchOutcome outcome;
  outcome.summary.seed = cfg.seed;
  const std::size_t per_restart = std::max<std::size_t>(1, cfg.steps_per_restart);
  std::size_t used = 0;
  double best_margin = std::numeric_limits<double>::infinity();

  for (std::uint64_t restart = 0; used < cfg.budget; ++restart) {
    std::optional<Scenario> current;
    double current_margin = std::numeric_limits<double>::infinity();
    // Starting point: first certified draw from the restart's stream.
    for (int k = 0; k < gen.max_retries && !current; ++k) {
      CounterRng rng(cfg.seed, restart, static_cast<std::uint64_t>(k));
      try {
        Scenario s = draw(gen, rng);
        s.validate();
        if (certified(gen, s)) current = std::move(s);
      } catch (const Error&) {
      }
    }
    if (!current) break;

    CounterRng walk(cfg.seed ^ 0x5eedULL, restart, 0xffffffffULL);
    for (std::size_t step = 0; step < per_restart && used < cfg.budget; ++step) {
      Scenario candidate = step == 0 ? *current : perturb(*current, walk, cfg.perturbation_scale);
      ++used;
      try {
        candidate.validate();
        if (!waive_certification && !catalog::certify_for(id, candidate).holds) continue;
      } catch (const Error&) {
        continue;
      }
      BoundReport r = evaluate_guarded(id, candidate, waive_certification);
      const double m = r.margin;
      outcome.summary.reports.push_back(std::move(r));
      ++outcome.summary.scenarios_run;
      if (std::isfinite(m) && (step == 0 || m < current_margin)) {
        current = candidate;
        current_margin = m;
      }
      if (std::isfinite(m) && m < best_margin) {
        best_margin = m;
        outcome.best = candidate;
      }
    }
  }
  tally(outcome.summary);
  return outcome;
}

}  // namespace fracineq::harness
