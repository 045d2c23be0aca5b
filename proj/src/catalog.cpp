#include "fracineq/catalog.hpp"

#include <algorithm>
#include <cmath>

#include "fracineq/error.hpp"
#include "fracineq/fracint.hpp"
#include "fracineq/specfun.hpp"

namespace fracineq::catalog {
namespace {

struct IdName {
  InequalityId id;
  const char* name;
};
constexpr std::array<IdName, 7> kInequalityNames = {{
    {InequalityId::T3_2, "T3.2"},
    {InequalityId::T3_6, "T3.6"},
    {InequalityId::T3_10, "T3.10"},
    {InequalityId::T3_15, "T3.15"},
    {InequalityId::T3_19, "T3.19"},
    {InequalityId::T3_19_printed, "T3.19-printed"},
    {InequalityId::T3_23, "T3.23"},
}};

constexpr std::array<CorollaryInfo, 18> kCorollaryTable = {{
    {CorollaryId::C3_3, InequalityId::T3_2, HCase::identity, false, false},
    {CorollaryId::C3_4, InequalityId::T3_2, HCase::power_s, true, false},
    {CorollaryId::C3_5, InequalityId::T3_2, HCase::one, false, false},
    {CorollaryId::C3_7, InequalityId::T3_6, HCase::identity, false, true},
    {CorollaryId::C3_8, InequalityId::T3_6, HCase::power_s, true, true},
    {CorollaryId::C3_9, InequalityId::T3_6, HCase::one, false, true},
    {CorollaryId::C3_11, InequalityId::T3_10, HCase::identity, false, true},
    {CorollaryId::C3_12, InequalityId::T3_10, HCase::power_s, true, true},
    {CorollaryId::C3_13, InequalityId::T3_10, HCase::one, false, true},
    {CorollaryId::C3_16, InequalityId::T3_15, HCase::identity, false, false},
    {CorollaryId::C3_17, InequalityId::T3_15, HCase::power_s, true, false},
    {CorollaryId::C3_18, InequalityId::T3_15, HCase::one, false, false},
    {CorollaryId::C3_20, InequalityId::T3_19, HCase::identity, false, true},
    {CorollaryId::C3_21, InequalityId::T3_19, HCase::power_s, true, true},
    {CorollaryId::C3_22, InequalityId::T3_19, HCase::one, false, true},
    {CorollaryId::C3_24, InequalityId::T3_23, HCase::identity, false, true},
    {CorollaryId::C3_25, InequalityId::T3_23, HCase::power_s, true, true},
    {CorollaryId::C3_26, InequalityId::T3_23, HCase::one, false, true},
}};

constexpr std::array<const char*, 18> kCorollaryNames = {
    "C3.3",  "C3.4",  "C3.5",  "C3.7",  "C3.8",  "C3.9",  "C3.11", "C3.12", "C3.13",
    "C3.16", "C3.17", "C3.18", "C3.20", "C3.21", "C3.22", "C3.24", "C3.25", "C3.26"};

std::string canonical_token(std::string_view text) {
  std::string out(text);
  std::replace(out.begin(), out.end(), '_', '.');
  return out;
}

double half_beta(double p, double q) { return specfun::incomplete_beta_lower(0.5, p, q).value; }

// (I^r, error) for I known to within e.
Estimate raise(const quad::QuadResult& r, double exponent) {
  const double v = std::max(r.value, 0.0);
  const double value = std::pow(v, exponent);
  double err = 0.0;
  if (exponent == 1.0) {
    err = r.abs_error_estimate;
  } else if (v > r.abs_error_estimate) {
    err = exponent * std::pow(v - r.abs_error_estimate, exponent - 1.0) * r.abs_error_estimate;
  } else {
    err = std::pow(v + r.abs_error_estimate, exponent);
  }
  return {value, err, r.converged};
}

double holder_prefactor(double alpha, double p) {
  return std::pow(2.0 / (alpha * p + 1.0), 1.0 / p) * std::pow(1.0 - std::pow(2.0, -alpha * p), 1.0 / p);
}

double power_mean_prefactor(double alpha, double p) {
  return std::pow(2.0 / (alpha + 1.0), 1.0 / p) * std::pow(1.0 - std::pow(2.0, -alpha), 1.0 / p);
}

double max_second_kernel(double alpha) { return (1.0 - std::pow(2.0, -alpha)) / (alpha + 1.0); }

double second_kernel_mass(double alpha) { return alpha / ((alpha + 1.0) * (alpha + 2.0)); }

quad::QuadConfig with_h_breaks(const quad::QuadConfig& cfg, const HClass& h, bool kink_at_half) {
  std::vector<double> breaks = cfg.forced_breakpoints;
  if (kink_at_half) breaks.push_back(0.5);
  for (double k : h.breakpoints()) breaks.push_back(k);
  return cfg.with_breakpoints(std::move(breaks));
}

template <class T>
T required(std::optional<T> v, CorollaryId id, const char* name) {
  if (!v) throw MissingParameter(to_string(id) + " needs parameter " + name);
  return *v;
}

double derivative_norm(const Scenario& s, int order, bool powered) {
  const double fa = std::abs(s.f.derivative(order, s.a));
  const double fb = std::abs(s.f.derivative(order, s.b));
  if (!powered) return fa + fb;
  const double q = s.q();
  return std::pow(std::pow(fa, q) + std::pow(fb, q), 1.0 / q);
}

}  // namespace

// ---------------------------------------------------------------------------

CorollaryInfo corollary_info(CorollaryId id) { return kCorollaryTable[static_cast<std::size_t>(id)]; }

std::optional<CorollaryId> corollary_for(InequalityId theorem, HCase h_case) {
  for (const auto& info : kCorollaryTable) {
    if (info.theorem == theorem && info.h_case == h_case) return info.id;
  }
  return std::nullopt;
}

std::string to_string(InequalityId id) { return kInequalityNames[static_cast<std::size_t>(id)].name; }
std::string to_string(CorollaryId id) { return kCorollaryNames[static_cast<std::size_t>(id)]; }

std::string to_string(HCase h) {
  switch (h) {
    case HCase::identity:
      return "identity";
    case HCase::power_s:
      return "power_s";
    case HCase::one:
      return "one";
  }
  return "?";
}

std::string to_string(ReductionKind k) {
  switch (k) {
    case ReductionKind::alpha_one:
      return "alpha_one";
    case ReductionKind::phi_zero:
      return "phi_zero";
    case ReductionKind::both:
      return "both";
  }
  return "?";
}

InequalityId parse_inequality_id(std::string_view text) {
  const std::string token = canonical_token(text);
  for (const auto& entry : kInequalityNames) {
    if (token == entry.name) return entry.id;
  }
  if (token == "T3.19.printed") return InequalityId::T3_19_printed;
  throw ParseError("unknown inequality id '" + std::string(text) + "'");
}

CorollaryId parse_corollary_id(std::string_view text) {
  const std::string token = canonical_token(text);
  for (std::size_t i = 0; i < kCorollaryNames.size(); ++i) {
    if (token == kCorollaryNames[i]) return static_cast<CorollaryId>(i);
  }
  throw ParseError("unknown corollary id '" + std::string(text) + "'");
}

// ---------------------------------------------------------------------------

quad::QuadResult weight_integral_W1(const HClass& h, double alpha, const quad::QuadConfig& cfg) {
  if (!(alpha > 0.0)) throw DomainError("W1 needs alpha > 0");
  auto integrand = [&](double t) {
    return std::abs(std::pow(1.0 - t, alpha) - std::pow(t, alpha)) * h(t);
  };
  return quad::integrate(integrand, 0.0, 1.0, with_h_breaks(cfg, h, true));
}

quad::QuadResult weight_integral_W2(const HClass& h, double alpha, const quad::QuadConfig& cfg) {
  if (!(alpha > 0.0)) throw DomainError("W2 needs alpha > 0");
  auto integrand = [&](double t) {
    const double k = (1.0 - std::pow(1.0 - t, alpha + 1.0) - std::pow(t, alpha + 1.0)) / (alpha + 1.0);
    return k * h(t);
  };
  return quad::integrate(integrand, 0.0, 1.0, with_h_breaks(cfg, h, false));
}

quad::QuadResult h_integral(const HClass& h, const quad::QuadConfig& cfg) {
  return quad::integrate([&](double t) { return h(t); }, 0.0, 1.0, with_h_breaks(cfg, h, false));
}

// ---------------------------------------------------------------------------

Estimate identity_lhs(const Scenario& s) {
  if (!(s.alpha >= 0.0)) throw DomainError("identity needs alpha >= 0");
  const double step = s.step();
  if (!(step > 0.0)) throw PreconditionError("identity requires eta(b,a) > 0");
  const double end = s.a + step;
  auto f = [&](double t) { return s.f.value(t); };

  const quad::QuadResult left = fracint::rl_left(f, s.a, end, s.alpha, s.quad_cfg);
  const quad::QuadResult right = fracint::rl_right(f, s.a, end, s.alpha, s.quad_cfg);
  const double scale = specfun::gamma(s.alpha + 1.0).value / std::pow(step, s.alpha);
  const double value = s.f.value(s.a) + s.f.value(end) - scale * (left.value + right.value);
  return {value, scale * (left.abs_error_estimate + right.abs_error_estimate),
          left.converged && right.converged};
}

LemmaResidual lemma_residual_detail(int order, const Scenario& s) {
  if (order != 1 && order != 2) throw DomainError("lemma order must be 1 or 2");
  if (!s.f.has_derivative(order)) {
    throw UnavailableDerivative("lemma of order " + std::to_string(order) + " needs f^(" +
                                std::to_string(order) + ")");
  }
  const Estimate lhs = identity_lhs(s);
  const double step = s.step();
  const double alpha = s.alpha;

  quad::QuadResult kernel_integral;
  double factor = 0.0;
  if (order == 1) {
    auto integrand = [&](double t) {
      return (std::pow(t, alpha) - std::pow(1.0 - t, alpha)) * s.f.derivative(1, s.a + t * step);
    };
    kernel_integral = quad::integrate(integrand, 0.0, 1.0, s.quad_cfg);
    factor = step;
  } else {
    auto integrand = [&](double t) {
      const double k = (1.0 - std::pow(1.0 - t, alpha + 1.0) - std::pow(t, alpha + 1.0)) / (alpha + 1.0);
      return k * s.f.derivative(2, s.a + t * step);
    };
    kernel_integral = quad::integrate(integrand, 0.0, 1.0, s.quad_cfg);
    factor = step * step;
  }
  LemmaResidual out;
  out.lhs = lhs.value;
  out.rhs = factor * kernel_integral.value;
  out.residual = std::abs(out.lhs - out.rhs);
  out.quad_error = lhs.error + factor * kernel_integral.abs_error_estimate;
  return out;
}

double lemma_residual(int order, const Scenario& s) { return lemma_residual_detail(order, s).residual; }

// ---------------------------------------------------------------------------

Hypothesis hypothesis(InequalityId id) {
  switch (id) {
    case InequalityId::T3_2:
      return {1, false};
    case InequalityId::T3_6:
    case InequalityId::T3_10:
      return {1, true};
    case InequalityId::T3_15:
      return {2, false};
    case InequalityId::T3_19:
    case InequalityId::T3_19_printed:
    case InequalityId::T3_23:
      return {2, true};
  }
  return {1, false};
}

Certification certify_for(InequalityId id, const Scenario& s, int grid_n) {
  const Hypothesis hyp = hypothesis(id);
  const auto g = derivative_magnitude_power(s.f, hyp.order, hyp.powered ? s.q() : 1.0);
  const double end = s.displaced_end();
  const Interval hull{std::min({s.a, s.b, end}), std::max({s.a, s.b, end})};
  return certify_h_preinvex(g, s.h, s.map, hull, grid_n);
}

BoundReport eval_inequality(InequalityId id, const Scenario& s, bool waive_certification) {
  s.validate();
  if (!waive_certification) {
    const Certification cert = certify_for(id, s);
    if (!cert.holds) {
      throw CertificationMissing(to_string(id) + ": hypothesis not certified (worst violation " +
                                 std::to_string(cert.worst_violation) + ")");
    }
  }

  const Estimate lhs = identity_lhs(s);
  const double step = s.step();
  const double alpha = s.alpha;
  const double p = s.p;
  const double q = s.q();
  const Hypothesis hyp = hypothesis(id);
  const double norm = derivative_norm(s, hyp.order, hyp.powered);

  Estimate constant;  // h-dependent factor times the theorem's prefactor
  switch (id) {
    case InequalityId::T3_2:
      constant = raise(weight_integral_W1(s.h, alpha, s.quad_cfg), 1.0);
      break;
    case InequalityId::T3_6: {
      const Estimate hi = raise(h_integral(s.h, s.quad_cfg), 1.0 / q);
      const double pre = holder_prefactor(alpha, p);
      constant = {pre * hi.value, pre * hi.error, hi.converged};
      break;
    }
    case InequalityId::T3_10: {
      const Estimate w = raise(weight_integral_W1(s.h, alpha, s.quad_cfg), 1.0 / q);
      const double pre = power_mean_prefactor(alpha, p);
      constant = {pre * w.value, pre * w.error, w.converged};
      break;
    }
    case InequalityId::T3_15:
      constant = raise(weight_integral_W2(s.h, alpha, s.quad_cfg), 1.0);
      break;
    case InequalityId::T3_19:
    case InequalityId::T3_19_printed: {
      const Estimate hi = raise(h_integral(s.h, s.quad_cfg), 1.0 / q);
      const double pre = id == InequalityId::T3_19 ? max_second_kernel(alpha) : 1.0 - std::pow(2.0, -alpha);
      constant = {pre * hi.value, pre * hi.error, hi.converged};
      break;
    }
    case InequalityId::T3_23: {
      const Estimate w = raise(weight_integral_W2(s.h, alpha, s.quad_cfg), 1.0 / q);
      const double pre = std::pow(second_kernel_mass(alpha), 1.0 / p);
      constant = {pre * w.value, pre * w.error, w.converged};
      break;
    }
  }

  const double length_factor = hyp.order == 1 ? step : step * step;
  BoundReport r;
  r.id = id;
  r.scenario_digest = s.digest();
  r.waived = waive_certification;
  r.lhs = std::abs(lhs.value);
  r.rhs = length_factor * norm * constant.value;
  r.margin = r.rhs - r.lhs;
  r.quad_error = lhs.error + length_factor * norm * constant.error;
  const double tol_total = r.quad_error + kHoldsRelativeSlack * std::max(1.0, std::abs(r.rhs));
  r.holds = std::isfinite(r.margin) && r.lhs <= r.rhs + tol_total;
  if (!lhs.converged || !constant.converged) r.error = "quadrature did not converge";
  return r;
}

// ---------------------------------------------------------------------------

double corollary_constant(CorollaryId id, double alpha, std::optional<double> s, std::optional<double> p) {
  const CorollaryInfo info = corollary_info(id);
  if (!(alpha > 0.0)) throw DomainError(to_string(id) + " needs alpha > 0");
  const double sv = info.needs_s ? required(s, id, "s") : 0.0;
  const double pv = info.needs_p ? required(p, id, "p") : 2.0;
  const double qv = pv / (pv - 1.0);
  const double inv_q = 1.0 / qv;

  const double first_identity = (1.0 - std::pow(2.0, -(alpha + 2.0))) / (alpha + 2.0);
  const double first_one = 2.0 / (alpha + 1.0) * (1.0 - std::pow(2.0, -alpha));
  // Bracket of the power-s first-order case, read as
  // B_1/2(a+1,s+1) - B_1/2(s+1,a+1) + [1 - 2^-(s+a)]/(a+s+1).
  auto first_power = [&] {
    return half_beta(alpha + 1.0, sv + 1.0) - half_beta(sv + 1.0, alpha + 1.0) +
           (1.0 - std::pow(2.0, -(sv + alpha))) / (alpha + sv + 1.0);
  };
  auto second_power = [&] {
    return 1.0 / ((alpha + sv + 2.0) * (sv + 1.0)) - half_beta(sv + 1.0, alpha) / (alpha + 1.0);
  };
  // (2^(a+1) - 2) / (2^a (a+1)), as printed (no 1/p power).
  const double power_mean_printed = (std::pow(2.0, alpha + 1.0) - 2.0) / (std::pow(2.0, alpha) * (alpha + 1.0));

  switch (id) {
    case CorollaryId::C3_3:
      return first_identity;
    case CorollaryId::C3_4:
      return first_power();
    case CorollaryId::C3_5:
      return first_one;
    case CorollaryId::C3_7:
      return holder_prefactor(alpha, pv) * std::pow(0.5, inv_q);
    case CorollaryId::C3_8:
      return holder_prefactor(alpha, pv) * std::pow(1.0 / (sv + 1.0), inv_q);
    case CorollaryId::C3_9:
      return holder_prefactor(alpha, pv);
    case CorollaryId::C3_11:
      return power_mean_prefactor(alpha, pv) * std::pow(first_identity, inv_q);
    case CorollaryId::C3_12:
      return power_mean_printed * std::pow(first_power(), inv_q);
    case CorollaryId::C3_13:
      return power_mean_printed;
    case CorollaryId::C3_16:
      return alpha / (2.0 * (alpha + 1.0) * (alpha + 2.0));
    case CorollaryId::C3_17:
      return second_power();
    case CorollaryId::C3_18:
      return second_kernel_mass(alpha);
    case CorollaryId::C3_20:
      return max_second_kernel(alpha) * std::pow(0.5, inv_q);
    case CorollaryId::C3_21:
      return max_second_kernel(alpha) * std::pow(1.0 / (sv + 1.0), inv_q);
    case CorollaryId::C3_22:
      return max_second_kernel(alpha);
    case CorollaryId::C3_24:
      return std::pow(0.5, inv_q) * second_kernel_mass(alpha);
    case CorollaryId::C3_25:
      return std::pow(second_kernel_mass(alpha), 1.0 / pv) * std::pow(second_power(), inv_q);
    case CorollaryId::C3_26:
      return second_kernel_mass(alpha);
  }
  return std::nan("");
}

HClass corollary_hclass(CorollaryId id, std::optional<double> s) {
  const CorollaryInfo info = corollary_info(id);
  switch (info.h_case) {
    case HCase::identity:
      return HClass::identity();
    case HCase::power_s:
      return HClass::power(required(s, id, "s"));
    case HCase::one:
      return HClass::one();
  }
  return HClass::one();
}

std::optional<HCase> classify_hclass(const HClass& h) {
  if (std::holds_alternative<HClass::Identity>(h.kind())) return HCase::identity;
  if (std::holds_alternative<HClass::Power>(h.kind())) return HCase::power_s;
  if (std::holds_alternative<HClass::One>(h.kind())) return HCase::one;
  return std::nullopt;
}

Estimate generic_constant(CorollaryId id, double alpha, std::optional<double> s, std::optional<double> p,
                          const quad::QuadConfig& cfg) {
  const CorollaryInfo info = corollary_info(id);
  if (!(alpha > 0.0)) throw DomainError(to_string(id) + " needs alpha > 0");
  const HClass h = corollary_hclass(id, s);
  const double pv = info.needs_p ? required(p, id, "p") : 2.0;
  const double inv_q = (pv - 1.0) / pv;

  auto scaled = [](double factor, const Estimate& e) {
    return Estimate{factor * e.value, factor * e.error, e.converged};
  };
  switch (info.theorem) {
    case InequalityId::T3_2:
      return raise(weight_integral_W1(h, alpha, cfg), 1.0);
    case InequalityId::T3_6:
      return scaled(holder_prefactor(alpha, pv), raise(h_integral(h, cfg), inv_q));
    case InequalityId::T3_10:
      return scaled(power_mean_prefactor(alpha, pv), raise(weight_integral_W1(h, alpha, cfg), inv_q));
    case InequalityId::T3_15:
      return raise(weight_integral_W2(h, alpha, cfg), 1.0);
    case InequalityId::T3_19:
    case InequalityId::T3_19_printed:
      return scaled(max_second_kernel(alpha), raise(h_integral(h, cfg), inv_q));
    case InequalityId::T3_23:
      return scaled(std::pow(second_kernel_mass(alpha), 1.0 / pv),
                    raise(weight_integral_W2(h, alpha, cfg), inv_q));
  }
  return {};
}

// ---------------------------------------------------------------------------

ReductionReport reduction_check(ReductionKind kind, const Scenario& s, InequalityId id) {
  ReductionReport report;
  report.kind = kind;
  Scenario pinned = s;
  if (kind != ReductionKind::phi_zero) pinned.alpha = 1.0;
  if (kind != ReductionKind::alpha_one) {
    pinned.map = InvexityMap(s.map.kind(), 1.0);
  }

  switch (kind) {
    case ReductionKind::alpha_one: {
      const auto h_case = classify_hclass(pinned.h);
      const auto corollary = h_case ? corollary_for(id, *h_case) : std::nullopt;
      if (!corollary) {
        report.applicable = false;
        report.max_abs_discrepancy = std::nan("");
        return report;
      }
      report.corollary = corollary;
      std::optional<double> s_param;
      if (const auto* pw = std::get_if<HClass::Power>(&pinned.h.kind())) s_param = pw->s;
      const BoundReport generic = eval_inequality(id, pinned, true);
      const Hypothesis hyp = hypothesis(id);
      const double step = pinned.step();
      const double length_factor = hyp.order == 1 ? step : step * step;
      const double closed = length_factor * derivative_norm(pinned, hyp.order, hyp.powered) *
                            corollary_constant(*corollary, 1.0, s_param, pinned.p);
      report.max_abs_discrepancy = std::abs(generic.rhs - closed);
      return report;
    }
    case ReductionKind::phi_zero: {
      double worst = lemma_residual(1, pinned);
      if (pinned.f.has_derivative(2)) worst = std::max(worst, lemma_residual(2, pinned));
      report.max_abs_discrepancy = worst;
      return report;
    }
    case ReductionKind::both: {
      const double end = pinned.displaced_end();
      const quad::QuadResult mean =
          quad::integrate([&](double t) { return pinned.f.value(t); }, pinned.a, end, pinned.quad_cfg);
      const double classical =
          std::abs(pinned.f.value(pinned.a) + pinned.f.value(end) - 2.0 / (end - pinned.a) * mean.value);
      report.max_abs_discrepancy = std::abs(std::abs(identity_lhs(pinned).value) - classical);
      return report;
    }
  }
  return report;
}

}  // namespace fracineq::catalog
