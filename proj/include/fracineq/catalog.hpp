#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>

#include "fracineq/funclasses.hpp"
#include "fracineq/quad.hpp"

namespace fracineq::catalog {

/// Generic-h bounds. T3_19 is the proof-final form (with the 1/(alpha+1)
/// factor); T3_19_printed is the headline statement without it.
enum class InequalityId { T3_2, T3_6, T3_10, T3_15, T3_19, T3_19_printed, T3_23 };

inline constexpr std::array<InequalityId, 6> kTheorems = {
    InequalityId::T3_2,  InequalityId::T3_6,  InequalityId::T3_10,
    InequalityId::T3_15, InequalityId::T3_19, InequalityId::T3_23};

enum class CorollaryId {
  C3_3, C3_4, C3_5,
  C3_7, C3_8, C3_9,
  C3_11, C3_12, C3_13,
  C3_16, C3_17, C3_18,
  C3_20, C3_21, C3_22,
  C3_24, C3_25, C3_26,
};

inline constexpr std::array<CorollaryId, 18> kCorollaries = {
    CorollaryId::C3_3,  CorollaryId::C3_4,  CorollaryId::C3_5,  CorollaryId::C3_7,
    CorollaryId::C3_8,  CorollaryId::C3_9,  CorollaryId::C3_11, CorollaryId::C3_12,
    CorollaryId::C3_13, CorollaryId::C3_16, CorollaryId::C3_17, CorollaryId::C3_18,
    CorollaryId::C3_20, CorollaryId::C3_21, CorollaryId::C3_22, CorollaryId::C3_24,
    CorollaryId::C3_25, CorollaryId::C3_26};

enum class HCase { identity, power_s, one };

struct CorollaryInfo {
  CorollaryId id;
  InequalityId theorem;
  HCase h_case;
  bool needs_s;
  bool needs_p;
};

CorollaryInfo corollary_info(CorollaryId id);
/// The corollary specialising `theorem` to `h_case`; nullopt for T3_19_printed.
std::optional<CorollaryId> corollary_for(InequalityId theorem, HCase h_case);

/// Stable ids: "T3.2", ..., "T3.19", "T3.19-printed", "T3.23"; "C3.3", ...
std::string to_string(InequalityId id);
std::string to_string(CorollaryId id);
std::string to_string(HCase h);
/// Accepts "T3.2" and "T3_2" spellings. Throws ParseError naming the token.
InequalityId parse_inequality_id(std::string_view text);
CorollaryId parse_corollary_id(std::string_view text);

/// Value with an absolute error bound.
struct Estimate {
  double value = 0.0;
  double error = 0.0;
  bool converged = true;
};

// ---------------------------------------------------------------------------
// Kernel integrals
// ---------------------------------------------------------------------------

/// int_0^1 |(1-t)^alpha - t^alpha| h(t) dt, split at t = 1/2.
quad::QuadResult weight_integral_W1(const HClass& h, double alpha, const quad::QuadConfig& cfg = {});

/// int_0^1 [(1 - (1-t)^(alpha+1) - t^(alpha+1)) / (alpha+1)] h(t) dt.
quad::QuadResult weight_integral_W2(const HClass& h, double alpha, const quad::QuadConfig& cfg = {});

/// int_0^1 h(t) dt.
quad::QuadResult h_integral(const HClass& h, const quad::QuadConfig& cfg = {});

// ---------------------------------------------------------------------------
// Identities
// ---------------------------------------------------------------------------

/// f(a) + f(a + L) - Gamma(alpha+1)/L^alpha [J^alpha_{a+} f(a+L) + J^alpha_{(a+L)-} f(a)],
/// L = lambda*eta(b,a). Signed; alpha >= 0 allowed.
Estimate identity_lhs(const Scenario& s);

struct LemmaResidual {
  double residual = 0.0;  // |lhs - rhs|
  double lhs = 0.0;
  double rhs = 0.0;
  double quad_error = 0.0;
};

/// order 1: rhs = L int_0^1 [t^alpha - (1-t)^alpha] f'(a + tL) dt
/// order 2: rhs = L^2 int_0^1 K2(t) f''(a + tL) dt, K2 = [1-(1-t)^(alpha+1)-t^(alpha+1)]/(alpha+1)
LemmaResidual lemma_residual_detail(int order, const Scenario& s);
double lemma_residual(int order, const Scenario& s);

// ---------------------------------------------------------------------------
// Bounds
// ---------------------------------------------------------------------------

struct BoundReport {
  InequalityId id = InequalityId::T3_2;
  double lhs = 0.0;
  double rhs = 0.0;
  double margin = 0.0;
  double quad_error = 0.0;
  bool holds = false;
  std::string scenario_digest;
  bool waived = false;
  std::optional<std::string> error;
};

/// Relative slack added to quad_error in the holds test.
constexpr double kHoldsRelativeSlack = 1e-9;

/// Which derivative (1 or 2) the theorem's hypothesis constrains, and whether
/// the hypothesis is on its q-th power.
struct Hypothesis {
  int order;
  bool powered;
};
Hypothesis hypothesis(InequalityId id);

/// Grid certification of the hypothesis of `id` for scenario s on the hull of
/// {a, b, a + lambda*eta(b,a)}.
Certification certify_for(InequalityId id, const Scenario& s, int grid_n = 9);

/// |identity lhs| against the theorem's right-hand side with lambda in place
/// of e^{i phi}. Throws CertificationMissing unless certified or waived.
BoundReport eval_inequality(InequalityId id, const Scenario& s, bool waive_certification = false);

// ---------------------------------------------------------------------------
// Corollary constants
// ---------------------------------------------------------------------------

/// Printed closed form: the factor multiplying L^k times the derivative term
/// ((|f'(a)|+|f'(b)|), (|f'(a)|^q+|f'(b)|^q)^{1/q}, and the f'' analogues).
/// Throws MissingParameter when s or p is needed but absent.
double corollary_constant(CorollaryId id, double alpha, std::optional<double> s = std::nullopt,
                          std::optional<double> p = std::nullopt);

/// The same factor computed from the generic theorem with its h-integral
/// (W1(h), W2(h) or int h) evaluated by quadrature.
Estimate generic_constant(CorollaryId id, double alpha, std::optional<double> s,
                          std::optional<double> p, const quad::QuadConfig& cfg);

/// h-class a corollary specialises to.
HClass corollary_hclass(CorollaryId id, std::optional<double> s);

/// Maps a scenario h-class onto a corollary case (power(1) counts as power_s).
std::optional<HCase> classify_hclass(const HClass& h);

// ---------------------------------------------------------------------------
// Reductions
// ---------------------------------------------------------------------------

enum class ReductionKind { alpha_one, phi_zero, both };
std::string to_string(ReductionKind k);

struct ReductionReport {
  ReductionKind kind = ReductionKind::both;
  double max_abs_discrepancy = 0.0;
  bool applicable = true;
  std::optional<CorollaryId> corollary;  // alpha_one only
};

/// Pins alpha = 1 (alpha_one, both) and lambda = 1 (phi_zero, both), then:
///  alpha_one: |generic rhs of `id` - closed-form corollary rhs|;
///  phi_zero:  max lemma residual over orders 1 and 2;
///  both:      |lhs - |f(a)+f(b') - 2/(b'-a) int_a^{b'} f||, b' = a + eta(b,a).
ReductionReport reduction_check(ReductionKind kind, const Scenario& s,
                                InequalityId id = InequalityId::T3_2);

}  // namespace fracineq::catalog
