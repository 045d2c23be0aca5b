#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace fracineq::quad {

using Integrand = std::function<double(double)>;

struct QuadConfig {
  double abs_tol = 1e-10;
  double rel_tol = 1e-8;
  std::size_t max_subdivisions = 2000;
  /// Points where the integrand may be kinked; the interval is split there
  /// before adaptation. Points outside the open interval are ignored.
  std::vector<double> forced_breakpoints;

  /// Throws PreconditionError unless both tolerances are positive.
  void validate() const;

  QuadConfig with_breakpoints(std::vector<double> points) const;

  friend bool operator==(const QuadConfig&, const QuadConfig&) = default;
};

struct QuadResult {
  double value = 0.0;
  double abs_error_estimate = 0.0;
  std::size_t subdivisions = 0;
  bool converged = true;
};

/// Globally adaptive 7/15-point Gauss-Kronrod quadrature of f over [lo, hi].
///
/// The interval with the largest error estimate is bisected until the summed
/// estimate drops below max(abs_tol, rel_tol*|value|) or the subdivision budget
/// is spent; in the latter case `converged` is false and the best estimate is
/// returned. Nodes are strictly interior, so f may blow up integrably at the
/// endpoints. Throws PreconditionError for lo > hi.
QuadResult integrate(const Integrand& f, double lo, double hi,
                     const QuadConfig& cfg = {});

enum class Side { left, right };

/// Integral of g against the weakly singular kernel |x - t|^(alpha-1).
///
/// left:  int_{other}^{x} (x - t)^(alpha-1) g(t) dt,  other < x
/// right: int_{x}^{other} (t - x)^(alpha-1) g(t) dt,  x < other
///
/// For alpha < 1 the substitution w = |x - t|^alpha turns this into
/// (1/alpha) int_0^{L^alpha} g(x -/+ w^(1/alpha)) dw with a bounded integrand.
QuadResult integrate_power_kernel(const Integrand& g, double x, double other,
                                  double alpha, Side side,
                                  const QuadConfig& cfg = {});

}  // namespace fracineq::quad
