#pragma once

namespace fracineq::specfun {

struct SpecfunResult {
  double value = 0.0;
  double abs_error_estimate = 0.0;
};

/// Gamma(x) for 0 < x <= max_gamma_argument().
/// Throws DomainError for x <= 0 and OverflowError above the threshold.
SpecfunResult gamma(double x);

/// ln Gamma(x) for x > 0.
SpecfunResult log_gamma(double x);

/// Largest argument for which gamma() is finite in double precision.
constexpr double max_gamma_argument() { return 171.6; }

/// Complete Beta function B(p, q) = Gamma(p)Gamma(q)/Gamma(p+q).
SpecfunResult beta(double p, double q);

/// Lower unregularized incomplete Beta: int_0^x t^(p-1) (1-t)^(q-1) dt,
/// x in [0,1], p > 0, q > 0.
///
/// Uses the Lentz continued fraction on whichever tail converges fastest;
/// for p or q below 0.05 the integral is evaluated directly by adaptive
/// quadrature after a power substitution that removes the endpoint
/// singularities.
SpecfunResult incomplete_beta_lower(double x, double p, double q);

}  // namespace fracineq::specfun
