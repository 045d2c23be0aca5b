#include "fracineq/fracint.hpp"

#include "fracineq/error.hpp"
#include "fracineq/specfun.hpp"

namespace fracineq::fracint {
namespace {

quad::QuadResult scaled_by_inverse_gamma(quad::QuadResult r, double alpha) {
  const double g = specfun::gamma(alpha).value;
  r.value /= g;
  r.abs_error_estimate /= g;
  return r;
}

}  // namespace

quad::QuadResult rl_left(const quad::Integrand& f, double a, double x, double alpha,
                         const quad::QuadConfig& cfg) {
  if (!(alpha >= 0.0)) throw DomainError("rl_left: alpha must be >= 0");
  if (!(x > a)) throw DomainError("rl_left: requires x > a");
  if (alpha == 0.0) return {f(x), 0.0, 0, true};
  return scaled_by_inverse_gamma(
      quad::integrate_power_kernel(f, x, a, alpha, quad::Side::left, cfg), alpha);
}

quad::QuadResult rl_right(const quad::Integrand& f, double x, double b, double alpha,
                          const quad::QuadConfig& cfg) {
  if (!(alpha >= 0.0)) throw DomainError("rl_right: alpha must be >= 0");
  if (!(x < b)) throw DomainError("rl_right: requires x < b");
  if (alpha == 0.0) return {f(x), 0.0, 0, true};
  return scaled_by_inverse_gamma(
      quad::integrate_power_kernel(f, x, b, alpha, quad::Side::right, cfg), alpha);
}

quad::QuadResult apply(const FracOperatorSpec& op, const quad::Integrand& f, double x,
                       const quad::QuadConfig& cfg) {
  return op.side == quad::Side::left ? rl_left(f, op.anchor, x, op.alpha, cfg)
                                     : rl_right(f, x, op.anchor, op.alpha, cfg);
}

}  // namespace fracineq::fracint
