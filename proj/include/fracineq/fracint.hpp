#pragma once

#include "fracineq/quad.hpp"

namespace fracineq::fracint {

/// J^alpha_{a+} (side left, anchor a) or J^alpha_{b-} (side right, anchor b).
/// alpha = 0 is the identity operator.
struct FracOperatorSpec {
  double alpha = 1.0;
  quad::Side side = quad::Side::left;
  double anchor = 0.0;
};

/// Left Riemann-Liouville integral (1/Gamma(alpha)) int_a^x (x-t)^(alpha-1) f(t) dt.
/// Returns f(x) exactly for alpha = 0. Throws DomainError if x <= a or alpha < 0.
quad::QuadResult rl_left(const quad::Integrand& f, double a, double x, double alpha,
                         const quad::QuadConfig& cfg = {});

/// Right Riemann-Liouville integral (1/Gamma(alpha)) int_x^b (t-x)^(alpha-1) f(t) dt.
/// Throws DomainError if x >= b or alpha < 0.
quad::QuadResult rl_right(const quad::Integrand& f, double x, double b, double alpha,
                          const quad::QuadConfig& cfg = {});

/// Dispatches on op.side, evaluating the operator at x.
quad::QuadResult apply(const FracOperatorSpec& op, const quad::Integrand& f, double x,
                       const quad::QuadConfig& cfg = {});

}  // namespace fracineq::fracint
