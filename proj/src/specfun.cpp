#include "fracineq/specfun.hpp"

#include <boost/math/special_functions/beta.hpp>
#include <boost/math/special_functions/gamma.hpp>
#include <cmath>
#include <limits>

#include "fracineq/error.hpp"
#include "fracineq/quad.hpp"

namespace fracineq::specfun {
namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kTiny = 1e-300;
constexpr int kMaxFractionTerms = 1000;
constexpr double kSmallShape = 0.05;

struct Fraction {
  double value;
  double last_ratio;
};

// Modified Lentz evaluation of the continued fraction whose product with
// x^p (1-x)^q / p is the lower incomplete Beta. Converges fast for
// x < (p+1)/(p+q+2).
Fraction beta_continued_fraction(double x, double p, double q) {
  const double qab = p + q;
  const double qap = p + 1.0;
  const double qam = p - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::abs(d) < kTiny) d = kTiny;
  d = 1.0 / d;
  double h = d;
  double ratio = 0.0;
  for (int m = 1; m <= kMaxFractionTerms; ++m) {
    const double m2 = 2.0 * m;
    double aa = m * (q - m) * x / ((qam + m2) * (p + m2));
    d = 1.0 + aa * d;
    if (std::abs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::abs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    h *= d * c;
    aa = -(p + m) * (qab + m) * x / ((p + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::abs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::abs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    ratio = d * c;
    h *= ratio;
    if (std::abs(ratio - 1.0) < kEps) break;
  }
  return {h, ratio};
}

// x^p (1-x)^q / p * fraction, evaluated in log space.
SpecfunResult lower_tail(double x, double p, double q) {
  const Fraction cf = beta_continued_fraction(x, p, q);
  const double front = std::exp(p * std::log(x) + q * std::log1p(-x)) / p;
  const double value = front * cf.value;
  const double err = std::abs(value) * (std::abs(cf.last_ratio - 1.0) + 64.0 * kEps);
  return {value, err};
}

SpecfunResult by_quadrature(double x, double p, double q) {
  quad::QuadConfig cfg;
  cfg.abs_tol = 1e-15;
  cfg.rel_tol = 1e-14;
  cfg.max_subdivisions = 4000;

  const double split = std::min(x, 0.5);
  // t = u^(1/p) absorbs t^(p-1).
  auto near_zero = [&](double u) {
    return std::pow(-std::expm1(std::log(u) / p), q - 1.0) / p;
  };
  quad::QuadResult lower = quad::integrate(near_zero, 0.0, std::pow(split, p), cfg);
  double value = lower.value;
  double err = lower.abs_error_estimate;
  if (x > 0.5) {
    // 1 - t = v^(1/q) absorbs (1-t)^(q-1).
    auto near_one = [&](double v) {
      return std::pow(-std::expm1(std::log(v) / q), p - 1.0) / q;
    };
    quad::QuadResult upper =
        quad::integrate(near_one, std::pow(1.0 - x, q), std::pow(0.5, q), cfg);
    value += upper.value;
    err += upper.abs_error_estimate;
  }
  return {value, err + 16.0 * kEps * std::abs(value)};
}

}  // namespace

SpecfunResult gamma(double x) {
  if (!(x > 0.0)) throw DomainError("gamma: argument must be positive");
  if (x > max_gamma_argument()) throw OverflowError("gamma: argument overflows double");
  const double value = boost::math::tgamma(x);
  return {value, 4.0 * kEps * std::abs(value)};
}

SpecfunResult log_gamma(double x) {
  if (!(x > 0.0)) throw DomainError("log_gamma: argument must be positive");
  const double value = boost::math::lgamma(x);
  return {value, 4.0 * kEps * std::max(1.0, std::abs(value))};
}

SpecfunResult beta(double p, double q) {
  if (!(p > 0.0) || !(q > 0.0)) throw DomainError("beta: shapes must be positive");
  const double value = boost::math::beta(p, q);
  return {value, 8.0 * kEps * std::abs(value)};
}

SpecfunResult incomplete_beta_lower(double x, double p, double q) {
  if (!(p > 0.0) || !(q > 0.0)) {
    throw DomainError("incomplete_beta_lower: shapes must be positive");
  }
  if (!(x >= 0.0 && x <= 1.0)) {
    throw DomainError("incomplete_beta_lower: x must lie in [0,1]");
  }
  if (x == 0.0) return {0.0, 0.0};
  if (p < kSmallShape || q < kSmallShape) return by_quadrature(x, p, q);
  if (x == 1.0) return beta(p, q);

  if (x < (p + 1.0) / (p + q + 2.0)) return lower_tail(x, p, q);

  // Upper tail by symmetry: B_x(p,q) = B(p,q) - B_{1-x}(q,p).
  const SpecfunResult complete = beta(p, q);
  const SpecfunResult tail = lower_tail(1.0 - x, q, p);
  return {complete.value - tail.value,
          complete.abs_error_estimate + tail.abs_error_estimate +
              4.0 * kEps * complete.value};
}

}  // namespace fracineq::specfun
