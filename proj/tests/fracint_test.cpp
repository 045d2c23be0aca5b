#include <doctest.h>

#include <cmath>

#include "fracineq/error.hpp"
#include "fracineq/fracint.hpp"
#include "fracineq/specfun.hpp"

using namespace fracineq;
namespace {

const quad::QuadConfig kTight{1e-13, 1e-13, 4000, {}};

quad::QuadResult rl_left(const quad::Integrand& f, double a, double x, double alpha) {
  return fracint::rl_left(f, a, x, alpha, kTight);
}
quad::QuadResult rl_right(const quad::Integrand& f, double x, double b, double alpha) {
  return fracint::rl_right(f, x, b, alpha, kTight);
}

double power_rule(int k, double alpha, double span) {
  return specfun::gamma(k + 1.0).value / specfun::gamma(k + 1.0 + alpha).value * std::pow(span, k + alpha);
}

bool close(double got, double want, double rel) { return std::abs(got - want) <= rel * std::max(1.0, std::abs(want)); }

}  // namespace

TEST_SUITE("fracint") {

TEST_CASE("left operator examples") {
  const auto one = [](double) { return 1.0; };
  const auto id = [](double t) { return t; };
  CHECK(close(rl_left(one, 0.0, 1.0, 0.5).value, 1.1283791670955126, 1e-12));
  CHECK(close(rl_left(id, 0.0, 1.0, 1.0).value, 0.5, 1e-12));
  CHECK(close(rl_left(id, 0.0, 1.0, 0.5).value, 0.7522527780636751, 1e-12));
  for (double alpha : {0.2, 1.0, 2.7}) {
    CHECK(close(rl_left(one, 0.0, 1.0, alpha).value, 1.0 / specfun::gamma(alpha + 1.0).value, 1e-12));
  }
}

TEST_CASE("right operator examples") {
  CHECK(close(rl_right([](double) { return 1.0; }, 0.0, 1.0, 0.5).value, 1.1283791670955126, 1e-12));
  CHECK(close(rl_right([](double t) { return 1.0 - t; }, 0.0, 1.0, 0.5).value, 0.7522527780636751, 1e-12));
  const double c = 3.5;
  CHECK(close(rl_right([&](double) { return c; }, 0.5, 2.0, 1.3).value,
              c * std::pow(1.5, 1.3) / specfun::gamma(2.3).value, 1e-12));
}

TEST_CASE("non-polynomial integrands against high-precision values") {
  // mpmath quad at 40 digits
  CHECK(close(rl_left([](double t) { return std::exp(t); }, 0.0, 1.0, 0.5).value, 2.2906982523032382309, 1e-10));
  CHECK(close(rl_right([](double t) { return std::exp(t); }, 0.0, 1.0, 0.3).value, 1.4647743966341728664, 1e-10));
  CHECK(close(rl_left([](double t) { return std::pow(std::abs(t), 3.5); }, 0.5, 2.0, 2.5).value,
              1.0190943042199494021, 1e-10));
}

TEST_CASE("alpha zero is the identity") {
  const auto f = [](double t) { return std::sin(t) + 2.0; };
  CHECK(rl_left(f, 0.0, 1.3, 0.0).value == f(1.3));
  CHECK(rl_right(f, 0.2, 1.0, 0.0).value == f(0.2));
  CHECK(rl_left(f, 0.0, 1.3, 0.0).abs_error_estimate == 0.0);
}

TEST_CASE("domain errors") {
  const auto one = [](double) { return 1.0; };
  CHECK_THROWS_AS(rl_left(one, 1.0, 1.0, 0.5), DomainError);
  CHECK_THROWS_AS(rl_left(one, 1.0, 0.5, 0.5), DomainError);
  CHECK_THROWS_AS(rl_left(one, 0.0, 1.0, -0.1), DomainError);
  CHECK_THROWS_AS(rl_right(one, 1.0, 1.0, 0.5), DomainError);
  CHECK_THROWS_AS(rl_right(one, 0.0, 1.0, -1.0), DomainError);
}

TEST_CASE("apply dispatches on side") {
  const auto f = [](double t) { return t * t; };
  fracint::FracOperatorSpec left{0.7, quad::Side::left, 0.0};
  fracint::FracOperatorSpec right{0.7, quad::Side::right, 2.0};
  CHECK(fracint::apply(left, f, 1.0, kTight).value == rl_left(f, 0.0, 1.0, 0.7).value);
  CHECK(fracint::apply(right, f, 1.0, kTight).value == rl_right(f, 1.0, 2.0, 0.7).value);
}

TEST_CASE("power rule on shifted monomials") {
  for (int k = 0; k <= 3; ++k) {
    for (double alpha : {0.5, 1.0, 1.5, 2.0}) {
      const double a = 0.5;
      const double x = 1.75;
      const auto mono = [&](double t) { return std::pow(t - a, k); };
      CAPTURE(k);
      CAPTURE(alpha);
      CHECK(close(rl_left(mono, a, x, alpha).value, power_rule(k, alpha, x - a), 1e-10));
      const auto mirrored = [&](double t) { return std::pow(x - t, k); };
      CHECK(close(rl_right(mirrored, a, x, alpha).value, power_rule(k, alpha, x - a), 1e-10));
    }
  }
}

TEST_CASE("reflection") {
  const auto f = [](double t) { return std::exp(0.7 * t) + t * t * t; };
  for (double alpha : {0.3, 0.9, 1.6}) {
    const double x = 0.4;
    const double b = 2.1;
    const auto reflected = [&](double t) { return f(x + b - t); };
    CHECK(std::abs(rl_right(f, x, b, alpha).value - rl_left(reflected, x, b, alpha).value) < 1e-9);
  }
}

TEST_CASE("semigroup on monomials") {
  // J^alpha of the closed form J^beta t^k equals J^(alpha+beta) t^k.
  for (int k : {0, 2}) {
    for (auto [alpha, beta] : {std::pair{0.5, 0.5}, std::pair{0.3, 1.2}, std::pair{1.5, 0.7}}) {
      const auto jb = [&](double t) { return t <= 0.0 ? 0.0 : power_rule(k, beta, t); };
      const double x = 1.3;
      CHECK(close(rl_left(jb, 0.0, x, alpha).value, power_rule(k, alpha + beta, x), 1e-8));
    }
  }
}

TEST_CASE("alpha one is ordinary integration and the operator is linear") {
  const auto f = [](double t) { return std::cos(t); };
  const auto g = [](double t) { return t * std::exp(-t); };
  CHECK(std::abs(rl_left(f, 0.0, 1.2, 1.0).value - std::sin(1.2)) < 1e-12);
  const double alpha = 0.6;
  const double lhs = rl_left([&](double t) { return 2.0 * f(t) - 3.0 * g(t); }, 0.1, 1.4, alpha).value;
  const double rhs = 2.0 * rl_left(f, 0.1, 1.4, alpha).value - 3.0 * rl_left(g, 0.1, 1.4, alpha).value;
  CHECK(std::abs(lhs - rhs) < 1e-9);
}

}  // TEST_SUITE
