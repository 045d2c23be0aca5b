#include <doctest.h>

#include <cmath>

#include "fracineq/error.hpp"
#include "fracineq/quad.hpp"
#include "fracineq/rng.hpp"

using namespace fracineq;
using namespace fracineq::quad;

TEST_SUITE("quad") {

TEST_CASE("basic integrals") {
  CHECK(std::abs(integrate([](double) { return 1.0; }, 0.0, 1.0).value - 1.0) < 1e-14);

  QuadConfig kinked;
  kinked.forced_breakpoints = {0.5};
  const auto tri = integrate([](double t) { return std::abs(1.0 - 2.0 * t); }, 0.0, 1.0, kinked);
  CHECK(tri.converged);
  CHECK(std::abs(tri.value - 0.5) < 1e-14);

  const auto rsqrt = [](double t) { return 1.0 / std::sqrt(t); };
  const QuadConfig defaults;
  const auto sing = integrate(rsqrt, 0.0, 1.0);
  CHECK(sing.converged);
  CHECK(std::abs(sing.value - 2.0) <= std::max(defaults.abs_tol, defaults.rel_tol * sing.value));
  QuadConfig finer;
  finer.rel_tol = 1e-9;
  CHECK(std::abs(integrate(rsqrt, 0.0, 1.0, finer).value - 2.0) < 1e-8);
}

TEST_CASE("empty and reversed intervals") {
  const auto empty = integrate([](double) { return 3.0; }, 2.0, 2.0);
  CHECK(empty.value == 0.0);
  CHECK(empty.converged);
  CHECK_THROWS_AS(integrate([](double) { return 1.0; }, 1.0, 0.0), PreconditionError);
}

TEST_CASE("config validation") {
  QuadConfig bad;
  bad.abs_tol = 0.0;
  CHECK_THROWS_AS(bad.validate(), PreconditionError);
  QuadConfig bad_rel;
  bad_rel.rel_tol = -1.0;
  CHECK_THROWS_AS(integrate([](double) { return 1.0; }, 0.0, 1.0, bad_rel), PreconditionError);
}

TEST_CASE("non-convergence is flagged, not thrown") {
  QuadConfig tight;
  tight.abs_tol = 1e-300;
  tight.rel_tol = 1e-300;
  tight.max_subdivisions = 20;
  const auto r = integrate([](double t) { return std::sin(1.0 / (t + 1e-3)); }, 0.0, 1.0, tight);
  CHECK_FALSE(r.converged);
  CHECK(r.subdivisions <= tight.max_subdivisions);
  CHECK(std::isfinite(r.value));
}

TEST_CASE("converged results honour the requested tolerance") {
  CounterRng rng(3, 0);
  for (int i = 0; i < 50; ++i) {
    const double k = rng.uniform(0.5, 20.0);
    QuadConfig cfg;
    cfg.abs_tol = 1e-11;
    cfg.rel_tol = 1e-10;
    const auto r = integrate([&](double t) { return std::cos(k * t) * std::exp(-t); }, 0.0, 3.0, cfg);
    REQUIRE(r.converged);
    CHECK(r.abs_error_estimate <= std::max(cfg.abs_tol, cfg.rel_tol * std::abs(r.value)));
    const double exact = (std::exp(-3.0) * (k * std::sin(3.0 * k) - std::cos(3.0 * k)) + 1.0) / (1.0 + k * k);
    CHECK(std::abs(r.value - exact) <= std::max(cfg.abs_tol, cfg.rel_tol * std::abs(r.value)));
  }
}

TEST_CASE("power kernel examples") {
  const auto one = [](double) { return 1.0; };
  CHECK(std::abs(integrate_power_kernel(one, 1.0, 0.0, 0.5, Side::left).value - 2.0) < 1e-10);
  CHECK(std::abs(integrate_power_kernel(one, 1.0, 0.0, 2.0, Side::left).value - 0.5) < 1e-12);
  // B(2, 1/2) = 4/3
  const auto id = [](double t) { return t; };
  CHECK(std::abs(integrate_power_kernel(id, 1.0, 0.0, 0.5, Side::left).value - 4.0 / 3.0) < 1e-10);
  // right side mirror: int_0^1 (t-0)^(-1/2) (1-t) dt = B(1/2, 2) = 4/3
  CHECK(std::abs(integrate_power_kernel([](double t) { return 1.0 - t; }, 0.0, 1.0, 0.5, Side::right).value -
                 4.0 / 3.0) < 1e-10);
}

TEST_CASE("power kernel preconditions") {
  const auto one = [](double) { return 1.0; };
  CHECK_THROWS_AS(integrate_power_kernel(one, 1.0, 0.0, 0.0, Side::left), DomainError);
  CHECK_THROWS_AS(integrate_power_kernel(one, 1.0, 1.0, 0.5, Side::left), PreconditionError);
  CHECK_THROWS_AS(integrate_power_kernel(one, 1.0, 2.0, 0.5, Side::left), PreconditionError);
  CHECK_THROWS_AS(integrate_power_kernel(one, 1.0, 0.0, 0.5, Side::right), PreconditionError);
}

TEST_CASE("substitution agrees with a truncated naive integral") {
  // The excluded piece [x-eps, x] is g(x) eps^alpha / alpha + O(eps^(alpha+1)).
  const double eps = 1e-6;
  for (double alpha : {0.3, 0.5, 0.8}) {
    const auto g = [](double t) { return std::exp(t) * (1.0 + t * t); };
    const double x = 1.5;
    const double lo = 0.25;
    const auto sub = integrate_power_kernel(g, x, lo, alpha, Side::left);
    QuadConfig cfg;
    cfg.max_subdivisions = 20000;
    const auto naive =
        integrate([&](double t) { return std::pow(x - t, alpha - 1.0) * g(t); }, lo, x - eps, cfg);
    const double tail = g(x) * std::pow(eps, alpha) / alpha;
    CHECK(std::abs(sub.value - (naive.value + tail)) < 1e-4 * std::max(1.0, std::abs(sub.value)));
  }
}

}  // TEST_SUITE
