#include <doctest.h>

#include <cmath>

#include "fracineq/catalog.hpp"
#include "fracineq/error.hpp"
#include "fracineq/specfun.hpp"

using namespace fracineq;
using namespace fracineq::catalog;

namespace {

const quad::QuadConfig kTight{1e-13, 1e-13, 4000, {}};

Scenario square_scenario() {
  Scenario s;
  s.f = FunctionSpec::poly({0.0, 0.0, 1.0});
  s.a = 0.0;
  s.b = 1.0;
  s.alpha = 1.0;
  s.h = HClass::identity();
  s.map = InvexityMap::difference(1.0);
  s.quad_cfg.abs_tol = 1e-13;
  s.quad_cfg.rel_tol = 1e-13;
  return s;
}

}  // namespace

TEST_SUITE("catalog") {

TEST_CASE("ids render and parse") {
  CHECK(to_string(InequalityId::T3_2) == "T3.2");
  CHECK(to_string(InequalityId::T3_19_printed) == "T3.19-printed");
  CHECK(to_string(CorollaryId::C3_17) == "C3.17");
  CHECK(parse_inequality_id("T3_10") == InequalityId::T3_10);
  CHECK(parse_inequality_id("T3.23") == InequalityId::T3_23);
  CHECK(parse_corollary_id("C3_4") == CorollaryId::C3_4);
  CHECK_THROWS_AS(parse_inequality_id("T9.9"), ParseError);
  CHECK_THROWS_AS(parse_corollary_id("C3.6"), ParseError);
  for (auto id : kCorollaries) CHECK(parse_corollary_id(to_string(id)) == id);
}

TEST_CASE("corollary grouping follows the h-case order") {
  const HCase order[] = {HCase::identity, HCase::power_s, HCase::one};
  for (std::size_t i = 0; i < kCorollaries.size(); ++i) {
    const auto info = corollary_info(kCorollaries[i]);
    CHECK(info.h_case == order[i % 3]);
    CHECK(info.needs_s == (info.h_case == HCase::power_s));
    CHECK(corollary_for(info.theorem, info.h_case) == kCorollaries[i]);
  }
  CHECK_FALSE(corollary_for(InequalityId::T3_19_printed, HCase::one).has_value());
}

TEST_CASE("kernel integral examples") {
  CHECK(std::abs(weight_integral_W1(HClass::one(), 1.0, kTight).value - 0.5) < 1e-12);
  CHECK(std::abs(weight_integral_W1(HClass::identity(), 1.0, kTight).value - 0.25) < 1e-12);
  CHECK(std::abs(weight_integral_W1(HClass::identity(), 2.0, kTight).value - 0.25) < 1e-12);
  CHECK(std::abs(weight_integral_W2(HClass::one(), 1.0, kTight).value - 1.0 / 6.0) < 1e-12);
  CHECK(std::abs(weight_integral_W2(HClass::identity(), 1.0, kTight).value - 1.0 / 12.0) < 1e-12);
  CHECK(std::abs(weight_integral_W2(HClass::power(1.0), 1.0, kTight).value - 1.0 / 12.0) < 1e-12);
  CHECK(std::abs(h_integral(HClass::power(0.25), kTight).value - 0.8) < 1e-12);
}

TEST_CASE("kernel integrals are positive; W1(one) vanishes at both ends of the alpha range") {
  // W1(one, alpha) = 2(1 - 2^-alpha)/(alpha+1): ~ 2 alpha ln 2 near 0, ~ 2/alpha for large alpha.
  for (double alpha : {1e-4, 0.01, 0.1, 0.5, 1.0, 2.0, 5.0, 20.0, 200.0}) {
    const double w = weight_integral_W1(HClass::one(), alpha, kTight).value;
    CHECK(std::abs(w - 2.0 / (alpha + 1.0) * (1.0 - std::pow(2.0, -alpha))) < 1e-12);
    for (const auto& h : {HClass::identity(), HClass::power(0.3), HClass::one()}) {
      CHECK(weight_integral_W1(h, alpha).value > 0.0);
      CHECK(weight_integral_W2(h, alpha).value > 0.0);
    }
  }
  CHECK(weight_integral_W1(HClass::one(), 1e-4, kTight).value < 2e-4);
  CHECK(weight_integral_W1(HClass::one(), 200.0, kTight).value < 0.01);
  // increasing up to the maximum near alpha ~ 1.5, decreasing after
  double prev = 0.0;
  for (double alpha = 0.05; alpha <= 1.0; alpha += 0.05) {
    const double w = weight_integral_W1(HClass::one(), alpha, kTight).value;
    CHECK(w > prev);
    prev = w;
  }
  prev = 1.0;
  for (double alpha = 2.0; alpha <= 40.0; alpha += 2.0) {
    const double w = weight_integral_W1(HClass::one(), alpha, kTight).value;
    CHECK(w < prev);
    prev = w;
  }
}

TEST_CASE("W1 symmetry under h reflection") {
  // W1(h) + W1(h(1-.)) = W1(h + h(1-.)); all three weights are piecewise
  // linear, the sum with knots at the union of both knot sets.
  const auto h = HClass::tabulated({{0.0, 0.1}, {0.3, 0.9}, {1.0, 0.4}});
  const auto h_ref = HClass::tabulated({{0.0, 0.4}, {0.7, 0.9}, {1.0, 0.1}});
  std::vector<std::pair<double, double>> knots;
  for (double t : {0.0, 0.3, 0.7, 1.0}) knots.emplace_back(t, h(t) + h_ref(t));
  const auto sum = HClass::tabulated(knots);
  for (double alpha : {0.4, 1.0, 2.5}) {
    const double lhs = weight_integral_W1(h, alpha).value + weight_integral_W1(h_ref, alpha).value;
    CHECK(std::abs(lhs - weight_integral_W1(sum, alpha).value) < 1e-10);
    // the kernel is symmetric under t -> 1-t
    CHECK(std::abs(weight_integral_W1(h, alpha).value - weight_integral_W1(h_ref, alpha).value) < 1e-10);
  }
}

TEST_CASE("lemma residual examples") {
  const Scenario sq = square_scenario();
  CHECK(lemma_residual(1, sq) < 1e-9);
  const auto detail = lemma_residual_detail(1, sq);
  CHECK(std::abs(detail.lhs - 1.0 / 3.0) < 1e-9);
  CHECK(std::abs(detail.rhs - 1.0 / 3.0) < 1e-9);

  Scenario constant = sq;
  constant.f = FunctionSpec::poly({2.5});
  constant.alpha = 0.7;
  constant.map = InvexityMap::affine(1.5, 0.5);
  CHECK(lemma_residual(1, constant) < 1e-13);
  CHECK(lemma_residual(2, constant) < 1e-13);

  Scenario cube = sq;
  cube.f = FunctionSpec::poly({0.0, 0.0, 0.0, 1.0});
  cube.alpha = 0.5;
  CHECK(lemma_residual(2, cube) <= 1e-7);
}

TEST_CASE("lemma residual invariant under shifts preserving the step") {
  Scenario base = square_scenario();
  base.f = FunctionSpec::exp_scaled(0.8);
  base.alpha = 0.6;
  base.map = InvexityMap::difference(0.5);
  const double step = base.step();
  for (double shift : {-1.0, 0.3, 2.0}) {
    Scenario moved = base;
    moved.a = base.a + shift;
    moved.map = InvexityMap::affine(2.0, 0.5);
    moved.b = moved.a + step;  // affine:2 with lambda 1/2 keeps lambda*eta = step
    CHECK(std::abs(moved.step() - step) < 1e-15);
    CHECK(lemma_residual(1, moved) < 1e-9);
    CHECK(lemma_residual(2, moved) < 1e-9);
  }
}

TEST_CASE("bound examples") {
  const Scenario sq = square_scenario();
  const auto t2 = eval_inequality(InequalityId::T3_2, sq);
  CHECK(std::abs(t2.lhs - 1.0 / 3.0) < 1e-9);
  CHECK(std::abs(t2.rhs - 0.5) < 1e-9);
  CHECK(std::abs(t2.margin - 1.0 / 6.0) < 1e-9);
  CHECK(t2.holds);
  CHECK_FALSE(t2.waived);
  CHECK(t2.scenario_digest == sq.digest());

  Scenario one = sq;
  one.h = HClass::one();
  const auto t15 = eval_inequality(InequalityId::T3_15, one);
  CHECK(std::abs(t15.lhs - 1.0 / 3.0) < 1e-9);
  CHECK(std::abs(t15.rhs - 2.0 / 3.0) < 1e-9);
  CHECK(t15.holds);
}

TEST_CASE("constant functions hold with margin equal to rhs") {
  Scenario c = square_scenario();
  c.f = FunctionSpec::poly({4.0});
  for (auto id : kTheorems) {
    const auto r = eval_inequality(id, c);
    CHECK(r.holds);
    CHECK(std::abs(r.lhs) < 1e-12);
    CHECK(r.rhs >= 0.0);
    CHECK(std::abs(r.margin - (r.rhs - r.lhs)) < 1e-15);
  }
}

TEST_CASE("certification gate") {
  Scenario s = square_scenario();
  s.f = FunctionSpec::poly({0.0, 0.0, 0.5, -1.0 / 3.0});  // |f'| = |t - t^2| is concave on [0,1]
  CHECK_FALSE(certify_for(InequalityId::T3_2, s).holds);
  CHECK_THROWS_AS(eval_inequality(InequalityId::T3_2, s), CertificationMissing);
  const auto waived = eval_inequality(InequalityId::T3_2, s, true);
  CHECK(waived.waived);
  CHECK(std::isfinite(waived.rhs));
}

TEST_CASE("holds follows the tolerance rule") {
  for (auto id : kTheorems) {
    Scenario s = square_scenario();
    s.f = FunctionSpec::exp_scaled(1.3);
    s.alpha = 0.4;
    s.p = 3.0;
    const auto r = eval_inequality(id, s);
    const bool expected = r.lhs <= r.rhs + r.quad_error + kHoldsRelativeSlack * std::max(1.0, std::abs(r.rhs));
    CHECK(r.holds == expected);
    CHECK(std::isfinite(r.margin));
  }
}

TEST_CASE("printed T3.19 differs from the proof form by alpha + 1") {
  Scenario s = square_scenario();
  s.f = FunctionSpec::poly({0.0, 0.0, 0.0, 0.0, 1.0});
  for (double alpha : {0.5, 1.0, 2.5}) {
    s.alpha = alpha;
    const auto proof = eval_inequality(InequalityId::T3_19, s);
    const auto printed = eval_inequality(InequalityId::T3_19_printed, s);
    CHECK(printed.rhs / proof.rhs == doctest::Approx(alpha + 1.0).epsilon(1e-12));
    CHECK(printed.lhs == proof.lhs);
  }
}

TEST_CASE("triangle chain for T3.2") {
  // rhs >= L int |t^a - (1-t)^a| |f'(a+tL)| dt >= lhs
  Scenario s = square_scenario();
  s.f = FunctionSpec::poly({1.0, 1.0, 0.5, 0.2, 0.1});
  s.b = 2.0;
  s.alpha = 0.7;
  s.map = InvexityMap::difference(0.5);
  const double L = s.step();
  quad::QuadConfig cfg = s.quad_cfg.with_breakpoints({0.5});
  const double middle =
      L * quad::integrate(
              [&](double t) {
                return std::abs(std::pow(t, s.alpha) - std::pow(1 - t, s.alpha)) * std::abs(s.f.derivative(1, s.a + t * L));
              },
              0.0, 1.0, cfg)
              .value;
  const auto r = eval_inequality(InequalityId::T3_2, s);
  CHECK(r.lhs <= middle + 1e-12);
  CHECK(middle <= r.rhs + 1e-12);
}

TEST_CASE("corollary constants as printed") {
  CHECK(corollary_constant(CorollaryId::C3_3, 1.0) == doctest::Approx(7.0 / 24.0).epsilon(1e-14));
  CHECK(corollary_constant(CorollaryId::C3_18, 1.0) == doctest::Approx(1.0 / 6.0).epsilon(1e-14));
  CHECK(corollary_constant(CorollaryId::C3_5, 1.0) == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(corollary_constant(CorollaryId::C3_16, 1.0) == doctest::Approx(1.0 / 12.0).epsilon(1e-14));
  const double a = 1.5, s = 0.5;
  const double bh1 = specfun::incomplete_beta_lower(0.5, a + 1, s + 1).value;
  const double bh2 = specfun::incomplete_beta_lower(0.5, s + 1, a + 1).value;
  CHECK(corollary_constant(CorollaryId::C3_4, a, s) ==
        doctest::Approx(bh1 - bh2 + (1 - std::pow(2.0, -(s + a))) / (a + s + 1)).epsilon(1e-14));
  CHECK_THROWS_AS(corollary_constant(CorollaryId::C3_4, 1.0), MissingParameter);
  CHECK_THROWS_AS(corollary_constant(CorollaryId::C3_9, 1.0, std::nullopt, std::nullopt), MissingParameter);
  CHECK_NOTHROW(corollary_constant(CorollaryId::C3_9, 1.0, std::nullopt, 2.0));
}

TEST_CASE("generic constants at known points") {
  const auto cfg = quad::QuadConfig{1e-13, 1e-13, 4000, {}};
  CHECK(std::abs(generic_constant(CorollaryId::C3_3, 1.0, std::nullopt, std::nullopt, cfg).value - 0.25) < 1e-12);
  CHECK(std::abs(generic_constant(CorollaryId::C3_18, 1.0, std::nullopt, std::nullopt, cfg).value - 1.0 / 6.0) <
        1e-12);
}

TEST_CASE("reduction examples") {
  Scenario s = square_scenario();
  s.f = FunctionSpec::exp_scaled(1.0);
  s.h = HClass::one();
  const auto r18 = reduction_check(ReductionKind::alpha_one, s, InequalityId::T3_15);
  CHECK(r18.corollary == CorollaryId::C3_18);
  CHECK(r18.max_abs_discrepancy <= 1e-10);
  const auto r5 = reduction_check(ReductionKind::alpha_one, s, InequalityId::T3_2);
  CHECK(r5.corollary == CorollaryId::C3_5);
  CHECK(r5.max_abs_discrepancy <= 1e-10);

  const Scenario sq = square_scenario();
  CHECK(reduction_check(ReductionKind::phi_zero, sq).max_abs_discrepancy < 1e-9);
  CHECK(reduction_check(ReductionKind::both, sq).max_abs_discrepancy < 1e-9);

  Scenario tab = sq;
  tab.h = HClass::tabulated({{0.0, 0.0}, {0.5, 0.6}, {1.0, 1.0}});
  CHECK_FALSE(reduction_check(ReductionKind::alpha_one, tab).applicable);
}

}  // TEST_SUITE
