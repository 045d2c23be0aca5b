#pragma once

#include <functional>
#include <limits>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "fracineq/quad.hpp"

namespace fracineq {

struct Interval {
  double lo = -std::numeric_limits<double>::infinity();
  double hi = std::numeric_limits<double>::infinity();

  bool contains(double x) const { return x >= lo && x <= hi; }
  friend bool operator==(const Interval&, const Interval&) = default;
};

// ---------------------------------------------------------------------------
// h-classes
// ---------------------------------------------------------------------------

/// The multiplier h in f(u + t*lambda*eta(v,u)) <= h(1-t) f(u) + h(t) f(v).
class HClass {
 public:
  struct Identity {
    friend bool operator==(const Identity&, const Identity&) = default;
  };
  struct Power {
    double s;
    friend bool operator==(const Power&, const Power&) = default;
  };
  struct One {
    friend bool operator==(const One&, const One&) = default;
  };
  /// Piecewise-linear through (t, value) knots spanning [0,1].
  struct Tabulated {
    std::vector<std::pair<double, double>> knots;
    friend bool operator==(const Tabulated&, const Tabulated&) = default;
  };
  using Kind = std::variant<Identity, Power, One, Tabulated>;

  static HClass identity() { return HClass(Identity{}); }
  /// Throws DomainError unless s in (0,1].
  static HClass power(double s);
  static HClass one() { return HClass(One{}); }
  /// Throws DomainError unless knots start at 0, end at 1, increase strictly
  /// in t and carry non-negative values.
  static HClass tabulated(std::vector<std::pair<double, double>> knots);

  /// h(t), t in [0,1]; throws DomainError outside.
  double operator()(double t) const;

  /// Interior knots where h is kinked (tabulated only).
  std::vector<double> breakpoints() const;

  const Kind& kind() const { return kind_; }

  /// Grammar form: id | pow:s | one | tab:t0=v0,t1=v1,...
  std::string render() const;

  friend bool operator==(const HClass&, const HClass&) = default;

 private:
  explicit HClass(Kind k) : kind_(std::move(k)) {}
  Kind kind_;
};

double h_eval(const HClass& h, double t);

// ---------------------------------------------------------------------------
// Invexity maps
// ---------------------------------------------------------------------------

/// eta(v,u) together with the real factor lambda in (0,1] that stands in for
/// e^{i phi}; lambda = 1 is phi = 0.
class InvexityMap {
 public:
  struct Difference {
    friend bool operator==(const Difference&, const Difference&) = default;
  };
  /// eta(v,u) = c (v - u), c > 0.
  struct Affine {
    double c;
    friend bool operator==(const Affine&, const Affine&) = default;
  };
  struct Custom {
    std::function<double(double, double)> eta;
    std::string label;
    friend bool operator==(const Custom& x, const Custom& y) { return x.label == y.label; }
  };
  using Kind = std::variant<Difference, Affine, Custom>;

  InvexityMap() = default;
  /// Throws DomainError unless lambda in (0,1] (and c > 0 for affine).
  InvexityMap(Kind eta_kind, double lambda);

  static InvexityMap difference(double lambda = 1.0) { return {Difference{}, lambda}; }
  static InvexityMap affine(double c, double lambda = 1.0) { return {Affine{c}, lambda}; }

  double eta(double v, double u) const;
  double lambda() const { return lambda_; }
  const Kind& kind() const { return kind_; }

  /// Grammar form of the eta part: diff | affine:c | custom label.
  std::string render_eta() const;

  friend bool operator==(const InvexityMap&, const InvexityMap&) = default;

 private:
  Kind kind_ = Difference{};
  double lambda_ = 1.0;
};

/// a + t*lambda*eta(b,a). Throws PreconditionError if eta(b,a) <= 0 and
/// DomainError if t is outside [0,1].
double displaced_point(const InvexityMap& map, double a, double b, double t);

// ---------------------------------------------------------------------------
// Test functions
// ---------------------------------------------------------------------------

/// A test function with analytic first and second derivatives.
///
/// Built-in families and why they suit the theorems on [0, inf):
///  - poly with non-negative coefficients: every derivative is again a
///    non-negative-coefficient polynomial, hence non-negative, increasing and
///    convex, so |f'|, |f''| and their powers >= 1 are h-preinvex for every
///    h >= t as long as lambda*eta(v,u) <= v - u;
///  - exp:k, k > 0: f^(n) = k^n e^{kx}, same argument;
///  - powabs:k, k >= 2: |f'| = k x^{k-1} is convex; |f''| is convex only for
///    k >= 3 or k = 2, the certifier decides case by case.
class FunctionSpec {
 public:
  struct Poly {
    std::vector<double> coeffs;  // c0 + c1 x + c2 x^2 + ...
    friend bool operator==(const Poly&, const Poly&) = default;
  };
  /// e^{k x}
  struct ExpScaled {
    double k;
    friend bool operator==(const ExpScaled&, const ExpScaled&) = default;
  };
  /// |x|^k, k >= 2
  struct PowerAbs {
    double k;
    friend bool operator==(const PowerAbs&, const PowerAbs&) = default;
  };
  struct Custom {
    std::function<double(double)> f;
    std::function<double(double)> first;   // may be empty
    std::function<double(double)> second;  // may be empty
    std::string label;
    friend bool operator==(const Custom& x, const Custom& y) { return x.label == y.label; }
  };
  using Family = std::variant<Poly, ExpScaled, PowerAbs, Custom>;

  FunctionSpec() : FunctionSpec(Poly{{0.0}}) {}
  /// Throws DomainError for powabs with k < 2 or an empty polynomial.
  explicit FunctionSpec(Family family, Interval domain = {});

  static FunctionSpec poly(std::vector<double> coeffs) { return FunctionSpec(Poly{std::move(coeffs)}); }
  static FunctionSpec exp_scaled(double k) { return FunctionSpec(ExpScaled{k}); }
  static FunctionSpec power_abs(double k) { return FunctionSpec(PowerAbs{k}); }

  double value(double x) const;
  /// order in {0,1,2}; throws UnavailableDerivative for a custom spec lacking it.
  double derivative(int order, double x) const;
  bool has_derivative(int order) const;

  const Family& family() const { return family_; }
  const Interval& domain() const { return domain_; }
  FunctionSpec with_domain(Interval d) const;

  /// Grammar form: poly:c0,c1,... | exp:k | powabs:k | custom label.
  std::string render() const;

  friend bool operator==(const FunctionSpec&, const FunctionSpec&) = default;

 private:
  Family family_;
  Interval domain_;
};

/// t -> |f^(order)(t)|^q_exp. Throws DomainError for order outside {1,2} or
/// q_exp < 1, UnavailableDerivative when the derivative is missing.
std::function<double(double)> derivative_magnitude_power(const FunctionSpec& spec, int order,
                                                         double q_exp);

// ---------------------------------------------------------------------------
// Certification
// ---------------------------------------------------------------------------

struct Certification {
  bool holds = true;
  /// max over the grid of LHS - RHS (negative when every point holds strictly).
  double worst_violation = -std::numeric_limits<double>::infinity();
  struct Witness {
    double u = 0.0;
    double v = 0.0;
    double t = 0.0;
  } witness;
};

constexpr double kCertificationTolerance = 1e-12;

/// Grid check of g(u + t*lambda*eta(v,u)) <= h(1-t) g(u) + h(t) g(v) over
/// grid_n^2 pairs (u,v) in the interval with eta(v,u) > 0 and grid_n values
/// of t in [0,1]. Tolerance is kCertificationTolerance*max(1, |rhs|).
/// Throws PreconditionError for grid_n < 3.
Certification certify_h_preinvex(const std::function<double(double)>& g, const HClass& h,
                                 const InvexityMap& map, Interval interval, int grid_n);

// ---------------------------------------------------------------------------
// Scenario
// ---------------------------------------------------------------------------

/// One fully bound verification instance.
struct Scenario {
  FunctionSpec f;
  double a = 0.0;
  double b = 1.0;
  double alpha = 1.0;
  double p = 2.0;  // Hoelder exponent; q = p/(p-1)
  HClass h = HClass::identity();
  InvexityMap map;
  quad::QuadConfig quad_cfg;

  double q() const { return p / (p - 1.0); }
  /// lambda * eta(b,a)
  double step() const { return map.lambda() * map.eta(b, a); }
  /// a + lambda * eta(b,a)
  double displaced_end() const { return a + step(); }

  /// Throws PreconditionError / DomainError when an invariant fails:
  /// eta(b,a) > 0, alpha > 0, p > 1, [a, a + lambda eta] inside f's domain.
  void validate() const;

  /// Canonical single-line text form (stable across runs).
  std::string describe() const;
  /// Opaque id: FNV-1a of describe().
  std::string digest() const;
};

// ---------------------------------------------------------------------------
// Text grammar
// ---------------------------------------------------------------------------

FunctionSpec parse_function_spec(std::string_view text);
HClass parse_hclass(std::string_view text);
/// eta text: diff | affine:c
InvexityMap parse_invexity_map(std::string_view eta_text, double lambda);

}  // namespace fracineq
