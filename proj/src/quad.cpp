#include "fracineq/quad.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <queue>

#include "fracineq/error.hpp"

namespace fracineq::quad {
namespace {

// Kronrod abscissae on [-1,1] (non-negative half); odd indices are the
// 7-point Gauss nodes, the last entry is the shared centre.
constexpr std::array<double, 8> kKronrodNodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};

constexpr std::array<double, 8> kKronrodWeights = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};

constexpr std::array<double, 4> kGaussWeights = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Segment {
  double lo;
  double hi;
  double value;
  double error;

  bool operator<(const Segment& other) const { return error < other.error; }
};

Segment gauss_kronrod_15(const Integrand& f, double lo, double hi) {
  const double centre = 0.5 * (lo + hi);
  const double half = 0.5 * (hi - lo);

  const double f_centre = f(centre);
  double kronrod = f_centre * kKronrodWeights[7];
  double gauss = f_centre * kGaussWeights[3];
  for (std::size_t j = 0; j < 7; ++j) {
    const double dx = half * kKronrodNodes[j];
    const double pair = f(centre - dx) + f(centre + dx);
    kronrod += kKronrodWeights[j] * pair;
    if (j % 2 == 1) gauss += kGaussWeights[j / 2] * pair;
  }
  return {lo, hi, kronrod * half, std::abs((kronrod - gauss) * half)};
}

}  // namespace

void QuadConfig::validate() const {
  if (!(abs_tol > 0.0) || !(rel_tol > 0.0)) {
    throw PreconditionError("quadrature tolerances must be positive");
  }
  if (max_subdivisions == 0) {
    throw PreconditionError("max_subdivisions must be at least 1");
  }
}

QuadConfig QuadConfig::with_breakpoints(std::vector<double> points) const {
  QuadConfig out = *this;
  out.forced_breakpoints = std::move(points);
  return out;
}

QuadResult integrate(const Integrand& f, double lo, double hi,
                     const QuadConfig& cfg) {
  cfg.validate();
  if (!(lo <= hi)) {
    throw PreconditionError("invalid interval: lo > hi");
  }
  if (lo == hi) return {0.0, 0.0, 0, true};

  std::vector<double> cuts{lo};
  for (double p : cfg.forced_breakpoints) {
    if (p > lo && p < hi) cuts.push_back(p);
  }
  std::sort(cuts.begin() + 1, cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  cuts.push_back(hi);

  std::priority_queue<Segment> heap;
  double total = 0.0;
  double total_error = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    Segment s = gauss_kronrod_15(f, cuts[i], cuts[i + 1]);
    total += s.value;
    total_error += s.error;
    heap.push(s);
  }

  auto tolerance = [&] { return std::max(cfg.abs_tol, cfg.rel_tol * std::abs(total)); };
  bool exhausted_resolution = false;
  while (total_error > tolerance() && heap.size() < cfg.max_subdivisions &&
         std::isfinite(total)) {
    Segment worst = heap.top();
    const double mid = 0.5 * (worst.lo + worst.hi);
    if (!(mid > worst.lo && mid < worst.hi)) {
      exhausted_resolution = true;
      break;
    }
    heap.pop();
    Segment left = gauss_kronrod_15(f, worst.lo, mid);
    Segment right = gauss_kronrod_15(f, mid, worst.hi);
    total += left.value + right.value - worst.value;
    total_error += left.error + right.error - worst.error;
    heap.push(left);
    heap.push(right);
  }

  QuadResult result;
  result.subdivisions = heap.size();
  // Re-sum to shed the drift of the running updates.
  double value = 0.0;
  double error = 0.0;
  while (!heap.empty()) {
    value += heap.top().value;
    error += heap.top().error;
    heap.pop();
  }
  result.value = value;
  result.abs_error_estimate = error;
  const double tol = std::max(cfg.abs_tol, cfg.rel_tol * std::abs(value));
  result.converged = std::isfinite(value) && std::isfinite(error) &&
                     error <= tol && !exhausted_resolution;
  return result;
}

QuadResult integrate_power_kernel(const Integrand& g, double x, double other,
                                  double alpha, Side side,
                                  const QuadConfig& cfg) {
  if (!(alpha > 0.0)) throw DomainError("power kernel needs alpha > 0");
  const double length = side == Side::left ? x - other : other - x;
  if (!(length > 0.0)) {
    throw PreconditionError("power kernel interval is degenerate or reversed");
  }
  const double lo = side == Side::left ? other : x;
  const double hi = side == Side::left ? x : other;

  if (alpha >= 1.0) {
    auto weighted = [&](double t) {
      return std::pow(std::abs(x - t), alpha - 1.0) * g(t);
    };
    return integrate(weighted, lo, hi, cfg);
  }

  const double inv_alpha = 1.0 / alpha;
  const double w_max = std::pow(length, alpha);
  std::vector<double> mapped;
  mapped.reserve(cfg.forced_breakpoints.size());
  for (double t : cfg.forced_breakpoints) {
    if (t > lo && t < hi) mapped.push_back(std::pow(std::abs(x - t), alpha));
  }
  auto substituted = [&](double w) {
    const double offset = std::min(std::pow(w, inv_alpha), length);
    return inv_alpha * g(side == Side::left ? x - offset : x + offset);
  };
  return integrate(substituted, 0.0, w_max, cfg.with_breakpoints(std::move(mapped)));
}

}  // namespace fracineq::quad
