#include "fracineq/funclasses.hpp"

#include <algorithm>
#include <cmath>

#include "fracineq/error.hpp"
#include "fracineq/format.hpp"

namespace fracineq {
namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

std::vector<std::string_view> split(std::string_view text, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = text.find(sep, start);
    parts.push_back(text.substr(start, pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

std::string join_numbers(const std::vector<double>& xs) {
  std::string out;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (i) out += ',';
    out += format_double(xs[i]);
  }
  return out;
}

// Horner on the order-th derivative: sum c_i i!/(i-order)! x^(i-order).
double poly_derivative(const std::vector<double>& c, int order, double x) {
  double acc = 0.0;
  for (std::size_t i = c.size(); i-- > static_cast<std::size_t>(order);) {
    double falling = 1.0;
    for (int j = 0; j < order; ++j) falling *= static_cast<double>(i - j);
    acc = acc * x + falling * c[i];
  }
  return acc;
}

double signum(double x) { return (x > 0.0) - (x < 0.0); }

}  // namespace

// ---------------------------------------------------------------------------

HClass HClass::power(double s) {
  if (!(s > 0.0 && s <= 1.0)) throw DomainError("power h-class needs s in (0,1]");
  return HClass(Power{s});
}

HClass HClass::tabulated(std::vector<std::pair<double, double>> knots) {
  if (knots.size() < 2 || knots.front().first != 0.0 || knots.back().first != 1.0) {
    throw DomainError("tabulated h-class knots must span [0,1]");
  }
  for (std::size_t i = 0; i < knots.size(); ++i) {
    if (!(knots[i].second >= 0.0) || !std::isfinite(knots[i].second)) {
      throw DomainError("tabulated h-class values must be non-negative");
    }
    if (i > 0 && !(knots[i].first > knots[i - 1].first)) {
      throw DomainError("tabulated h-class knots must increase strictly");
    }
  }
  return HClass(Tabulated{std::move(knots)});
}

double HClass::operator()(double t) const {
  if (!(t >= 0.0 && t <= 1.0)) throw DomainError("h is defined on [0,1] only");
  return std::visit(Overloaded{
                        [&](const Identity&) { return t; },
                        [&](const Power& p) { return std::pow(t, p.s); },
                        [&](const One&) { return 1.0; },
                        [&](const Tabulated& tab) {
                          const auto& k = tab.knots;
                          auto hi = std::upper_bound(
                              k.begin(), k.end(), t,
                              [](double x, const auto& knot) { return x < knot.first; });
                          if (hi == k.end()) return k.back().second;
                          auto lo = std::prev(hi);
                          const double w = (t - lo->first) / (hi->first - lo->first);
                          return lo->second + w * (hi->second - lo->second);
                        },
                    },
                    kind_);
}

std::vector<double> HClass::breakpoints() const {
  std::vector<double> out;
  if (const auto* tab = std::get_if<Tabulated>(&kind_)) {
    for (std::size_t i = 1; i + 1 < tab->knots.size(); ++i) out.push_back(tab->knots[i].first);
  }
  return out;
}

std::string HClass::render() const {
  return std::visit(Overloaded{
                        [](const Identity&) { return std::string("id"); },
                        [](const Power& p) { return "pow:" + format_double(p.s); },
                        [](const One&) { return std::string("one"); },
                        [](const Tabulated& tab) {
                          std::string out = "tab:";
                          for (std::size_t i = 0; i < tab.knots.size(); ++i) {
                            if (i) out += ',';
                            out += format_double(tab.knots[i].first) + '=' +
                                   format_double(tab.knots[i].second);
                          }
                          return out;
                        },
                    },
                    kind_);
}

double h_eval(const HClass& h, double t) { return h(t); }

// ---------------------------------------------------------------------------

InvexityMap::InvexityMap(Kind eta_kind, double lambda) : kind_(std::move(eta_kind)), lambda_(lambda) {
  if (!(lambda > 0.0 && lambda <= 1.0)) throw DomainError("lambda must lie in (0,1]");
  if (const auto* aff = std::get_if<Affine>(&kind_); aff && !(aff->c > 0.0)) {
    throw DomainError("affine eta needs c > 0");
  }
  if (const auto* cus = std::get_if<Custom>(&kind_); cus && !cus->eta) {
    throw DomainError("custom eta needs a callable");
  }
}

double InvexityMap::eta(double v, double u) const {
  return std::visit(Overloaded{
                        [&](const Difference&) { return v - u; },
                        [&](const Affine& a) { return a.c * (v - u); },
                        [&](const Custom& c) { return c.eta(v, u); },
                    },
                    kind_);
}

std::string InvexityMap::render_eta() const {
  return std::visit(Overloaded{
                        [](const Difference&) { return std::string("diff"); },
                        [](const Affine& a) { return "affine:" + format_double(a.c); },
                        [](const Custom& c) { return "custom:" + c.label; },
                    },
                    kind_);
}

double displaced_point(const InvexityMap& map, double a, double b, double t) {
  if (!(t >= 0.0 && t <= 1.0)) throw DomainError("displacement parameter t must lie in [0,1]");
  const double eta = map.eta(b, a);
  if (!(eta > 0.0)) throw PreconditionError("displaced_point requires eta(b,a) > 0");
  if (t == 0.0) return a;
  return a + t * map.lambda() * eta;
}

// ---------------------------------------------------------------------------

FunctionSpec::FunctionSpec(Family family, Interval domain)
    : family_(std::move(family)), domain_(domain) {
  if (const auto* p = std::get_if<Poly>(&family_); p && p->coeffs.empty()) {
    throw DomainError("polynomial needs at least one coefficient");
  }
  if (const auto* p = std::get_if<PowerAbs>(&family_); p && !(p->k >= 2.0)) {
    throw DomainError("powabs exponent must be >= 2");
  }
  if (const auto* c = std::get_if<Custom>(&family_); c && !c->f) {
    throw DomainError("custom function needs a value callable");
  }
}

double FunctionSpec::value(double x) const { return derivative(0, x); }

bool FunctionSpec::has_derivative(int order) const {
  if (order < 0 || order > 2) return false;
  if (const auto* c = std::get_if<Custom>(&family_)) {
    return order == 0 || (order == 1 ? bool(c->first) : bool(c->second));
  }
  return true;
}

double FunctionSpec::derivative(int order, double x) const {
  if (order < 0 || order > 2) throw DomainError("derivative order must be 0, 1 or 2");
  return std::visit(
      Overloaded{
          [&](const Poly& p) { return poly_derivative(p.coeffs, order, x); },
          [&](const ExpScaled& e) { return std::pow(e.k, order) * std::exp(e.k * x); },
          [&](const PowerAbs& pa) {
            const double ax = std::abs(x);
            switch (order) {
              case 0:
                return std::pow(ax, pa.k);
              case 1:
                return pa.k * std::pow(ax, pa.k - 1.0) * signum(x);
              default:
                return pa.k * (pa.k - 1.0) * std::pow(ax, pa.k - 2.0);
            }
          },
          [&](const Custom& c) {
            const auto& fn = order == 0 ? c.f : order == 1 ? c.first : c.second;
            if (!fn) {
              throw UnavailableDerivative("custom function '" + c.label + "' has no derivative of order " +
                                          std::to_string(order));
            }
            return fn(x);
          },
      },
      family_);
}

FunctionSpec FunctionSpec::with_domain(Interval d) const {
  FunctionSpec out = *this;
  out.domain_ = d;
  return out;
}

std::string FunctionSpec::render() const {
  return std::visit(Overloaded{
                        [](const Poly& p) { return "poly:" + join_numbers(p.coeffs); },
                        [](const ExpScaled& e) { return "exp:" + format_double(e.k); },
                        [](const PowerAbs& p) { return "powabs:" + format_double(p.k); },
                        [](const Custom& c) { return "custom:" + c.label; },
                    },
                    family_);
}

std::function<double(double)> derivative_magnitude_power(const FunctionSpec& spec, int order,
                                                         double q_exp) {
  if (order != 1 && order != 2) throw DomainError("derivative order must be 1 or 2");
  if (!(q_exp >= 1.0)) throw DomainError("derivative power must be >= 1");
  if (!spec.has_derivative(order)) {
    throw UnavailableDerivative("function '" + spec.render() + "' lacks derivative of order " +
                                std::to_string(order));
  }
  if (q_exp == 1.0) {
    return [spec, order](double t) { return std::abs(spec.derivative(order, t)); };
  }
  return [spec, order, q_exp](double t) { return std::pow(std::abs(spec.derivative(order, t)), q_exp); };
}

// ---------------------------------------------------------------------------

Certification certify_h_preinvex(const std::function<double(double)>& g, const HClass& h,
                                 const InvexityMap& map, Interval interval, int grid_n) {
  if (grid_n < 3) throw PreconditionError("certification grid needs at least 3 points");
  if (!(interval.lo < interval.hi) || !std::isfinite(interval.lo) || !std::isfinite(interval.hi)) {
    throw PreconditionError("certification interval must be finite and non-degenerate");
  }
  const auto n = static_cast<std::size_t>(grid_n);
  std::vector<double> xs(n);
  std::vector<double> gs(n);
  std::vector<double> ts(n);
  std::vector<double> h_lo(n);
  std::vector<double> h_hi(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double w = static_cast<double>(i) / static_cast<double>(n - 1);
    xs[i] = i + 1 == n ? interval.hi : interval.lo + w * (interval.hi - interval.lo);
    gs[i] = g(xs[i]);
    ts[i] = w;
    h_lo[i] = h(1.0 - w);
    h_hi[i] = h(w);
  }
  ts[n - 1] = 1.0;
  h_lo[n - 1] = h(0.0);
  h_hi[n - 1] = h(1.0);

  Certification cert;
  for (std::size_t iu = 0; iu < n; ++iu) {
    for (std::size_t iv = 0; iv < n; ++iv) {
      const double eta = map.eta(xs[iv], xs[iu]);
      if (!(eta > 0.0)) continue;
      for (std::size_t it = 0; it < n; ++it) {
        const double point = it == 0 ? xs[iu] : xs[iu] + ts[it] * map.lambda() * eta;
        const double lhs = g(point);
        const double rhs = h_lo[it] * gs[iu] + h_hi[it] * gs[iv];
        const double gap = lhs - rhs;
        if (gap > cert.worst_violation || std::isnan(gap)) {
          cert.worst_violation = std::isnan(gap) ? std::numeric_limits<double>::infinity() : gap;
          cert.witness = {xs[iu], xs[iv], ts[it]};
        }
        if (!(gap <= kCertificationTolerance * std::max(1.0, std::abs(rhs)))) cert.holds = false;
      }
    }
  }
  return cert;
}

// ---------------------------------------------------------------------------

void Scenario::validate() const {
  if (!(alpha > 0.0)) throw DomainError("scenario alpha must be > 0");
  if (!(p > 1.0)) throw DomainError("scenario Hoelder exponent p must be > 1");
  if (!(map.eta(b, a) > 0.0)) throw PreconditionError("scenario requires eta(b,a) > 0");
  if (!f.domain().contains(a) || !f.domain().contains(displaced_end())) {
    throw PreconditionError("[a, a + lambda*eta(b,a)] must lie inside the function's domain");
  }
}

std::string Scenario::describe() const {
  std::string out = "f=" + f.render() + ";a=" + format_double(a) + ";b=" + format_double(b) +
                    ";alpha=" + format_double(alpha) + ";p=" + format_double(p) + ";h=" + h.render() +
                    ";eta=" + map.render_eta() + ";lambda=" + format_double(map.lambda()) +
                    ";quad=" + format_double(quad_cfg.abs_tol) + ',' + format_double(quad_cfg.rel_tol) +
                    ',' + std::to_string(quad_cfg.max_subdivisions);
  if (!quad_cfg.forced_breakpoints.empty()) out += ";breaks=" + join_numbers(quad_cfg.forced_breakpoints);
  return out;
}

std::string Scenario::digest() const { return fnv1a_hex(describe()); }

// ---------------------------------------------------------------------------

FunctionSpec parse_function_spec(std::string_view text) {
  const auto colon = text.find(':');
  if (colon == std::string_view::npos) throw ParseError("invalid function spec '" + std::string(text) + "'");
  const std::string_view head = text.substr(0, colon);
  const std::string_view body = text.substr(colon + 1);
  try {
    if (head == "poly") {
      std::vector<double> coeffs;
      for (auto part : split(body, ',')) coeffs.push_back(parse_double(part));
      return FunctionSpec::poly(std::move(coeffs));
    }
    if (head == "exp") return FunctionSpec::exp_scaled(parse_double(body));
    if (head == "powabs") return FunctionSpec::power_abs(parse_double(body));
  } catch (const DomainError& e) {
    throw ParseError("invalid function spec '" + std::string(text) + "': " + e.what());
  } catch (const ParseError&) {
    throw ParseError("invalid function spec '" + std::string(text) + "'");
  }
  throw ParseError("unknown function family '" + std::string(text) + "'");
}

HClass parse_hclass(std::string_view text) {
  try {
    if (text == "id") return HClass::identity();
    if (text == "one") return HClass::one();
    if (text.starts_with("pow:")) return HClass::power(parse_double(text.substr(4)));
    if (text.starts_with("tab:")) {
      std::vector<std::pair<double, double>> knots;
      for (auto part : split(text.substr(4), ',')) {
        const auto eq = part.find('=');
        if (eq == std::string_view::npos) throw ParseError("knot");
        knots.emplace_back(parse_double(part.substr(0, eq)), parse_double(part.substr(eq + 1)));
      }
      return HClass::tabulated(std::move(knots));
    }
  } catch (const Error&) {
    throw ParseError("invalid h-class '" + std::string(text) + "'");
  }
  throw ParseError("unknown h-class '" + std::string(text) + "'");
}

InvexityMap parse_invexity_map(std::string_view eta_text, double lambda) {
  try {
    if (eta_text == "diff") return InvexityMap::difference(lambda);
    if (eta_text.starts_with("affine:")) return InvexityMap::affine(parse_double(eta_text.substr(7)), lambda);
  } catch (const Error& e) {
    throw ParseError("invalid invexity map '" + std::string(eta_text) + "': " + e.what());
  }
  throw ParseError("unknown eta '" + std::string(eta_text) + "'");
}

}  // namespace fracineq
