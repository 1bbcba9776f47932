#include "tstab/thresholds.hpp"

#include <numeric>

#include "tstab/errors.hpp"

namespace tstab {
namespace {

VPolytope big_polytope(const ToricRDivisor& l, const char* who) {
  VPolytope p = section_vertices(l);
  if (p.empty() || affine_dimension(p.vertices) < p.dim) {
    throw NotBig(std::string(who) + ": divisor is not big");
  }
  return p;
}

Rational power(const Rational& q, int e) {
  Rational r = 1;
  for (int i = 0; i < e; ++i) r *= q;
  return r;
}

void require_ample(const ToricRDivisor& xi, const char* who) {
  if (!is_ample(xi)) throw NotAmple(std::string(who) + ": divisor is not ample");
}

}  // namespace

bool is_toric_valuation(const RatVector& w) {
  return !w.empty() && !is_zero(w) && is_integral(w) && primitive(w) == w;
}

Rational log_discrepancy(const ToricVariety& x, const RatVector& w) {
  auto [cone, lambda] = x.cone_coordinates(w);
  return std::accumulate(lambda.begin(), lambda.end(), Rational(0));
}

ConewiseLinearFunction log_discrepancy_function(const ToricVariety& x) {
  return ConewiseLinearFunction::from_ray_values(x.fan(), std::vector<Rational>(x.num_rays(), Rational(1)));
}

Rational expected_vanishing(const ToricRDivisor& l, const RatVector& w) {
  VPolytope p = big_polytope(l, "expected_vanishing");
  return dot(barycenter(p), w) - support_extrema(p, w).first;
}

ConewiseLinearFunction expected_vanishing_function(const ToricRDivisor& l) {
  VPolytope p = big_polytope(l, "expected_vanishing");
  RatVector b = barycenter(p);
  Fan nf = normal_fan(p);
  std::vector<RatVector> data;
  for (const auto& v : p.vertices) data.push_back(b - v);
  return ConewiseLinearFunction(std::move(nf), std::move(data));
}

Rational expected_vanishing_quadrature(const ToricRDivisor& l, const RatVector& w, int steps) {
  if (steps < 1) throw std::invalid_argument("expected_vanishing_quadrature: steps must be positive");
  VPolytope p = big_polytope(l, "expected_vanishing_quadrature");
  auto [lo, hi] = support_extrema(p, w);
  const Rational total = volume(p);
  const Rational width = hi - lo;
  HPolytope base = section_polytope(l);
  Rational sum = 0;
  for (int k = 0; k <= steps; ++k) {
    Rational t = width * k / steps;
    Rational v;
    if (k == 0) {
      v = total;
    } else if (k == steps) {
      v = 0;
    } else {
      HPolytope slice = base;
      slice.add(w, lo + t);
      v = volume(enumerate_vertices(slice));
    }
    sum += (k == 0 || k == steps) ? Rational(v / 2) : v;
  }
  return sum * width / steps / total;
}

Rational pseff_threshold(const ToricRDivisor& l, const RatVector& w) {
  VPolytope p = big_polytope(l, "pseff_threshold");
  auto [lo, hi] = support_extrema(p, w);
  return hi - lo;
}

ConewiseLinearFunction pseff_threshold_function(const ToricRDivisor& l) {
  VPolytope p = big_polytope(l, "pseff_threshold");
  Fan nf = normal_fan(p);
  Fan both = common_refinement(nf, reflect(nf));
  std::vector<RatVector> data;
  for (std::size_t c = 0; c < both.size(); ++c) {
    // argmin and argmax are constant on the cone; read them off at an
    // interior point.
    RatVector inner(static_cast<std::size_t>(p.dim), Rational(0));
    for (int k : both.cones()[c]) inner = inner + both.rays()[static_cast<std::size_t>(k)];
    const RatVector& vmin = p.vertices[argmin_vertex(p, inner)];
    const RatVector& vmax = p.vertices[argmin_vertex(p, -inner)];
    data.push_back(vmax - vmin);
  }
  return ConewiseLinearFunction(std::move(both), std::move(data));
}

RatioMinimum delta(const ToricRDivisor& l) {
  ConewiseLinearFunction s = expected_vanishing_function(l);
  ConewiseLinearFunction a = log_discrepancy_function(l.variety());
  Fan refinement = common_refinement(l.variety().fan(), s.fan());
  return minimize_ratio(a, s, refinement);
}

RatioMinimum alpha(const ToricRDivisor& l) {
  ConewiseLinearFunction t = pseff_threshold_function(l);
  ConewiseLinearFunction a = log_discrepancy_function(l.variety());
  Fan refinement = common_refinement(l.variety().fan(), t.fan());
  return minimize_ratio(a, t, refinement);
}

RatioMinimum delta_bruteforce(const ToricRDivisor& l, int radius) {
  if (radius < 1) throw std::invalid_argument("delta_bruteforce: radius must be positive");
  VPolytope p = big_polytope(l, "delta_bruteforce");
  const RatVector b = barycenter(p);
  const ToricVariety& x = l.variety();
  const int n = l.dim();
  std::vector<long> w(static_cast<std::size_t>(n), -radius);
  std::optional<RatioMinimum> best;
  while (true) {
    long g = 0;
    for (long c : w) g = std::gcd(g, c);
    if (g == 1) {
      RatVector v;
      for (long c : w) v.emplace_back(c);
      Rational s = dot(b, v) - support_extrema(p, v).first;
      Rational ratio = log_discrepancy(x, v) / s;
      if (!best || ratio < best->value) best = RatioMinimum{ratio, v};
    }
    std::size_t i = 0;
    while (i < w.size() && w[i] == radius) w[i++] = -radius;
    if (i == w.size()) break;
    ++w[i];
  }
  return *best;
}

Rational beta(const ToricRDivisor& xi) {
  require_ample(xi, "beta");
  NefThreshold s = nef_threshold(xi);
  if (!s.positive) return s.value;
  Rational d = delta(xi).value;
  return d < s.value ? d : s.value;
}

BishopCheck bishop_check(const ToricRDivisor& xi) {
  require_ample(xi, "bishop_check");
  const int n = xi.dim();
  Rational lhs = power(delta(xi).value, n) * vol(xi);
  Rational bound = power(Rational(n + 1), n);
  return {lhs <= bound, lhs, bound};
}

SandwichCheck sandwich_check(const ToricRDivisor& xi) {
  require_ample(xi, "sandwich_check");
  const int n = xi.dim();
  Rational a = alpha(xi).value;
  Rational d = delta(xi).value;
  return {Rational(n + 1, n) * a <= d, d <= (n + 1) * a, a, d};
}

CsckCheck csck_criterion(const ToricRDivisor& xi, std::optional<Rational> lower_bound) {
  require_ample(xi, "csck_criterion");
  const int n = xi.dim();
  Rational lambda = lower_bound ? *lower_bound : Rational(Rational(n + 1, n) * alpha(xi).value);
  Rational mu = slope(xi);
  Rational s = nef_threshold(xi).value;
  ToricRDivisor k_plus = xi.scaled(lambda) - anticanonical(xi.variety_ptr());
  bool kahler = is_ample(k_plus);
  bool gap = lambda > n * mu - (n - 1) * s;
  return {kahler && gap, kahler, gap, lambda};
}

}  // namespace tstab
