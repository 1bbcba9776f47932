#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "support.hpp"
#include "tstab/double_description.hpp"
#include "tstab/errors.hpp"
#include "tstab/fan.hpp"
#include "tstab/polytope.hpp"
#include "tstab/random.hpp"

namespace tstab {
namespace {

using test::ints;
using test::Q;
using test::V;

HPolytope box(int dim, long lo, long hi) {
  HPolytope p;
  p.dim = dim;
  for (int i = 0; i < dim; ++i) {
    p.add(unit_vector(dim, i), lo);
    p.add(-unit_vector(dim, i), -hi);
  }
  return p;
}

// Random polytope containing the origin: a box cut by random halfspaces.
HPolytope random_polytope(Rng& rng, int dim) {
  HPolytope p = box(dim, -3, 3);
  const int cuts = 2 + static_cast<int>(rng() % 4);
  for (int k = 0; k < cuts; ++k) {
    RatVector n = random_primitive(rng, dim, 3);
    p.add(n, -random_rational(rng, Rational(1, 2), 4, 3));
  }
  return p;
}

// Oracle: every d-subset of tight constraints, solved and filtered.
std::vector<RatVector> brute_vertices(const HPolytope& p) {
  const int d = p.dim;
  const int m = static_cast<int>(p.halfspaces.size());
  std::vector<RatVector> out;
  std::vector<int> idx(d);
  for (int i = 0; i < d; ++i) idx[i] = i;
  while (true) {
    RatMatrix a;
    RatVector b;
    for (int i : idx) {
      a.push_back(p.halfspaces[i].normal);
      b.push_back(p.halfspaces[i].offset);
    }
    RatVector x;
    if (solve(a, b, x)) {
      bool feasible = std::all_of(p.halfspaces.begin(), p.halfspaces.end(),
                                  [&](const Halfspace& h) { return dot(h.normal, x) >= h.offset; });
      if (feasible && std::find(out.begin(), out.end(), x) == out.end()) out.push_back(x);
    }
    int i = d - 1;
    while (i >= 0 && idx[i] == m - d + i) --i;
    if (i < 0) break;
    ++idx[i];
    for (int j = i + 1; j < d; ++j) idx[j] = idx[j - 1] + 1;
  }
  std::sort(out.begin(), out.end(), lex_less);
  return out;
}

std::vector<RatVector> sorted(std::vector<RatVector> v) {
  std::sort(v.begin(), v.end(), lex_less);
  return v;
}

// Oracle for convex polygons: order by angle, then shoelace.
std::vector<RatVector> ccw(std::vector<RatVector> pts) {
  double cx = 0, cy = 0;
  for (const auto& p : pts) {
    cx += to_double(p[0]);
    cy += to_double(p[1]);
  }
  cx /= static_cast<double>(pts.size());
  cy /= static_cast<double>(pts.size());
  std::sort(pts.begin(), pts.end(), [&](const RatVector& a, const RatVector& b) {
    return std::atan2(to_double(a[1]) - cy, to_double(a[0]) - cx) < std::atan2(to_double(b[1]) - cy, to_double(b[0]) - cx);
  });
  return pts;
}

Rational shoelace_area(const std::vector<RatVector>& poly) {
  Rational s = 0;
  for (std::size_t i = 0; i < poly.size(); ++i) {
    const auto& a = poly[i];
    const auto& b = poly[(i + 1) % poly.size()];
    s += a[0] * b[1] - a[1] * b[0];
  }
  return abs(s) / 2;
}

RatVector polygon_centroid(const std::vector<RatVector>& poly) {
  Rational s = 0, x = 0, y = 0;
  for (std::size_t i = 0; i < poly.size(); ++i) {
    const auto& a = poly[i];
    const auto& b = poly[(i + 1) % poly.size()];
    Rational c = a[0] * b[1] - a[1] * b[0];
    s += c;
    x += (a[0] + b[0]) * c;
    y += (a[1] + b[1]) * c;
  }
  return {x / (3 * s), y / (3 * s)};
}

VPolytope vpoly(int dim, std::vector<RatVector> vs) { return VPolytope{dim, std::move(vs)}; }

TEST(EnumerateVertices, UnitSquare) {
  auto v = enumerate_vertices(box(2, 0, 1));
  EXPECT_EQ(v.vertices, sorted({V("0,0"), V("1,0"), V("0,1"), V("1,1")}));
}

TEST(EnumerateVertices, AnticanonicalTriangleOfThePlane) {
  HPolytope p;
  p.dim = 2;
  p.add(V("1,0"), -1);
  p.add(V("0,1"), -1);
  p.add(V("-1,-1"), -1);
  EXPECT_EQ(enumerate_vertices(p).vertices, sorted({V("-1,-1"), V("2,-1"), V("-1,2")}));
}

TEST(EnumerateVertices, InfeasibleIsEmpty) {
  HPolytope p;
  p.dim = 1;
  p.add(V("1"), 1);
  p.add(V("-1"), 0);
  EXPECT_TRUE(enumerate_vertices(p).empty());
}

TEST(EnumerateVertices, UnboundedThrows) {
  HPolytope p;
  p.dim = 2;
  p.add(V("1,0"), 0);
  p.add(V("0,1"), 0);
  EXPECT_THROW(enumerate_vertices(p), UnboundedPolytope);
  EXPECT_FALSE(maximize(p, V("1,1")).has_value());
  EXPECT_EQ(*maximize(p, V("-1,-2")), Rational(0));
}

TEST(EnumerateVertices, MatchesBruteForceOnRandomPolytopes) {
  Rng rng(11);
  for (int k = 0; k < 40; ++k) {
    HPolytope p = random_polytope(rng, 2 + k % 2);
    EXPECT_EQ(enumerate_vertices(p).vertices, brute_vertices(p)) << "case " << k;
  }
}

TEST(Volume, Examples) {
  EXPECT_EQ(volume(enumerate_vertices(box(3, 0, 1))), Rational(1));
  auto tri = vpoly(2, {V("-1,-1"), V("2,-1"), V("-1,2")});
  EXPECT_EQ(volume(tri), Rational(9, 2));
  EXPECT_EQ(volume(vpoly(2, {V("0,0"), V("1,1")})), Rational(0));
}

TEST(Barycenter, Examples) {
  EXPECT_EQ(barycenter(enumerate_vertices(box(2, 0, 1))), V("1/2,1/2"));
  EXPECT_EQ(barycenter(vpoly(2, {V("-1,-1"), V("2,-1"), V("-1,2")})), V("0,0"));
  // The anticanonical polygon of the one-point blowup of the plane.
  auto quad = vpoly(2, {V("2,-1"), V("-1,2"), V("0,-1"), V("-1,0")});
  EXPECT_EQ(volume(quad), Rational(4));
  EXPECT_EQ(barycenter(quad), V("1/12,1/12"));
  EXPECT_THROW(barycenter(vpoly(2, {V("0,0"), V("1,1")})), DegeneratePolytope);
}

TEST(Volume, MatchesShoelaceOnRandomPolygons) {
  Rng rng(5);
  for (int k = 0; k < 40; ++k) {
    auto v = enumerate_vertices(random_polytope(rng, 2));
    auto poly = ccw(v.vertices);
    EXPECT_EQ(volume(v), shoelace_area(poly)) << "case " << k;
    EXPECT_EQ(barycenter(v), polygon_centroid(poly)) << "case " << k;
  }
}

TEST(Volume, SimplexDecompositionInThreeDimensions) {
  // Cube minus a corner simplex: 8 - 1/6 on [0,2]^3 cut by x+y+z >= 1.
  HPolytope p = box(3, 0, 2);
  p.add(V("1,1,1"), 1);
  auto v = enumerate_vertices(p);
  EXPECT_EQ(volume(v), Rational(47, 6));
  // Barycenter by complement: (8 c_cube - (1/6) c_corner) / (47/6).
  Rational x = (8 * Rational(1) - Rational(1, 6) * Rational(1, 4)) / Rational(47, 6);
  EXPECT_EQ(barycenter(v), (RatVector{x, x, x}));
}

// Translation and unimodular invariance.
TEST(PolytopeProperties, TranslationAndUnimodularInvariance) {
  Rng rng(7);
  const RatMatrix unimodular2{V("2,1"), V("1,1")};
  const RatMatrix unimodular3{V("1,1,0"), V("0,1,1"), V("0,0,1")};
  for (int k = 0; k < 30; ++k) {
    const int dim = 2 + k % 2;
    auto v = enumerate_vertices(random_polytope(rng, dim));
    RatVector m;
    for (int i = 0; i < dim; ++i) m.emplace_back(static_cast<long>(rng() % 7) - 3);
    VPolytope shifted{dim, {}};
    VPolytope mapped{dim, {}};
    const RatMatrix& u = dim == 2 ? unimodular2 : unimodular3;
    auto apply = [&](const RatVector& x) {
      RatVector y;
      for (const auto& row : u) y.push_back(dot(row, x));
      return y;
    };
    for (const auto& x : v.vertices) {
      shifted.vertices.push_back(x + m);
      mapped.vertices.push_back(apply(x));
    }
    EXPECT_EQ(volume(shifted), volume(v));
    EXPECT_EQ(barycenter(shifted), barycenter(v) + m);
    EXPECT_EQ(volume(mapped), volume(v));
    EXPECT_EQ(barycenter(mapped), apply(barycenter(v)));
  }
}

// Scaling.
TEST(PolytopeProperties, VolumeScalesWithDimension) {
  Rng rng(8);
  for (int k = 0; k < 20; ++k) {
    const int dim = 2 + k % 2;
    auto v = enumerate_vertices(random_polytope(rng, dim));
    Rational lambda = random_rational(rng, Rational(1, 10), 10, 9);
    VPolytope s{dim, {}};
    for (const auto& x : v.vertices) s.vertices.push_back(lambda * x);
    Rational pow = 1;
    for (int i = 0; i < dim; ++i) pow *= lambda;
    EXPECT_EQ(volume(s), pow * volume(v));
  }
}

// Support extrema against brute force over the oracle's vertices.
TEST(PolytopeProperties, SupportExtremaMatchBruteForce) {
  Rng rng(9);
  for (int k = 0; k < 30; ++k) {
    const int dim = 2 + k % 2;
    HPolytope p = random_polytope(rng, dim);
    auto v = enumerate_vertices(p);
    auto oracle = brute_vertices(p);
    for (int j = 0; j < 5; ++j) {
      RatVector w = random_primitive(rng, dim, 5);
      Rational lo = dot(oracle[0], w), hi = lo;
      for (const auto& x : oracle) {
        lo = std::min(lo, Rational(dot(x, w)));
        hi = std::max(hi, Rational(dot(x, w)));
      }
      auto [mn, mx] = support_extrema(v, w);
      EXPECT_EQ(mn, lo);
      EXPECT_EQ(mx, hi);
      EXPECT_EQ(dot(v.vertices[argmin_vertex(v, w)], w), lo);
    }
  }
  auto sq = enumerate_vertices(box(2, 0, 1));
  EXPECT_EQ(support_extrema(sq, V("1,0")), std::make_pair(Rational(0), Rational(1)));
  EXPECT_EQ(support_extrema(sq, V("0,0")), std::make_pair(Rational(0), Rational(0)));
  auto tri = vpoly(2, {V("-1,-1"), V("2,-1"), V("-1,2")});
  EXPECT_EQ(support_extrema(tri, V("1,1")), std::make_pair(Rational(-2), Rational(1)));
}

TEST(DoubleDescription, OrthantAndLineality) {
  auto g = cone_generators(std::vector<RatVector>{V("1,0"), V("0,1")}, 2);
  EXPECT_EQ(sorted(g.rays), sorted({V("1,0"), V("0,1")}));
  EXPECT_TRUE(g.lineality.empty());
  auto h = cone_generators(std::vector<RatVector>{V("1,0,0")}, 3);
  EXPECT_EQ(h.rays, std::vector<RatVector>{V("1,0,0")});
  EXPECT_EQ(h.lineality.size(), 2u);
  auto f = cone_facets(std::vector<RatVector>{V("1,0"), V("1,2")}, 2);
  EXPECT_EQ(sorted(f), sorted({V("0,1"), V("2,-1")}));
}

Fan quadrant_fan() {
  return Fan(2, {V("1,0"), V("0,1"), V("-1,0"), V("0,-1")}, {{0, 1}, {1, 2}, {2, 3}, {3, 0}});
}

Fan plane_fan() { return Fan(2, {V("1,0"), V("0,1"), V("-1,-1")}, {{0, 1}, {1, 2}, {2, 0}}); }

TEST(Fan, ValidatesInvariants) {
  EXPECT_THROW(Fan(2, {V("2,0"), V("0,1")}, {{0, 1}}), InvalidFan);
  EXPECT_THROW(Fan(2, {V("1,0"), V("1,0")}, {{0, 1}}), InvalidFan);
  EXPECT_THROW(Fan(2, {V("1,0"), V("-1,0")}, {{0, 1}}), InvalidFan);
  EXPECT_THROW(Fan(2, {V("1,0"), V("0,1")}, {{0, 2}}), InvalidFan);
  EXPECT_TRUE(is_complete(quadrant_fan()));
  EXPECT_TRUE(is_complete(plane_fan()));
  EXPECT_FALSE(is_complete(Fan(2, {V("1,0"), V("0,1"), V("-1,0")}, {{0, 1}, {1, 2}})));
}

TEST(NormalFan, Examples) {
  Fan sq = normal_fan(enumerate_vertices(box(2, 0, 1)));
  EXPECT_EQ(sorted(sq.rays()), sorted({V("1,0"), V("0,1"), V("-1,0"), V("0,-1")}));
  EXPECT_EQ(sq.size(), 4u);
  for (const auto& tri : {vpoly(2, {V("-1,-1"), V("2,-1"), V("-1,2")}), vpoly(2, {V("0,0"), V("1,0"), V("0,1")})}) {
    Fan f = normal_fan(tri);
    EXPECT_EQ(sorted(f.rays()), sorted({V("1,0"), V("0,1"), V("-1,-1")}));
    EXPECT_TRUE(is_complete(f));
  }
  EXPECT_THROW(normal_fan(vpoly(2, {V("0,0"), V("1,1")})), DegeneratePolytope);
}

// Cone i of the inner normal fan is where vertex i minimizes <x, w>.
TEST(NormalFan, ConesAreMinimizingDomains) {
  Rng rng(13);
  for (int k = 0; k < 20; ++k) {
    const int dim = 2 + k % 2;
    auto v = enumerate_vertices(random_polytope(rng, dim));
    Fan f = normal_fan(v);
    ASSERT_TRUE(is_complete(f));
    for (int j = 0; j < 20; ++j) {
      RatVector w = random_primitive(rng, dim, 9);
      auto cone = f.find_cone(w);
      ASSERT_TRUE(cone.has_value());
      EXPECT_EQ(dot(v.vertices[*cone], w), support_extrema(v, w).first);
    }
  }
}

TEST(CommonRefinement, Examples) {
  Fan q = quadrant_fan();
  Fan r = common_refinement(q, q);
  EXPECT_EQ(sorted(r.rays()), sorted(q.rays()));
  EXPECT_EQ(r.size(), q.size());
  Fan m = common_refinement(q, plane_fan());
  EXPECT_EQ(sorted(m.rays()), sorted({V("1,0"), V("0,1"), V("-1,-1"), V("-1,0"), V("0,-1")}));
  EXPECT_EQ(m.size(), 5u);
  // The improper cone is not pointed.
  EXPECT_THROW(Fan(1, {V("1"), V("-1")}, {{0, 1}}), InvalidFan);
}

// Completeness of refinements.
TEST(CommonRefinement, RandomDirectionsLieInExactlyOneCone) {
  Rng rng(17);
  for (int k = 0; k < 4; ++k) {
    const int dim = 2 + k % 2;
    Fan f = normal_fan(enumerate_vertices(random_polytope(rng, dim)));
    Fan g = normal_fan(enumerate_vertices(random_polytope(rng, dim)));
    Fan r = common_refinement(f, g);
    for (const auto& ray : r.rays()) EXPECT_EQ(primitive(ray), ray);
    for (int j = 0; j < 250; ++j) {
      RatVector w;
      for (int i = 0; i < dim; ++i) w.push_back(random_rational(rng, -1, 1, 997));
      if (is_zero(w)) continue;
      int hits = 0;
      bool on_wall = false;
      for (std::size_t c = 0; c < r.size(); ++c) {
        hits += r.contains(c, w) ? 1 : 0;
        for (const auto& f : r.facets(c)) on_wall = on_wall || sgn(dot(f, w)) == 0;
      }
      // Directions on a wall (e.g. with a zero coordinate) sit in every adjacent cone.
      EXPECT_GE(hits, 1) << "direction " << j;
      if (!on_wall) EXPECT_EQ(hits, 1) << "direction " << j;
    }
  }
}

// Ray minima bound lattice samples; continuity of conewise linear data.
TEST(MinimizeRatio, RayMinimumBoundsLatticeSamples) {
  Rng rng(19);
  Fan plane = plane_fan();
  auto a = ConewiseLinearFunction::from_ray_values(plane, {1, 1, 1});
  for (int k = 0; k < 5; ++k) {
    auto v = enumerate_vertices(random_polytope(rng, 2));
    // Width-type denominator: max - min over the polytope, positive.
    Fan nf = normal_fan(v);
    std::vector<Rational> width;
    for (const auto& ray : nf.rays()) {
      auto [lo, hi] = support_extrema(v, ray);
      width.push_back(hi - lo);
    }
    Fan both = common_refinement(nf, reflect(nf));
    std::vector<Rational> wv;
    for (const auto& ray : both.rays()) {
      auto [lo, hi] = support_extrema(v, ray);
      wv.push_back(hi - lo);
    }
    auto den = ConewiseLinearFunction::from_ray_values(both, wv);
    EXPECT_TRUE(den.is_continuous());
    Fan r = common_refinement(plane, both);
    auto best = minimize_ratio(a, den, r);
    int checked = 0;
    for (long x = -10; x <= 10; ++x) {
      for (long y = -10; y <= 10; ++y) {
        RatVector w = ints({x, y});
        if (is_zero(w) || primitive(w) != w) continue;
        ++checked;
        EXPECT_GE(a(w) / den(w), best.value);
      }
    }
    EXPECT_GT(checked, 200);
    EXPECT_EQ(a(best.witness) / den(best.witness), best.value);
  }
}

TEST(MinimizeRatio, EqualFunctionsGiveOne) {
  Fan plane = plane_fan();
  auto a = ConewiseLinearFunction::from_ray_values(plane, {1, 2, 3});
  auto r = minimize_ratio(a, a, plane);
  EXPECT_EQ(r.value, Rational(1));
  auto z = ConewiseLinearFunction::from_ray_values(plane, {1, 0, 1});
  EXPECT_THROW(minimize_ratio(a, z, plane), NonpositiveDenominator);
}

}  // namespace
}  // namespace tstab
