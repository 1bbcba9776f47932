#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "tstab/rational.hpp"

namespace tstab {

// {x : <x, normal> >= offset}
struct Halfspace {
  RatVector normal;
  Rational offset;
};

struct HPolytope {
  int dim = 0;
  std::vector<Halfspace> halfspaces;

  // Adds {x : <x, normal> >= offset}; rejects zero or mismatched normals.
  void add(RatVector normal, Rational offset);
};

struct VPolytope {
  int dim = 0;
  std::vector<RatVector> vertices;

  bool empty() const { return vertices.empty(); }
};

// Vertices, recession rays and lineality of a general H-polyhedron.
struct PolyhedronGenerators {
  std::vector<RatVector> vertices;
  std::vector<RatVector> rays;
  std::vector<RatVector> lineality;

  bool feasible() const { return !vertices.empty(); }
  bool bounded() const { return rays.empty() && lineality.empty(); }
};

PolyhedronGenerators polyhedron_generators(const HPolytope& p);

// Extreme points of a bounded polytope; empty iff infeasible.
// Throws UnboundedPolytope when the feasible region has a nontrivial
// recession cone.
VPolytope enumerate_vertices(const HPolytope& p);

// sup of <objective, x> over the polyhedron; std::nullopt if unbounded above.
// Throws DegeneratePolytope if the polyhedron is empty.
std::optional<Rational> maximize(const HPolytope& p, const RatVector& objective);

// Affine dimension of the convex hull (-1 for the empty set).
int affine_dimension(const std::vector<RatVector>& points);

// Triangulation of conv(points) into simplices of the hull's affine
// dimension, as index tuples into `points`. Cones from the first point over
// recursively triangulated facets.
std::vector<std::vector<int>> triangulate(const std::vector<RatVector>& points);

// Exact Euclidean n-volume; 0 when the polytope is lower-dimensional.
Rational volume(const VPolytope& p);

// Exact centroid. Throws DegeneratePolytope if volume is zero.
RatVector barycenter(const VPolytope& p);

// (min, max) of <x, w> over the vertices. Requires a nonempty polytope.
std::pair<Rational, Rational> support_extrema(const VPolytope& p, const RatVector& w);

// Index of the vertex attaining min <x, w> (first one on ties).
std::size_t argmin_vertex(const VPolytope& p, const RatVector& w);

}  // namespace tstab
