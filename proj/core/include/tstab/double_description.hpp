#pragma once

#include <span>
#include <vector>

#include "tstab/rational.hpp"

namespace tstab {

// Generators of a polyhedral cone {y : <a_i, y> >= 0}: the cone equals
// span(lineality) + cone(rays). Rays are extreme modulo the lineality space
// and are stored as primitive integer vectors.
struct ConeGenerators {
  std::vector<RatVector> rays;
  std::vector<RatVector> lineality;
};

// Double-description method with incremental constraint insertion and the
// combinatorial adjacency test.
ConeGenerators cone_generators(std::span<const RatVector> constraints, int dim);

// Facet normals of the cone spanned by `generators` (the extreme rays of the
// dual cone). For a full-dimensional pointed cone the result is irredundant.
std::vector<RatVector> cone_facets(std::span<const RatVector> generators, int dim);

}  // namespace tstab
