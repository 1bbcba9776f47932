#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <vector>

#include "tstab/polytope.hpp"
#include "tstab/rational.hpp"

namespace tstab {

struct RationalCone {
  std::vector<RatVector> generators;
};

// Rays are primitive, nonzero and pairwise distinct; every maximal cone is
// full-dimensional and pointed. Completeness is a separate check because
// the toric layer wants a precise error message.
class Fan {
 public:
  Fan() = default;
  // Throws InvalidFan on a violated invariant.
  Fan(int dim, std::vector<RatVector> rays, std::vector<std::vector<int>> cones);

  int dim() const { return dim_; }
  const std::vector<RatVector>& rays() const { return rays_; }
  const std::vector<std::vector<int>>& cones() const { return cones_; }
  std::size_t size() const { return cones_.size(); }

  RationalCone cone(std::size_t i) const;
  // Inner facet normals of cone i: the cone is {w : <f, w> >= 0}.
  const std::vector<RatVector>& facets(std::size_t i) const { return facets_[i]; }

  bool contains(std::size_t i, const RatVector& w) const;
  // First maximal cone containing w.
  std::optional<std::size_t> find_cone(const RatVector& w) const;

 private:
  int dim_ = 0;
  std::vector<RatVector> rays_;
  std::vector<std::vector<int>> cones_;
  std::vector<std::vector<RatVector>> facets_;
};

// Every codimension-one face bounds exactly two cones lying on opposite
// sides, and a generic direction lies in exactly one cone.
bool is_complete(const Fan& fan);

// The fan with all rays negated.
Fan reflect(const Fan& fan);

class ConewiseLinearFunction {
 public:
  ConewiseLinearFunction(Fan fan, std::vector<RatVector> linear_data);

  // Linear data determined by prescribed values at the rays. Throws
  // InvalidFan if a cone's rays do not admit a consistent linear function.
  static ConewiseLinearFunction from_ray_values(Fan fan, const std::vector<Rational>& values);

  // Evaluates in the first cone containing w; NotInFan otherwise.
  Rational operator()(const RatVector& w) const;
  Rational eval_on_cone(std::size_t cone, const RatVector& w) const;

  const Fan& fan() const { return fan_; }
  const std::vector<RatVector>& linear_data() const { return data_; }

  // Linear data of any two cones sharing a ray agree at that ray.
  bool is_continuous() const;

 private:
  Fan fan_;
  std::vector<RatVector> data_;
};

// Inner normal fan: cone i is {w : <u - v_i, w> >= 0 for all vertices u},
// where v_i is the i-th vertex of p. Its cones are the linearity domains of
// w -> min_{x in p} <x, w>. Throws DegeneratePolytope if volume(p) = 0.
Fan normal_fan(const VPolytope& p);

// Full-dimensional intersections of cones of f and g. Rays of f that
// survive come first in f's order, the remaining rays follow
// lexicographically.
Fan common_refinement(const Fan& f, const Fan& g);

struct RatioMinimum {
  Rational value;
  RatVector witness;
};

// min num(w)/den(w) over nonzero w, taken over the rays of `refinement`
// (both functions must be linear on its cones). The first ray attaining
// the minimum is returned. Throws NonpositiveDenominator if den <= 0 at a
// ray.
RatioMinimum minimize_ratio(const ConewiseLinearFunction& num,
                            const ConewiseLinearFunction& den, const Fan& refinement);

}  // namespace tstab
