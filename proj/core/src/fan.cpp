#include "tstab/fan.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>
#include <string>

#include "tstab/double_description.hpp"
#include "tstab/errors.hpp"

namespace tstab {

Fan::Fan(int dim, std::vector<RatVector> rays, std::vector<std::vector<int>> cones)
    : dim_(dim), rays_(std::move(rays)), cones_(std::move(cones)) {
  if (dim_ < 1) throw InvalidFan("fan dimension must be positive");
  for (std::size_t i = 0; i < rays_.size(); ++i) {
    const auto& r = rays_[i];
    if (static_cast<int>(r.size()) != dim_) throw InvalidFan("ray " + std::to_string(i) + " has wrong dimension");
    if (is_zero(r)) throw InvalidFan("ray " + std::to_string(i) + " is zero");
    if (!is_integral(r) || primitive(r) != r) throw InvalidFan("ray " + std::to_string(i) + " is not primitive");
    for (std::size_t j = 0; j < i; ++j) {
      if (rays_[j] == r) throw InvalidFan("rays " + std::to_string(j) + " and " + std::to_string(i) + " coincide");
    }
  }
  facets_.reserve(cones_.size());
  for (std::size_t c = 0; c < cones_.size(); ++c) {
    RatMatrix gens;
    for (int k : cones_[c]) {
      if (k < 0 || static_cast<std::size_t>(k) >= rays_.size()) {
        throw InvalidFan("cone " + std::to_string(c) + " references a missing ray");
      }
      gens.push_back(rays_[static_cast<std::size_t>(k)]);
    }
    if (rank(gens) != dim_) throw InvalidFan("cone " + std::to_string(c) + " is not full-dimensional");
    std::vector<RatVector> f = cone_facets(gens, dim_);
    if (!cone_generators(f, dim_).lineality.empty()) {
      throw InvalidFan("cone " + std::to_string(c) + " is not pointed");
    }
    facets_.push_back(std::move(f));
  }
}

RationalCone Fan::cone(std::size_t i) const {
  RationalCone out;
  for (int k : cones_[i]) out.generators.push_back(rays_[static_cast<std::size_t>(k)]);
  return out;
}

bool Fan::contains(std::size_t i, const RatVector& w) const {
  return std::all_of(facets_[i].begin(), facets_[i].end(),
                     [&](const RatVector& f) { return sgn(dot(f, w)) >= 0; });
}

std::optional<std::size_t> Fan::find_cone(const RatVector& w) const {
  for (std::size_t i = 0; i < cones_.size(); ++i) {
    if (contains(i, w)) return i;
  }
  return std::nullopt;
}

bool is_complete(const Fan& fan) {
  const int n = fan.dim();
  for (std::size_t i = 0; i < fan.size(); ++i) {
    for (const auto& f : fan.facets(i)) {
      std::vector<int> face;
      for (int k : fan.cones()[i]) {
        if (sgn(dot(f, fan.rays()[static_cast<std::size_t>(k)])) == 0) face.push_back(k);
      }
      int across = 0;
      for (std::size_t j = 0; j < fan.size(); ++j) {
        if (j == i) continue;
        const auto& cj = fan.cones()[j];
        bool has_face = std::all_of(face.begin(), face.end(), [&](int k) {
          return std::find(cj.begin(), cj.end(), k) != cj.end();
        });
        if (!has_face) continue;
        bool opposite = std::all_of(cj.begin(), cj.end(), [&](int k) {
          return sgn(dot(f, fan.rays()[static_cast<std::size_t>(k)])) <= 0;
        });
        if (opposite) ++across;
      }
      if (across != 1) return false;
    }
  }
  static const int numer[] = {101, -173, 211, -59};
  static const int denom[] = {97, 89, 103, 61};
  RatVector w;
  for (int i = 0; i < n; ++i) w.push_back(Rational(numer[i % 4] + 7 * (i / 4), denom[i % 4]));
  int hits = 0;
  for (std::size_t i = 0; i < fan.size(); ++i) hits += fan.contains(i, w) ? 1 : 0;
  return hits == 1;
}

Fan reflect(const Fan& fan) {
  std::vector<RatVector> rays;
  for (const auto& r : fan.rays()) rays.push_back(-r);
  return Fan(fan.dim(), std::move(rays), fan.cones());
}

ConewiseLinearFunction::ConewiseLinearFunction(Fan fan, std::vector<RatVector> linear_data)
    : fan_(std::move(fan)), data_(std::move(linear_data)) {
  if (data_.size() != fan_.size()) {
    throw std::invalid_argument("ConewiseLinearFunction: one linear functional per cone required");
  }
  for (const auto& d : data_) {
    if (static_cast<int>(d.size()) != fan_.dim()) {
      throw std::invalid_argument("ConewiseLinearFunction: linear data has wrong dimension");
    }
  }
}

ConewiseLinearFunction ConewiseLinearFunction::from_ray_values(Fan fan, const std::vector<Rational>& values) {
  if (values.size() != fan.rays().size()) {
    throw std::invalid_argument("from_ray_values: one value per ray required");
  }
  const int n = fan.dim();
  std::vector<RatVector> data;
  for (std::size_t c = 0; c < fan.size(); ++c) {
    // Pick n independent rays, solve, then confirm the remaining rays.
    RatMatrix basis;
    RatVector rhs;
    for (int k : fan.cones()[c]) {
      RatMatrix trial = basis;
      trial.push_back(fan.rays()[static_cast<std::size_t>(k)]);
      if (rank(trial) > static_cast<int>(basis.size())) {
        basis = std::move(trial);
        rhs.push_back(values[static_cast<std::size_t>(k)]);
      }
      if (static_cast<int>(basis.size()) == n) break;
    }
    RatVector m;
    if (!solve(basis, rhs, m)) throw InvalidFan("from_ray_values: singular cone");
    for (int k : fan.cones()[c]) {
      if (dot(m, fan.rays()[static_cast<std::size_t>(k)]) != values[static_cast<std::size_t>(k)]) {
        throw InvalidFan("from_ray_values: values are not linear on cone " + std::to_string(c));
      }
    }
    data.push_back(std::move(m));
  }
  return ConewiseLinearFunction(std::move(fan), std::move(data));
}

Rational ConewiseLinearFunction::operator()(const RatVector& w) const {
  auto c = fan_.find_cone(w);
  if (!c) throw NotInFan("point lies in no maximal cone");
  return dot(data_[*c], w);
}

Rational ConewiseLinearFunction::eval_on_cone(std::size_t cone, const RatVector& w) const {
  return dot(data_.at(cone), w);
}

bool ConewiseLinearFunction::is_continuous() const {
  std::vector<std::optional<Rational>> at_ray(fan_.rays().size());
  for (std::size_t c = 0; c < fan_.size(); ++c) {
    for (int k : fan_.cones()[c]) {
      Rational v = dot(data_[c], fan_.rays()[static_cast<std::size_t>(k)]);
      auto& slot = at_ray[static_cast<std::size_t>(k)];
      if (!slot) {
        slot = v;
      } else if (*slot != v) {
        return false;
      }
    }
  }
  return true;
}

Fan normal_fan(const VPolytope& p) {
  if (p.empty() || affine_dimension(p.vertices) < p.dim) {
    throw DegeneratePolytope("normal_fan of a lower-dimensional polytope");
  }
  std::vector<RatVector> rays;
  std::vector<std::vector<int>> cones;
  for (const auto& v : p.vertices) {
    std::vector<RatVector> constraints;
    for (const auto& u : p.vertices) {
      if (u != v) constraints.push_back(u - v);
    }
    ConeGenerators g = cone_generators(constraints, p.dim);
    std::vector<int> cone;
    for (const auto& r : g.rays) {
      auto it = std::find(rays.begin(), rays.end(), r);
      if (it == rays.end()) {
        rays.push_back(r);
        cone.push_back(static_cast<int>(rays.size() - 1));
      } else {
        cone.push_back(static_cast<int>(it - rays.begin()));
      }
    }
    std::sort(cone.begin(), cone.end());
    cones.push_back(std::move(cone));
  }
  return Fan(p.dim, std::move(rays), std::move(cones));
}

Fan common_refinement(const Fan& f, const Fan& g) {
  if (f.dim() != g.dim()) throw std::invalid_argument("common_refinement: dimension mismatch");
  const int n = f.dim();
  std::vector<std::vector<RatVector>> pieces;
  for (std::size_t i = 0; i < f.size(); ++i) {
    for (std::size_t j = 0; j < g.size(); ++j) {
      std::vector<RatVector> constraints = f.facets(i);
      constraints.insert(constraints.end(), g.facets(j).begin(), g.facets(j).end());
      ConeGenerators c = cone_generators(constraints, n);
      if (!c.lineality.empty()) throw InvalidFan("common_refinement: non-pointed intersection");
      if (rank(c.rays) != n) continue;
      pieces.push_back(std::move(c.rays));
    }
  }

  std::vector<RatVector> rest;
  std::vector<bool> used(f.rays().size(), false);
  for (const auto& piece : pieces) {
    for (const auto& r : piece) {
      auto it = std::find(f.rays().begin(), f.rays().end(), r);
      if (it != f.rays().end()) {
        used[static_cast<std::size_t>(it - f.rays().begin())] = true;
      } else {
        rest.push_back(r);
      }
    }
  }
  std::sort(rest.begin(), rest.end(), lex_less);
  rest.erase(std::unique(rest.begin(), rest.end()), rest.end());
  std::vector<RatVector> rays;
  for (std::size_t k = 0; k < f.rays().size(); ++k) {
    if (used[k]) rays.push_back(f.rays()[k]);
  }
  rays.insert(rays.end(), rest.begin(), rest.end());

  std::vector<std::vector<int>> cones;
  for (const auto& piece : pieces) {
    std::vector<int> cone;
    for (const auto& r : piece) {
      cone.push_back(static_cast<int>(std::find(rays.begin(), rays.end(), r) - rays.begin()));
    }
    std::sort(cone.begin(), cone.end());
    cones.push_back(std::move(cone));
  }
  return Fan(n, std::move(rays), std::move(cones));
}

RatioMinimum minimize_ratio(const ConewiseLinearFunction& num, const ConewiseLinearFunction& den,
                            const Fan& refinement) {
  if (refinement.rays().empty()) throw InvalidFan("minimize_ratio: refinement has no rays");
  std::optional<RatioMinimum> best;
  for (const auto& r : refinement.rays()) {
    Rational d = den(r);
    if (sgn(d) <= 0) {
      std::string coords;
      for (const auto& q : r) coords += (coords.empty() ? "" : ",") + to_pq(q);
      throw NonpositiveDenominator("denominator is " + to_pq(d) + " at ray (" + coords + ")");
    }
    Rational value = num(r) / d;
    if (!best || value < best->value) best = RatioMinimum{value, r};
  }
  return *best;
}

}  // namespace tstab
