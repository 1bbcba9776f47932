#include "tstab/polytope.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include "tstab/double_description.hpp"
#include "tstab/errors.hpp"

namespace tstab {

void HPolytope::add(RatVector normal, Rational offset) {
  if (static_cast<int>(normal.size()) != dim) {
    throw std::invalid_argument("HPolytope::add: normal has wrong dimension");
  }
  if (is_zero(normal)) throw std::invalid_argument("HPolytope::add: zero normal");
  halfspaces.push_back({std::move(normal), std::move(offset)});
}

PolyhedronGenerators polyhedron_generators(const HPolytope& p) {
  // Homogenize: <n, x> - b t >= 0 and t >= 0 in dimension dim + 1.
  const int d = p.dim;
  std::vector<RatVector> constraints;
  constraints.reserve(p.halfspaces.size() + 1);
  for (const auto& h : p.halfspaces) {
    RatVector row = h.normal;
    row.push_back(-h.offset);
    constraints.push_back(std::move(row));
  }
  constraints.push_back(unit_vector(d + 1, d));

  ConeGenerators cone = cone_generators(constraints, d + 1);
  PolyhedronGenerators out;
  for (auto& r : cone.rays) {
    const Rational t = r[static_cast<std::size_t>(d)];
    RatVector x(r.begin(), r.begin() + d);
    if (sgn(t) > 0) {
      Rational inv = 1 / t;
      out.vertices.push_back(inv * x);
    } else {
      out.rays.push_back(std::move(x));
    }
  }
  for (auto& l : cone.lineality) {
    out.lineality.emplace_back(l.begin(), l.begin() + d);
  }
  return out;
}

VPolytope enumerate_vertices(const HPolytope& p) {
  PolyhedronGenerators g = polyhedron_generators(p);
  VPolytope out{p.dim, {}};
  if (!g.feasible()) return out;
  if (!g.bounded()) throw UnboundedPolytope("polytope has a nontrivial recession cone");
  out.vertices = std::move(g.vertices);
  std::sort(out.vertices.begin(), out.vertices.end(), lex_less);
  return out;
}

std::optional<Rational> maximize(const HPolytope& p, const RatVector& objective) {
  PolyhedronGenerators g = polyhedron_generators(p);
  if (!g.feasible()) throw DegeneratePolytope("maximize: polyhedron is empty");
  for (const auto& l : g.lineality) {
    if (sgn(dot(objective, l)) != 0) return std::nullopt;
  }
  for (const auto& r : g.rays) {
    if (sgn(dot(objective, r)) > 0) return std::nullopt;
  }
  Rational best = dot(objective, g.vertices.front());
  for (const auto& v : g.vertices) best = std::max(best, Rational(dot(objective, v)));
  return best;
}

namespace {

// Coordinates on which the projection of the affine hull is injective.
std::vector<int> affine_frame(const std::vector<RatVector>& pts, int& dim_out) {
  const std::size_t d = pts.front().size();
  RatMatrix diffs;
  for (std::size_t i = 1; i < pts.size(); ++i) diffs.push_back(pts[i] - pts[0]);
  const int dim = rank(diffs);
  dim_out = dim;
  std::vector<int> coords;
  int current = 0;
  for (std::size_t c = 0; c < d && current < dim; ++c) {
    std::vector<int> trial = coords;
    trial.push_back(static_cast<int>(c));
    RatMatrix proj;
    for (const auto& v : diffs) {
      RatVector row;
      for (int k : trial) row.push_back(v[static_cast<std::size_t>(k)]);
      proj.push_back(std::move(row));
    }
    int r = rank(proj);
    if (r > current) {
      coords = std::move(trial);
      current = r;
    }
  }
  return coords;
}

RatVector cross_normal(const RatMatrix& rows, int d) {
  RatVector normal(static_cast<std::size_t>(d));
  for (int k = 0; k < d; ++k) {
    RatMatrix minor;
    for (const auto& r : rows) {
      RatVector m;
      for (int j = 0; j < d; ++j)
        if (j != k) m.push_back(r[static_cast<std::size_t>(j)]);
      minor.push_back(std::move(m));
    }
    Rational det = rows.empty() ? Rational(1) : determinant(minor);
    normal[static_cast<std::size_t>(k)] = (k % 2 == 0) ? det : Rational(-det);
  }
  return normal;
}

bool next_combination(std::vector<int>& c, int n) {
  const int k = static_cast<int>(c.size());
  for (int i = k - 1; i >= 0; --i) {
    if (c[static_cast<std::size_t>(i)] < n - k + i) {
      ++c[static_cast<std::size_t>(i)];
      for (int j = i + 1; j < k; ++j) c[static_cast<std::size_t>(j)] = c[static_cast<std::size_t>(j - 1)] + 1;
      return true;
    }
  }
  return false;
}

void triangulate_into(const std::vector<RatVector>& all, const std::vector<int>& ids,
                      std::vector<std::vector<int>>& out) {
  std::vector<RatVector> pts;
  for (int i : ids) pts.push_back(all[static_cast<std::size_t>(i)]);
  int dim = 0;
  std::vector<int> frame = affine_frame(pts, dim);
  if (dim == 0) {
    out.push_back({ids.front()});
    return;
  }
  std::vector<RatVector> q;
  for (const auto& p : pts) {
    RatVector r;
    for (int k : frame) r.push_back(p[static_cast<std::size_t>(k)]);
    q.push_back(std::move(r));
  }
  const int m = static_cast<int>(q.size());
  if (dim == 1) {
    int lo = 0, hi = 0;
    for (int i = 1; i < m; ++i) {
      if (q[static_cast<std::size_t>(i)][0] < q[static_cast<std::size_t>(lo)][0]) lo = i;
      if (q[static_cast<std::size_t>(i)][0] > q[static_cast<std::size_t>(hi)][0]) hi = i;
    }
    out.push_back({ids[static_cast<std::size_t>(lo)], ids[static_cast<std::size_t>(hi)]});
    return;
  }

  std::set<std::vector<int>> seen;
  std::vector<int> comb(static_cast<std::size_t>(dim));
  for (int i = 0; i < dim; ++i) comb[static_cast<std::size_t>(i)] = i;
  do {
    const RatVector& base = q[static_cast<std::size_t>(comb[0])];
    RatMatrix rows;
    for (int j = 1; j < dim; ++j) rows.push_back(q[static_cast<std::size_t>(comb[static_cast<std::size_t>(j)])] - base);
    if (rank(rows) != dim - 1) continue;
    RatVector normal = cross_normal(rows, dim);
    Rational offset = dot(normal, base);
    bool any_pos = false, any_neg = false;
    std::vector<int> on;
    for (int i = 0; i < m; ++i) {
      int s = sgn(dot(normal, q[static_cast<std::size_t>(i)]) - offset);
      if (s > 0) any_pos = true;
      if (s < 0) any_neg = true;
      if (s == 0) on.push_back(i);
    }
    if (any_pos && any_neg) continue;
    if (on.front() == 0) continue;  // facet through the apex
    if (!seen.insert(on).second) continue;
    std::vector<int> facet_ids;
    for (int i : on) facet_ids.push_back(ids[static_cast<std::size_t>(i)]);
    std::vector<std::vector<int>> sub;
    triangulate_into(all, facet_ids, sub);
    for (auto& s : sub) {
      s.insert(s.begin(), ids.front());
      out.push_back(std::move(s));
    }
  } while (next_combination(comb, m));
}

Rational simplex_volume_times_factorial(const std::vector<RatVector>& pts, const std::vector<int>& simplex) {
  RatMatrix m;
  const RatVector& base = pts[static_cast<std::size_t>(simplex.front())];
  for (std::size_t i = 1; i < simplex.size(); ++i) m.push_back(pts[static_cast<std::size_t>(simplex[i])] - base);
  return abs(determinant(std::move(m)));
}

Rational factorial(int n) {
  Rational f = 1;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

}  // namespace

int affine_dimension(const std::vector<RatVector>& points) {
  if (points.empty()) return -1;
  RatMatrix diffs;
  for (std::size_t i = 1; i < points.size(); ++i) diffs.push_back(points[i] - points[0]);
  return rank(diffs);
}

std::vector<std::vector<int>> triangulate(const std::vector<RatVector>& points) {
  std::vector<std::vector<int>> out;
  if (points.empty()) return out;
  std::vector<int> ids(points.size());
  for (std::size_t i = 0; i < ids.size(); ++i) ids[i] = static_cast<int>(i);
  triangulate_into(points, ids, out);
  return out;
}

Rational volume(const VPolytope& p) {
  if (p.vertices.empty() || affine_dimension(p.vertices) < p.dim) return 0;
  Rational total = 0;
  for (const auto& s : triangulate(p.vertices)) total += simplex_volume_times_factorial(p.vertices, s);
  return total / factorial(p.dim);
}

RatVector barycenter(const VPolytope& p) {
  if (p.vertices.empty() || affine_dimension(p.vertices) < p.dim) {
    throw DegeneratePolytope("barycenter of a polytope with zero volume");
  }
  RatVector acc(static_cast<std::size_t>(p.dim), Rational(0));
  Rational total = 0;
  for (const auto& s : triangulate(p.vertices)) {
    Rational v = simplex_volume_times_factorial(p.vertices, s);
    RatVector sum(static_cast<std::size_t>(p.dim), Rational(0));
    for (int i : s) sum = sum + p.vertices[static_cast<std::size_t>(i)];
    acc = acc + v * sum;
    total += v;
  }
  return Rational(1) / (total * (p.dim + 1)) * acc;
}

std::pair<Rational, Rational> support_extrema(const VPolytope& p, const RatVector& w) {
  if (p.vertices.empty()) throw DegeneratePolytope("support_extrema of an empty polytope");
  Rational lo = dot(p.vertices.front(), w);
  Rational hi = lo;
  for (const auto& v : p.vertices) {
    Rational x = dot(v, w);
    if (x < lo) lo = x;
    if (x > hi) hi = x;
  }
  return {lo, hi};
}

std::size_t argmin_vertex(const VPolytope& p, const RatVector& w) {
  if (p.vertices.empty()) throw DegeneratePolytope("argmin_vertex of an empty polytope");
  std::size_t best = 0;
  Rational lo = dot(p.vertices.front(), w);
  for (std::size_t i = 1; i < p.vertices.size(); ++i) {
    Rational x = dot(p.vertices[i], w);
    if (x < lo) {
      lo = x;
      best = i;
    }
  }
  return best;
}

}  // namespace tstab
