#include "tstab/double_description.hpp"

#include <algorithm>
#include <cstdint>
#include <stdexcept>

namespace tstab {
namespace {

// Constraint indices at which a generator is tight.
class TightSet {
 public:
  void set(std::size_t i) {
    if (words_.size() <= i / 64) words_.resize(i / 64 + 1, 0);
    words_[i / 64] |= std::uint64_t{1} << (i % 64);
  }

  TightSet intersect(const TightSet& other) const {
    TightSet out;
    const std::size_t n = std::min(words_.size(), other.words_.size());
    out.words_.resize(n);
    for (std::size_t i = 0; i < n; ++i) out.words_[i] = words_[i] & other.words_[i];
    return out;
  }

  bool subset_of(const TightSet& other) const {
    for (std::size_t i = 0; i < words_.size(); ++i) {
      std::uint64_t o = i < other.words_.size() ? other.words_[i] : 0;
      if ((words_[i] & ~o) != 0) return false;
    }
    return true;
  }

  int count() const {
    int c = 0;
    for (auto w : words_) c += __builtin_popcountll(w);
    return c;
  }

 private:
  std::vector<std::uint64_t> words_;
};

struct Generator {
  RatVector v;
  TightSet tight;
};

}  // namespace

ConeGenerators cone_generators(std::span<const RatVector> constraints, int dim) {
  std::vector<RatVector> lineality;
  for (int i = 0; i < dim; ++i) lineality.push_back(unit_vector(dim, i));
  std::vector<Generator> rays;

  for (std::size_t c = 0; c < constraints.size(); ++c) {
    const RatVector& a = constraints[c];
    if (static_cast<int>(a.size()) != dim) {
      throw std::invalid_argument("cone_generators: constraint dimension mismatch");
    }

    auto pivot = std::find_if(lineality.begin(), lineality.end(),
                              [&](const RatVector& l) { return sgn(dot(a, l)) != 0; });
    if (pivot != lineality.end()) {
      RatVector l = *pivot;
      lineality.erase(pivot);
      Rational al = dot(a, l);
      if (sgn(al) < 0) {
        l = -l;
        al = -al;
      }
      for (auto& other : lineality) {
        Rational f = dot(a, other) / al;
        if (sgn(f) != 0) other = primitive(other - f * l);
      }
      for (auto& r : rays) {
        Rational f = dot(a, r.v) / al;
        if (sgn(f) != 0) r.v = primitive(r.v - f * l);
        r.tight.set(c);
      }
      Generator g{primitive(l), {}};
      for (std::size_t k = 0; k < c; ++k) g.tight.set(k);
      rays.push_back(std::move(g));
      continue;
    }

    std::vector<Rational> s(rays.size());
    std::vector<std::size_t> pos, neg;
    std::vector<Generator> next;
    for (std::size_t i = 0; i < rays.size(); ++i) {
      s[i] = dot(a, rays[i].v);
      int sign = sgn(s[i]);
      if (sign > 0) pos.push_back(i);
      if (sign < 0) neg.push_back(i);
      if (sign >= 0) {
        Generator g = rays[i];
        if (sign == 0) g.tight.set(c);
        next.push_back(std::move(g));
      }
    }

    const int pointed_dim = dim - static_cast<int>(lineality.size());
    for (std::size_t p : pos) {
      for (std::size_t q : neg) {
        TightSet common = rays[p].tight.intersect(rays[q].tight);
        if (common.count() < pointed_dim - 2) continue;
        bool adjacent = true;
        for (std::size_t r = 0; r < rays.size() && adjacent; ++r) {
          if (r == p || r == q) continue;
          if (common.subset_of(rays[r].tight)) adjacent = false;
        }
        if (!adjacent) continue;
        Generator g{primitive(s[p] * rays[q].v - s[q] * rays[p].v), common};
        g.tight.set(c);
        next.push_back(std::move(g));
      }
    }
    rays = std::move(next);
  }

  ConeGenerators out;
  out.lineality = std::move(lineality);
  for (auto& g : rays) {
    if (std::find(out.rays.begin(), out.rays.end(), g.v) == out.rays.end()) {
      out.rays.push_back(std::move(g.v));
    }
  }
  return out;
}

std::vector<RatVector> cone_facets(std::span<const RatVector> generators, int dim) {
  ConeGenerators dual = cone_generators(generators, dim);
  if (!dual.lineality.empty()) {
    throw std::invalid_argument("cone_facets: cone is not full-dimensional");
  }
  return dual.rays;
}

}  // namespace tstab
