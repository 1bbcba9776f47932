#include "tstab/random.hpp"

#include <numeric>
#include <stdexcept>

#include "tstab/cone_explorer.hpp"

namespace tstab {
namespace {

constexpr int kMaxAttempts = 10000;

long uniform_long(Rng& rng, long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(rng); }

ToricRDivisor random_translate(const ToricRDivisor& d, Rng& rng) {
  RatVector m;
  for (int i = 0; i < d.dim(); ++i) m.emplace_back(uniform_long(rng, -2, 2));
  return d.translated(m);
}

}  // namespace

Rational random_rational(Rng& rng, const Rational& lo, const Rational& hi, int max_den) {
  const long q = uniform_long(rng, 1, max_den);
  Rational a = lo * q, b = hi * q;
  // ceil(a) .. floor(b)
  Integer pa = a.get_num() / a.get_den();
  if (Rational(pa) < a) pa += 1;
  Integer pb = b.get_num() / b.get_den();
  if (Rational(pb) > b) pb -= 1;
  if (pa > pb) return lo;
  const long p = uniform_long(rng, pa.get_si(), pb.get_si());
  Rational r(p, q);
  r.canonicalize();
  return r;
}

ToricRDivisor random_big_divisor(const VarietyPtr& x, Rng& rng) {
  for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
    RatVector a;
    for (std::size_t i = 0; i < x->num_rays(); ++i) a.push_back(random_rational(rng, Rational(-1, 2), 2, 4));
    ToricRDivisor d(x, std::move(a));
    if (is_big(d)) return random_translate(d, rng);
  }
  throw std::runtime_error("random_big_divisor: sampler did not find a big divisor");
}

ToricRDivisor random_ample_divisor(const VarietyPtr& x, Rng& rng) {
  for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
    RatVector a;
    for (std::size_t i = 0; i < x->num_rays(); ++i) a.push_back(random_rational(rng, Rational(1, 4), 2, 4));
    ToricRDivisor d(x, std::move(a));
    if (is_ample(d)) return random_translate(d, rng);
  }
  throw std::runtime_error("random_ample_divisor: sampler did not find an ample divisor");
}

RatVector random_primitive(Rng& rng, int dim, int radius) {
  while (true) {
    std::vector<long> w;
    long g = 0;
    for (int i = 0; i < dim; ++i) {
      w.push_back(uniform_long(rng, -radius, radius));
      g = std::gcd(g, w.back());
    }
    if (g != 1) continue;
    RatVector out;
    for (long c : w) out.emplace_back(c);
    return out;
  }
}

ComparisonTriple random_comparison_triple(const VarietyPtr& x, Rng& rng) {
  const Rational e0 = epsilon_zero(x->dim());
  for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
    ToricRDivisor l = random_big_divisor(x, rng);
    Rational eps = random_rational(rng, Rational(1, 100), e0 - Rational(1, 100), 40);
    if (sgn(eps) <= 0 || eps >= e0) continue;
    RatVector q;
    for (std::size_t i = 0; i < x->num_rays(); ++i) q.push_back(random_rational(rng, -eps, eps, 8));
    ToricRDivisor l_eps = l + ToricRDivisor(x, std::move(q));
    if (is_big(l.scaled(1 + eps) - l_eps) && is_big(l_eps - l.scaled(1 - eps))) return {l, l_eps, eps};
  }
  throw std::runtime_error("random_comparison_triple: sampler did not find an admissible triple");
}

}  // namespace tstab
