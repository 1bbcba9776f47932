#include "tstab/toric.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>

#include "tstab/double_description.hpp"
#include "tstab/errors.hpp"

namespace tstab {
namespace {

RatVector cartier(const Fan& fan, const RatMatrix& binv, std::size_t cone, const RatVector& a) {
  const auto& idx = fan.cones()[cone];
  const std::size_t n = idx.size();
  RatVector m(n, Rational(0));
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t l = 0; l < n; ++l) m[k] -= binv[k][l] * a[static_cast<std::size_t>(idx[l])];
  }
  return m;
}

// Minimum over (sigma, j not in sigma) of <m_sigma, v_j> + a_j, sign only.
int nef_margin_sign(const Fan& fan, const std::vector<RatMatrix>& binv, const RatVector& a) {
  int worst = 1;
  for (std::size_t c = 0; c < fan.size(); ++c) {
    RatVector m = cartier(fan, binv[c], c, a);
    const auto& idx = fan.cones()[c];
    for (std::size_t j = 0; j < fan.rays().size(); ++j) {
      if (std::find(idx.begin(), idx.end(), static_cast<int>(j)) != idx.end()) continue;
      int s = sgn(dot(m, fan.rays()[j]) + a[j]);
      worst = std::min(worst, s);
      if (worst < 0) return worst;
    }
  }
  return worst;
}

Rational factorial(int n) {
  Rational f = 1;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

}  // namespace

ToricVariety::ToricVariety(std::string name, Fan fan) : name_(std::move(name)), fan_(std::move(fan)) {
  const int n = fan_.dim();
  if (!is_complete(fan_)) throw InvalidVariety(name_ + ": fan is not complete");
  for (std::size_t c = 0; c < fan_.size(); ++c) {
    const auto& idx = fan_.cones()[c];
    if (static_cast<int>(idx.size()) != n) throw InvalidVariety(name_ + ": cone " + std::to_string(c) + " is not simplicial");
    RatMatrix b;
    for (int k : idx) b.push_back(fan_.rays()[static_cast<std::size_t>(k)]);
    if (abs(determinant(b)) != 1) throw InvalidVariety(name_ + ": cone " + std::to_string(c) + " is not smooth");
    basis_inv_.push_back(inverse(b));
  }
  for (std::size_t r = 0; r < fan_.rays().size(); ++r) {
    bool used = false;
    for (const auto& idx : fan_.cones()) used = used || std::find(idx.begin(), idx.end(), static_cast<int>(r)) != idx.end();
    if (!used) throw InvalidVariety(name_ + ": ray " + std::to_string(r) + " lies in no cone");
  }

  // Nef cone in coefficient space; the sum of its extreme rays lies in the
  // relative interior, hence is ample iff an ample divisor exists.
  const std::size_t r = fan_.rays().size();
  std::vector<RatVector> rows;
  for (std::size_t c = 0; c < fan_.size(); ++c) {
    const auto& idx = fan_.cones()[c];
    for (std::size_t j = 0; j < r; ++j) {
      if (std::find(idx.begin(), idx.end(), static_cast<int>(j)) != idx.end()) continue;
      RatVector row(r, Rational(0));
      row[j] = 1;
      const RatVector& vj = fan_.rays()[j];
      for (std::size_t l = 0; l < idx.size(); ++l) {
        Rational coef = 0;
        for (std::size_t k = 0; k < idx.size(); ++k) coef += vj[k] * basis_inv_[c][k][l];
        row[static_cast<std::size_t>(idx[l])] -= coef;
      }
      rows.push_back(std::move(row));
    }
  }
  ConeGenerators nef = cone_generators(rows, static_cast<int>(r));
  ample_.assign(r, Rational(0));
  for (const auto& g : nef.rays) ample_ = ample_ + g;
  if (nef.rays.empty() || nef_margin_sign(fan_, basis_inv_, ample_) <= 0) {
    throw InvalidVariety(name_ + ": no ample divisor exists (not projective)");
  }
}

std::pair<std::size_t, RatVector> ToricVariety::cone_coordinates(const RatVector& w) const {
  auto c = fan_.find_cone(w);
  if (!c) throw NotInFan("vector lies in no maximal cone");
  const RatMatrix& binv = basis_inv_[*c];
  const std::size_t n = w.size();
  RatVector lambda(n, Rational(0));
  // w = B^T lambda, so lambda = (B^{-1})^T w.
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t j = 0; j < n; ++j) lambda[k] += binv[j][k] * w[j];
  }
  return {*c, lambda};
}

const std::vector<std::string>& builtin_variety_names() {
  static const std::vector<std::string> names{"P1", "P2", "P3", "P1xP1", "dP1"};
  return names;
}

VarietyPtr builtin_variety(std::string_view name) {
  auto v = [](std::initializer_list<int> xs) {
    RatVector out;
    for (int x : xs) out.emplace_back(x);
    return out;
  };
  if (name == "P1") {
    return std::make_shared<ToricVariety>("P1", Fan(1, {v({1}), v({-1})}, {{0}, {1}}));
  }
  if (name == "P2") {
    return std::make_shared<ToricVariety>(
        "P2", Fan(2, {v({1, 0}), v({0, 1}), v({-1, -1})}, {{0, 1}, {1, 2}, {0, 2}}));
  }
  if (name == "P3") {
    return std::make_shared<ToricVariety>(
        "P3", Fan(3, {v({1, 0, 0}), v({0, 1, 0}), v({0, 0, 1}), v({-1, -1, -1})},
                  {{0, 1, 2}, {0, 1, 3}, {0, 2, 3}, {1, 2, 3}}));
  }
  if (name == "P1xP1") {
    return std::make_shared<ToricVariety>(
        "P1xP1", Fan(2, {v({1, 0}), v({0, 1}), v({-1, 0}), v({0, -1})},
                     {{0, 1}, {1, 2}, {2, 3}, {0, 3}}));
  }
  if (name == "dP1") {
    return std::make_shared<ToricVariety>(
        "dP1", Fan(2, {v({1, 0}), v({0, 1}), v({-1, -1}), v({1, 1})},
                   {{0, 3}, {1, 3}, {1, 2}, {0, 2}}));
  }
  throw ParseError("unknown builtin variety '" + std::string(name) + "'");
}

VarietyPtr parse_variety(std::string_view text, std::string name) {
  std::istringstream in{std::string(text)};
  std::string line;
  int dim = 0;
  int lineno = 0;
  std::vector<RatVector> rays;
  std::vector<std::vector<int>> cones;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string key;
    if (!(ls >> key)) continue;
    const std::string where = name + ":" + std::to_string(lineno) + ": ";
    std::vector<std::string> toks;
    for (std::string t; ls >> t;) toks.push_back(t);
    if (key == "dim") {
      if (dim != 0 || toks.size() != 1) throw ParseError(where + "expected a single `dim n` line");
      Rational d = parse_rational(toks[0]);
      if (d.get_den() != 1 || d < 1 || d > 8) throw ParseError(where + "bad dimension");
      dim = static_cast<int>(d.get_num().get_si());
    } else if (key == "ray") {
      if (dim == 0) throw ParseError(where + "`ray` before `dim`");
      if (static_cast<int>(toks.size()) != dim) throw ParseError(where + "ray has wrong number of coordinates");
      RatVector r;
      for (const auto& t : toks) {
        Rational q = parse_rational(t);
        if (q.get_den() != 1) throw ParseError(where + "ray coordinates must be integers");
        r.push_back(q);
      }
      rays.push_back(std::move(r));
    } else if (key == "cone") {
      if (toks.empty()) throw ParseError(where + "empty cone");
      std::vector<int> c;
      for (const auto& t : toks) {
        Rational q = parse_rational(t);
        if (q.get_den() != 1 || q < 0 || q >= static_cast<long>(rays.size())) {
          throw ParseError(where + "cone index '" + t + "' out of range");
        }
        c.push_back(static_cast<int>(q.get_num().get_si()));
      }
      std::sort(c.begin(), c.end());
      cones.push_back(std::move(c));
    } else {
      throw ParseError(where + "unknown keyword '" + key + "'");
    }
  }
  if (dim == 0) throw ParseError(name + ": missing `dim` line");
  if (cones.empty()) throw ParseError(name + ": no cones");
  return std::make_shared<ToricVariety>(std::move(name), Fan(dim, std::move(rays), std::move(cones)));
}

VarietyPtr load_variety(const std::string& name_or_path) {
  const auto& names = builtin_variety_names();
  if (std::find(names.begin(), names.end(), name_or_path) != names.end()) return builtin_variety(name_or_path);
  std::ifstream f(name_or_path);
  if (!f) throw ParseError("cannot open variety file '" + name_or_path + "'");
  std::stringstream buf;
  buf << f.rdbuf();
  return parse_variety(buf.str(), name_or_path);
}

ToricRDivisor::ToricRDivisor(VarietyPtr variety, RatVector coeffs)
    : variety_(std::move(variety)), coeffs_(std::move(coeffs)) {
  if (coeffs_.size() != variety_->num_rays()) {
    throw ParseError("divisor on " + variety_->name() + " needs " + std::to_string(variety_->num_rays()) +
                     " coefficients, got " + std::to_string(coeffs_.size()));
  }
}

ToricRDivisor ToricRDivisor::operator+(const ToricRDivisor& o) const {
  return ToricRDivisor(variety_, coeffs_ + o.coeffs_);
}

ToricRDivisor ToricRDivisor::operator-(const ToricRDivisor& o) const {
  return ToricRDivisor(variety_, coeffs_ - o.coeffs_);
}

ToricRDivisor ToricRDivisor::scaled(const Rational& lambda) const {
  return ToricRDivisor(variety_, lambda * coeffs_);
}

ToricRDivisor ToricRDivisor::translated(const RatVector& m) const {
  RatVector a = coeffs_;
  for (std::size_t i = 0; i < a.size(); ++i) a[i] += dot(m, variety_->ray(i));
  return ToricRDivisor(variety_, std::move(a));
}

ToricRDivisor operator*(const Rational& lambda, const ToricRDivisor& d) { return d.scaled(lambda); }

ToricRDivisor parse_divisor(VarietyPtr variety, std::string_view text) {
  return ToricRDivisor(std::move(variety), parse_rational_list(text));
}

ToricRDivisor anticanonical(const VarietyPtr& variety) {
  return ToricRDivisor(variety, RatVector(variety->num_rays(), Rational(1)));
}

HPolytope section_polytope(const ToricRDivisor& d) {
  HPolytope p;
  p.dim = d.dim();
  for (std::size_t i = 0; i < d.coeffs().size(); ++i) p.add(d.variety().ray(i), -d.coeffs()[i]);
  return p;
}

VPolytope section_vertices(const ToricRDivisor& d) { return enumerate_vertices(section_polytope(d)); }

Rational vol(const ToricRDivisor& d) { return factorial(d.dim()) * volume(section_vertices(d)); }

bool is_big(const ToricRDivisor& d) { return sgn(vol(d)) > 0; }

RatVector cartier_data(const ToricRDivisor& d, std::size_t cone) {
  const auto& X = d.variety();
  return cartier(X.fan(), X.cone_basis_inverse(cone), cone, d.coeffs());
}

namespace {

int margin_sign(const ToricRDivisor& d) {
  const auto& X = d.variety();
  std::vector<RatMatrix> binv;
  for (std::size_t c = 0; c < X.fan().size(); ++c) binv.push_back(X.cone_basis_inverse(c));
  return nef_margin_sign(X.fan(), binv, d.coeffs());
}

}  // namespace

bool is_nef(const ToricRDivisor& d) { return margin_sign(d) >= 0; }

bool is_ample(const ToricRDivisor& d) { return margin_sign(d) > 0; }

NefThreshold nef_threshold(const ToricRDivisor& xi) {
  if (!is_ample(xi)) throw NotAmple("nef_threshold: divisor is not ample");
  const auto& X = xi.variety();
  ToricRDivisor k = anticanonical(xi.variety_ptr());
  std::optional<Rational> best;
  for (std::size_t c = 0; c < X.fan().size(); ++c) {
    RatVector mk = cartier_data(k, c);
    RatVector mx = cartier_data(xi, c);
    const auto& idx = X.fan().cones()[c];
    for (std::size_t j = 0; j < X.num_rays(); ++j) {
      if (std::find(idx.begin(), idx.end(), static_cast<int>(j)) != idx.end()) continue;
      // c0 - s c1 >= 0 with c1 > 0 by ampleness.
      Rational c0 = dot(mk, X.ray(j)) + k.coeffs()[j];
      Rational c1 = dot(mx, X.ray(j)) + xi.coeffs()[j];
      Rational s = c0 / c1;
      if (!best || s < *best) best = s;
    }
  }
  if (!best) throw NotAmple("nef_threshold: fan has a single cone");
  return {*best, sgn(*best) > 0};
}

Rational slope(const ToricRDivisor& xi) {
  if (!is_ample(xi)) throw SlopeUndefined("slope: divisor is not ample");
  ToricRDivisor k = anticanonical(xi.variety_ptr());
  if (!is_nef(k)) throw SlopeUndefined("slope: anticanonical divisor is not nef");
  const int n = xi.dim();
  RatMatrix vander;
  RatVector values;
  for (int t = 0; t <= n; ++t) {
    RatVector row;
    Rational p = 1;
    for (int e = 0; e <= n; ++e) {
      row.push_back(p);
      p *= t;
    }
    vander.push_back(std::move(row));
    values.push_back(vol(xi + k.scaled(t)));
  }
  RatVector coef;
  if (!solve(vander, values, coef)) throw SlopeUndefined("slope: singular interpolation system");
  const int t = n + 1;
  Rational predicted = 0;
  Rational p = 1;
  for (int e = 0; e <= n; ++e) {
    predicted += coef[static_cast<std::size_t>(e)] * p;
    p *= t;
  }
  if (predicted != vol(xi + k.scaled(t))) {
    throw SlopeUndefined("slope: volumes are not a degree-n polynomial in t");
  }
  return coef[1] / n / coef[0];
}

BigInterval big_interval(const ToricRDivisor& l, const ToricRDivisor& s) {
  if (!is_big(l)) throw NotBig("big_interval: base divisor is not big");
  const int n = l.dim();
  HPolytope q;
  q.dim = n + 1;
  for (std::size_t i = 0; i < l.coeffs().size(); ++i) {
    RatVector normal = l.variety().ray(i);
    normal.push_back(s.coeffs()[i]);
    q.add(std::move(normal), -l.coeffs()[i]);
  }
  BigInterval out;
  RatVector e = unit_vector(n + 1, n);
  if (auto hi = maximize(q, e)) out.upper = *hi;
  if (auto lo = maximize(q, -e)) out.lower = -*lo;
  return out;
}

}  // namespace tstab
