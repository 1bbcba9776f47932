#pragma once

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "tstab/fan.hpp"
#include "tstab/polytope.hpp"
#include "tstab/rational.hpp"

namespace tstab {

// Smooth complete projective toric variety.
class ToricVariety {
 public:
  // Throws InvalidVariety if the fan is incomplete, a maximal cone is not
  // unimodular, or no ample divisor exists.
  ToricVariety(std::string name, Fan fan);

  const std::string& name() const { return name_; }
  const Fan& fan() const { return fan_; }
  int dim() const { return fan_.dim(); }
  std::size_t num_rays() const { return fan_.rays().size(); }
  const RatVector& ray(std::size_t i) const { return fan_.rays()[i]; }

  // B^{-1} where the rows of B are the rays of maximal cone i, in the order
  // of fan().cones()[i].
  const RatMatrix& cone_basis_inverse(std::size_t i) const { return basis_inv_[i]; }

  // Coefficients of w in the ray basis of the first cone containing w.
  // Throws NotInFan.
  std::pair<std::size_t, RatVector> cone_coordinates(const RatVector& w) const;

  // Coefficients of an ample divisor found while checking projectivity.
  const RatVector& ample_witness() const { return ample_; }

 private:
  std::string name_;
  Fan fan_;
  std::vector<RatMatrix> basis_inv_;
  RatVector ample_;
};

using VarietyPtr = std::shared_ptr<const ToricVariety>;

// Builtin registry: P1, P2, P3, P1xP1, dP1.
//   P1     rays (1), (-1)
//   P2     e1, e2, -e1-e2
//   P3     e1, e2, e3, -e1-e2-e3
//   P1xP1  e1, e2, -e1, -e2
//   dP1    e1, e2, -e1-e2, e1+e2 (exceptional curve last)
const std::vector<std::string>& builtin_variety_names();
// Throws ParseError for an unknown name.
VarietyPtr builtin_variety(std::string_view name);

// Text format: `dim n`, then `ray ...` lines with integer coordinates, then
// `cone ...` lines of 0-based ray indices; `#` starts a comment.
VarietyPtr parse_variety(std::string_view text, std::string name);
// A builtin name or a path to a variety file.
VarietyPtr load_variety(const std::string& name_or_path);

// sum a_i D_i with rational a_i, one per ray.
class ToricRDivisor {
 public:
  // Throws ParseError when the coefficient count differs from the ray count.
  ToricRDivisor(VarietyPtr variety, RatVector coeffs);

  const ToricVariety& variety() const { return *variety_; }
  const VarietyPtr& variety_ptr() const { return variety_; }
  const RatVector& coeffs() const { return coeffs_; }
  int dim() const { return variety_->dim(); }

  ToricRDivisor operator+(const ToricRDivisor& o) const;
  ToricRDivisor operator-(const ToricRDivisor& o) const;
  ToricRDivisor scaled(const Rational& lambda) const;
  // a_i -> a_i + <m, v_i>; linearly equivalent, polytope shifted by -m.
  ToricRDivisor translated(const RatVector& m) const;

 private:
  VarietyPtr variety_;
  RatVector coeffs_;
};

ToricRDivisor operator*(const Rational& lambda, const ToricRDivisor& d);

// Comma-separated coefficients in ray order.
ToricRDivisor parse_divisor(VarietyPtr variety, std::string_view text);

ToricRDivisor anticanonical(const VarietyPtr& variety);

// {x : <x, v_i> >= -a_i}
HPolytope section_polytope(const ToricRDivisor& d);
VPolytope section_vertices(const ToricRDivisor& d);

// n! times the Euclidean volume of the section polytope.
Rational vol(const ToricRDivisor& d);
bool is_big(const ToricRDivisor& d);

// m_sigma with <m_sigma, v_i> = -a_i on the rays of cone i.
RatVector cartier_data(const ToricRDivisor& d, std::size_t cone);
bool is_nef(const ToricRDivisor& d);
bool is_ample(const ToricRDivisor& d);

struct NefThreshold {
  Rational value;
  bool positive;
};

// sup{s : -K - s xi nef}. Throws NotAmple.
NefThreshold nef_threshold(const ToricRDivisor& xi);

// (-K . xi^{n-1}) / xi^n. Throws SlopeUndefined unless xi is ample and -K
// nef, or if the sampled volumes are not a degree-n polynomial.
Rational slope(const ToricRDivisor& xi);

// Open interval of tau with L + tau S big (nullopt = unbounded side).
// Throws NotBig if L itself is not big.
struct BigInterval {
  std::optional<Rational> lower;
  std::optional<Rational> upper;
};
BigInterval big_interval(const ToricRDivisor& l, const ToricRDivisor& s);

}  // namespace tstab
