#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

// Torus-invariant potentials on (P^1)^n, n in {1, 2}, in logarithmic
// coordinates s in [-S_max, S_max]^n. The background form of class p is
// dd^c g with g(s) = sum_i p_i log(1 + e^{s_i}), normalized so that
// omega^n has total mass V = prod p_i and omega^n <-> det D^2 g ds.
namespace tstab::mt {

class LogGrid {
 public:
  // Throws InvalidGrid if n is not 1 or 2, p has the wrong length or a
  // nonpositive entry, nodes < 64, S_max < 10, or the background mass on
  // the box is below (1 - 1e-6) V.
  static LogGrid create(int n, std::vector<double> p, int nodes, double smax);

  int n() const { return n_; }
  int nodes() const { return nodes_; }
  double smax() const { return smax_; }
  double h() const { return h_; }
  const std::vector<double>& p() const { return p_; }
  double coord(int i) const { return -smax_ + h_ * i; }
  // prod p_i.
  double nominal_volume() const;

  std::size_t size() const;
  // Product trapezoid weight of a flat node index.
  double weight(std::size_t node) const { return weights_[node]; }
  // Axis indices of a flat node index (axis 0 varies slowest).
  void unflatten(std::size_t node, int& i, int& j) const;

 private:
  int n_ = 1;
  int nodes_ = 0;
  double smax_ = 0;
  double h_ = 0;
  std::vector<double> p_;
  std::vector<double> weights_;
};

// Node values of a potential u. The sup-normalized ones (max = 0) are the
// elements of H_0; functionals also accept unnormalized values.
struct ToricPotential {
  std::vector<double> values;

  static ToricPotential zero(const LogGrid& grid);
  static ToricPotential from_function(const LogGrid& grid, const std::function<double(double, double)>& f);
  // Shifts values so that the maximum is 0.
  ToricPotential normalized() const;
  double sup() const;
  ToricPotential scaled(double lambda) const;
  ToricPotential operator-(const ToricPotential& o) const;
  ToricPotential operator+(const ToricPotential& o) const;
};

// Hessian field of a background Kahler form at every node: (h11) for
// n = 1, (h11, h22, h12) for n = 2. For n = 2 the mixed derivative lives on
// cells; h12 is its mean over the cells around a node, and the determinant
// uses the mean of its square, which makes the total mass of a Neumann
// perturbation telescope exactly.
struct Background {
  std::vector<double> h11, h22, h12;
  std::vector<double> cell12;   // (nodes - 1)^2 cell values, row-major; empty means 0
  std::vector<double> density;  // det of the Hessian, clamped at 0
  double volume = 0;            // quadrature of density
};

// Flux-form second difference of t * g with exact boundary slopes; the
// total mass is t V tanh(S_max/2)^n.
Background background_form(const LogGrid& grid, double t = 1.0);

// Background plus the finite-difference Hessian of u. Throws
// NotAdmissible if the result is not positive semidefinite up to 1e-8.
Background shifted_form(const LogGrid& grid, const Background& base, const ToricPotential& u);

class FunctionalContext {
 public:
  // twist_c defines alpha = c omega0; requires c p_i = 2 - p_i for every i
  // (InvalidTwist otherwise), in which case the Ricci potential is
  // constant. An optional torus-invariant chi replaces alpha by
  // alpha - dd^c chi and the Ricci potential by chi + const.
  FunctionalContext(LogGrid grid, double twist_c, std::optional<std::vector<double>> chi = std::nullopt);

  // Same grid with omega replaced by another background (no twist data).
  static FunctionalContext with_background(const LogGrid& grid, Background bg);

  const LogGrid& grid() const { return grid_; }
  const Background& background() const { return bg_; }
  double volume() const { return bg_.volume; }
  const std::vector<double>& ricci_potential() const { return f_; }
  double twist() const { return twist_; }

 private:
  FunctionalContext(LogGrid grid, Background bg);
  LogGrid grid_;
  Background bg_;
  std::vector<double> f_;
  double twist_ = 0;
};

// Quadrature weight times det(H + D^2 u) at every node. Throws
// NotAdmissible.
std::vector<double> ma_density(const FunctionalContext& ctx, const ToricPotential& u);

double functional_E(const FunctionalContext& ctx, const ToricPotential& u);
double functional_I(const FunctionalContext& ctx, const ToricPotential& u);
double functional_J(const FunctionalContext& ctx, const ToricPotential& u);
// -log((1/V) int e^{f-u} omega^n)
double functional_L(const FunctionalContext& ctx, const ToricPotential& u);
double functional_D(const FunctionalContext& ctx, const ToricPotential& u);
double functional_M(const FunctionalContext& ctx, const ToricPotential& u);
// (1/V) int log(omega_u^n / omega^n) omega_u^n. Throws ZeroDensity.
double entropy(const FunctionalContext& ctx, const ToricPotential& u);
// (1/V) int u omega^n
double mean_value(const FunctionalContext& ctx, const ToricPotential& u);

// log((1/V) int e^{-lambda u} omega^n) - lambda J(u)
double mt_quotient(const FunctionalContext& ctx, const ToricPotential& u, double lambda);

struct DingCheck {
  bool holds;
  double j, j_lambda, lower, upper;
};
// lambda^{n+1} J(u) <= J(lambda u) <= lambda^{(n+1)/n} J(u), tolerance
// 1e-6 max(1, J(u)).
DingCheck ding_inequality_check(const FunctionalContext& ctx, const ToricPotential& u, double lambda);

struct SandwichResult {
  bool holds;
  double i, j;
};
// J/n <= I - J <= n J with tolerance 1e-6 max(1, J).
SandwichResult ij_sandwich_check(const FunctionalContext& ctx, const ToricPotential& u);

// |J(u) - J(v) - J_{omega_v}(u - v) - (1/V) int (u - v)(omega^n - omega_v^n)|
double cocycle_check(const FunctionalContext& ctx, const ToricPotential& u, const ToricPotential& v);

// Largest eps in (0, 1] with
// ((1+e+e^2)/(1+e-e^2))^n (1+e+e^2)^{-1/n} <= 1.
double analytic_epsilon_zero(int n);

struct JComparison {
  bool holds;
  double j, j_perturbed;
};
// With omega_eps = (1+r) omega0 checks J_{omega + eps omega_eps}(u) <=
// J_omega(u) + 1e-8. Throws EpsilonTooLarge unless |r| <= eps <=
// analytic_epsilon_zero(n).
JComparison j_comparison_check(const FunctionalContext& ctx, const ToricPotential& u, double r, double eps);

// u_c(s) = log((e^s + c) / (e^s + 1)) on a one-dimensional grid.
ToricPotential concentration_potential(const LogGrid& grid, double c);

struct ProbeSample {
  double c, quotient, j, i, entropy;
};
struct ProbeRow {
  double lambda;
  std::vector<ProbeSample> samples;
  double slope;  // least squares of quotient against log(1/c)
};
// Requires n = 1 and p = 1 (NotAdmissible otherwise).
std::vector<ProbeRow> concentration_probe(const FunctionalContext& ctx, const std::vector<double>& lambdas,
                                          const std::vector<double>& c_values);

// Random admissible sup-normalized potential u = F(x) in moment
// coordinates x_i = p_i sigma(s_i), with F a random cosine sum
// scaled so that |F''| max(p)/4 + |grad F| lies in [0.2, 0.85].
ToricPotential random_potential(const LogGrid& grid, std::uint64_t seed);

}  // namespace tstab::mt
