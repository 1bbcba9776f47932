#include "tstab/mt_functionals.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <string>

#include "tstab/errors.hpp"

namespace tstab::mt {
namespace {

constexpr double kPsdTolerance = 1e-8;

double sigmoid(double s) { return s >= 0 ? 1.0 / (1.0 + std::exp(-s)) : std::exp(s) / (1.0 + std::exp(s)); }

double logaddexp(double a, double b) {
  double m = std::max(a, b);
  return m + std::log1p(std::exp(-std::abs(a - b)));
}

double softplus(double s) { return s > 0 ? s + std::log1p(std::exp(-s)) : std::log1p(std::exp(s)); }

// Second difference of p log(1 + e^s) in flux form, with the exact slope
// p sigma(+-S) as boundary flux. Summed against the trapezoid weights it
// telescopes to p tanh(S/2), and g + u is differenced by one stencil, so a
// convex total potential always has a nonnegative density. Each node uses
// the softplus branch that decays there to avoid cancellation.
std::vector<double> axis_density(const LogGrid& grid, double p) {
  const int N = grid.nodes();
  const double h = grid.h();
  std::vector<double> out(static_cast<std::size_t>(N));
  auto decaying = [&](int i, int sign) { return softplus(sign * grid.coord(i)); };
  for (int i = 1; i < N - 1; ++i) {
    const int sign = grid.coord(i) <= 0 ? 1 : -1;
    out[static_cast<std::size_t>(i)] =
        p * (decaying(i - 1, sign) - 2 * decaying(i, sign) + decaying(i + 1, sign)) / (h * h);
  }
  out.front() = p * ((decaying(1, 1) - decaying(0, 1)) / h - sigmoid(grid.coord(0))) / (h / 2);
  out.back() = p * ((decaying(N - 2, -1) - decaying(N - 1, -1)) / h - sigmoid(-grid.coord(N - 1))) / (h / 2);
  return out;
}

// Neumann second difference along one axis: ends use 2(u1 - u0)/h^2,
// which keeps the operator symmetric for trapezoid weights.
double second_diff(const std::vector<double>& u, std::size_t at, std::size_t stride, int i, int nodes, double h2) {
  const double c = u[at];
  if (i == 0) return 2.0 * (u[at + stride] - c) / h2;
  if (i == nodes - 1) return 2.0 * (u[at - stride] - c) / h2;
  return (u[at + stride] - 2.0 * c + u[at - stride]) / h2;
}

struct Hessian {
  std::vector<double> u11, u22, cell12;
};

Hessian fd_hessian(const LogGrid& grid, const std::vector<double>& u) {
  const std::size_t size = grid.size();
  const int N = grid.nodes();
  const double h2 = grid.h() * grid.h();
  Hessian out;
  out.u11.resize(size);
  if (grid.n() == 1) {
    for (int i = 0; i < N; ++i) out.u11[static_cast<std::size_t>(i)] = second_diff(u, static_cast<std::size_t>(i), 1, i, N, h2);
    return out;
  }
  out.u22.resize(size);
  const std::size_t row = static_cast<std::size_t>(N);
  for (int i = 0; i < N; ++i) {
    for (int j = 0; j < N; ++j) {
      const std::size_t k = static_cast<std::size_t>(i) * row + static_cast<std::size_t>(j);
      out.u11[k] = second_diff(u, k, row, i, N, h2);
      out.u22[k] = second_diff(u, k, 1, j, N, h2);
    }
  }
  const std::size_t cells = row - 1;
  out.cell12.resize(cells * cells);
  for (std::size_t i = 0; i < cells; ++i) {
    for (std::size_t j = 0; j < cells; ++j) {
      const std::size_t k = i * row + j;
      out.cell12[i * cells + j] = (u[k + row + 1] - u[k + row] - u[k + 1] + u[k]) / h2;
    }
  }
  return out;
}

// Mean of f(cell) over the (up to four) cells around node (i, j).
template <class F>
double cell_mean(int N, int i, int j, F&& f) {
  double s = 0;
  int count = 0;
  for (int ci = std::max(i - 1, 0); ci <= std::min(i, N - 2); ++ci) {
    for (int cj = std::max(j - 1, 0); cj <= std::min(j, N - 2); ++cj) {
      s += f(static_cast<std::size_t>(ci) * static_cast<std::size_t>(N - 1) + static_cast<std::size_t>(cj));
      ++count;
    }
  }
  return s / count;
}

double cell_at(const std::vector<double>& cells, std::size_t c) { return cells.empty() ? 0.0 : cells[c]; }

void require_same_grid(const LogGrid& grid, const ToricPotential& u) {
  if (u.values.size() != grid.size()) throw InvalidGrid("potential does not match the grid");
}

// Per-node integrands shared by the energy functionals.
struct Measures {
  std::vector<double> rho;    // omega^n density
  std::vector<double> rho_u;  // omega_u^n density (clamped)
  std::vector<double> mixed;  // omega^{n-1} ^ omega_u density (n = 2)
};

Measures measures(const FunctionalContext& ctx, const ToricPotential& u) {
  require_same_grid(ctx.grid(), u);
  Background shifted = shifted_form(ctx.grid(), ctx.background(), u);
  Measures m;
  m.rho = ctx.background().density;
  m.rho_u = shifted.density;
  if (ctx.grid().n() == 2) {
    const Background& a = ctx.background();
    m.mixed.resize(m.rho.size());
    const int N = ctx.grid().nodes();
    for (std::size_t k = 0; k < m.rho.size(); ++k) {
      int i = 0, j = 0;
      ctx.grid().unflatten(k, i, j);
      const double cross = a.cell12.empty() ? 0.0 : cell_mean(N, i, j, [&](std::size_t c) {
        return a.cell12[c] * shifted.cell12[c];
      });
      m.mixed[k] = 0.5 * (a.h11[k] * shifted.h22[k] + a.h22[k] * shifted.h11[k]) - cross;
    }
  }
  return m;
}

// log sum_k w_k rho_k e^{x_k}, shifted by the maximum exponent.
double log_integral_exp(const LogGrid& grid, const std::vector<double>& rho, const std::vector<double>& x) {
  double m = -std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < x.size(); ++k) {
    if (grid.weight(k) * rho[k] > 0) m = std::max(m, x[k]);
  }
  double s = 0;
  for (std::size_t k = 0; k < x.size(); ++k) s += grid.weight(k) * rho[k] * std::exp(x[k] - m);
  return m + std::log(s);
}

double energy(const FunctionalContext& ctx, const ToricPotential& u, const Measures& m) {
  const auto& v = u.values;
  const double V = ctx.volume();
  double s = 0;
  if (ctx.grid().n() == 1) {
    for (std::size_t k = 0; k < v.size(); ++k) s += ctx.grid().weight(k) * v[k] * (m.rho[k] + m.rho_u[k]);
    return s / (2.0 * V);
  }
  for (std::size_t k = 0; k < v.size(); ++k) s += ctx.grid().weight(k) * v[k] * (m.rho[k] + m.mixed[k] + m.rho_u[k]);
  return s / (3.0 * V);
}

double mean_with(const FunctionalContext& ctx, const ToricPotential& u, const std::vector<double>& rho) {
  double s = 0;
  for (std::size_t k = 0; k < u.values.size(); ++k) s += ctx.grid().weight(k) * u.values[k] * rho[k];
  return s / ctx.volume();
}

double entropy_from(const FunctionalContext& ctx, const Measures& m) {
  const LogGrid& grid = ctx.grid();
  double lost = 0;
  double s = 0;
  for (std::size_t k = 0; k < grid.size(); ++k) {
    const double w = grid.weight(k);
    if (m.rho_u[k] <= 0) {
      lost += w * m.rho[k];
      continue;
    }
    if (m.rho[k] <= 0) continue;
    s += w * m.rho_u[k] * std::log(m.rho_u[k] / m.rho[k]);
  }
  if (lost > 1e-12 * ctx.volume()) throw ZeroDensity("Monge-Ampere density vanishes on a set of positive mass");
  return s / ctx.volume();
}

}  // namespace

LogGrid LogGrid::create(int n, std::vector<double> p, int nodes, double smax) {
  if (n != 1 && n != 2) throw InvalidGrid("grid dimension must be 1 or 2");
  if (static_cast<int>(p.size()) != n) throw InvalidGrid("class needs " + std::to_string(n) + " entries");
  for (double pi : p) {
    if (!(pi > 0)) throw InvalidGrid("class entries must be positive");
  }
  if (nodes < 64) throw InvalidGrid("need at least 64 nodes per axis");
  if (!(smax >= 10)) throw InvalidGrid("S_max must be at least 10");
  // Mass of p dd^c log(1+e^s) on [-S, S] is p tanh(S/2) per axis.
  const double fraction = std::pow(std::tanh(smax / 2), n);
  if (fraction < 1 - 1e-6) {
    throw InvalidGrid("box [-S_max, S_max] misses more than 1e-6 of the background mass");
  }
  LogGrid g;
  g.n_ = n;
  g.nodes_ = nodes;
  g.smax_ = smax;
  g.h_ = 2 * smax / (nodes - 1);
  g.p_ = std::move(p);
  std::vector<double> w1(static_cast<std::size_t>(nodes), g.h_);
  w1.front() = w1.back() = g.h_ / 2;
  if (n == 1) {
    g.weights_ = w1;
  } else {
    g.weights_.reserve(w1.size() * w1.size());
    for (double a : w1)
      for (double b : w1) g.weights_.push_back(a * b);
  }
  return g;
}

double LogGrid::nominal_volume() const {
  return std::accumulate(p_.begin(), p_.end(), 1.0, std::multiplies<>());
}

std::size_t LogGrid::size() const {
  return n_ == 1 ? static_cast<std::size_t>(nodes_) : static_cast<std::size_t>(nodes_) * static_cast<std::size_t>(nodes_);
}

void LogGrid::unflatten(std::size_t node, int& i, int& j) const {
  if (n_ == 1) {
    i = static_cast<int>(node);
    j = 0;
  } else {
    i = static_cast<int>(node / static_cast<std::size_t>(nodes_));
    j = static_cast<int>(node % static_cast<std::size_t>(nodes_));
  }
}

ToricPotential ToricPotential::zero(const LogGrid& grid) { return {std::vector<double>(grid.size(), 0.0)}; }

ToricPotential ToricPotential::from_function(const LogGrid& grid, const std::function<double(double, double)>& f) {
  ToricPotential u;
  u.values.resize(grid.size());
  for (std::size_t k = 0; k < grid.size(); ++k) {
    int i = 0, j = 0;
    grid.unflatten(k, i, j);
    u.values[k] = f(grid.coord(i), grid.n() == 2 ? grid.coord(j) : 0.0);
  }
  return u;
}

ToricPotential ToricPotential::normalized() const {
  ToricPotential out = *this;
  const double m = sup();
  for (auto& x : out.values) x -= m;
  return out;
}

double ToricPotential::sup() const { return *std::max_element(values.begin(), values.end()); }

ToricPotential ToricPotential::scaled(double lambda) const {
  ToricPotential out = *this;
  for (auto& x : out.values) x *= lambda;
  return out;
}

ToricPotential ToricPotential::operator-(const ToricPotential& o) const {
  ToricPotential out = *this;
  for (std::size_t k = 0; k < out.values.size(); ++k) out.values[k] -= o.values[k];
  return out;
}

ToricPotential ToricPotential::operator+(const ToricPotential& o) const {
  ToricPotential out = *this;
  for (std::size_t k = 0; k < out.values.size(); ++k) out.values[k] += o.values[k];
  return out;
}

Background background_form(const LogGrid& grid, double t) {
  Background bg;
  const std::size_t size = grid.size();
  std::vector<double> axis0 = axis_density(grid, grid.p()[0] * t);
  std::vector<double> axis1 = grid.n() == 2 ? axis_density(grid, grid.p()[1] * t) : std::vector<double>{};
  bg.h11.resize(size);
  bg.density.resize(size);
  if (grid.n() == 2) {
    bg.h22.resize(size);
    bg.h12.assign(size, 0.0);
  }
  for (std::size_t k = 0; k < size; ++k) {
    int i = 0, j = 0;
    grid.unflatten(k, i, j);
    bg.h11[k] = axis0[static_cast<std::size_t>(i)];
    if (grid.n() == 2) {
      bg.h22[k] = axis1[static_cast<std::size_t>(j)];
      bg.density[k] = bg.h11[k] * bg.h22[k];
    } else {
      bg.density[k] = bg.h11[k];
    }
    bg.volume += grid.weight(k) * bg.density[k];
  }
  return bg;
}

Background shifted_form(const LogGrid& grid, const Background& base, const ToricPotential& u) {
  require_same_grid(grid, u);
  Hessian d = fd_hessian(grid, u.values);
  Background out;
  const std::size_t size = grid.size();
  out.h11.resize(size);
  out.density.resize(size);
  const int N = grid.nodes();
  if (grid.n() == 2) {
    out.h22.resize(size);
    out.h12.resize(size);
    out.cell12 = d.cell12;
    for (std::size_t c = 0; c < out.cell12.size(); ++c) out.cell12[c] += cell_at(base.cell12, c);
  }
  for (std::size_t k = 0; k < size; ++k) {
    double det = 0;
    out.h11[k] = base.h11[k] + d.u11[k];
    if (grid.n() == 1) {
      det = out.h11[k];
      if (det < -kPsdTolerance) throw NotAdmissible("Hessian is negative at node " + std::to_string(k));
    } else {
      int i = 0, j = 0;
      grid.unflatten(k, i, j);
      out.h22[k] = base.h22[k] + d.u22[k];
      out.h12[k] = cell_mean(N, i, j, [&](std::size_t c) { return out.cell12[c]; });
      const double sq = cell_mean(N, i, j, [&](std::size_t c) { return out.cell12[c] * out.cell12[c]; });
      det = out.h11[k] * out.h22[k] - sq;
      if (out.h11[k] < -kPsdTolerance || out.h22[k] < -kPsdTolerance || det < -kPsdTolerance) {
        throw NotAdmissible("Hessian is not positive semidefinite at node " + std::to_string(k));
      }
    }
    out.density[k] = std::max(det, 0.0);
    out.volume += grid.weight(k) * out.density[k];
  }
  return out;
}

FunctionalContext::FunctionalContext(LogGrid grid, Background bg) : grid_(std::move(grid)), bg_(std::move(bg)) {
  f_.assign(grid_.size(), 0.0);
}

FunctionalContext::FunctionalContext(LogGrid grid, double twist_c, std::optional<std::vector<double>> chi)
    : grid_(std::move(grid)), twist_(twist_c) {
  if (!(twist_c >= 0)) throw InvalidTwist("twist scale must be nonnegative");
  for (double p : grid_.p()) {
    if (std::abs(twist_c * p - (2 - p)) > 1e-12) {
      throw InvalidTwist("c omega0 lies in 2pi(c1 - xi) only when c p_i = 2 - p_i");
    }
  }
  bg_ = background_form(grid_);
  f_ = chi ? *chi : std::vector<double>(grid_.size(), 0.0);
  if (f_.size() != grid_.size()) throw InvalidGrid("chi does not match the grid");
  // Normalize so that (1/V) int e^f omega^n = 1.
  const double shift = log_integral_exp(grid_, bg_.density, f_) - std::log(bg_.volume);
  for (auto& x : f_) x -= shift;
}

FunctionalContext FunctionalContext::with_background(const LogGrid& grid, Background bg) {
  return FunctionalContext(grid, std::move(bg));
}

std::vector<double> ma_density(const FunctionalContext& ctx, const ToricPotential& u) {
  Background b = shifted_form(ctx.grid(), ctx.background(), u);
  for (std::size_t k = 0; k < b.density.size(); ++k) b.density[k] *= ctx.grid().weight(k);
  return b.density;
}

double mean_value(const FunctionalContext& ctx, const ToricPotential& u) {
  require_same_grid(ctx.grid(), u);
  return mean_with(ctx, u, ctx.background().density);
}

double functional_E(const FunctionalContext& ctx, const ToricPotential& u) {
  return energy(ctx, u, measures(ctx, u));
}

double functional_I(const FunctionalContext& ctx, const ToricPotential& u) {
  Measures m = measures(ctx, u);
  return mean_with(ctx, u, m.rho) - mean_with(ctx, u, m.rho_u);
}

double functional_J(const FunctionalContext& ctx, const ToricPotential& u) {
  Measures m = measures(ctx, u);
  return mean_with(ctx, u, m.rho) - energy(ctx, u, m);
}

double functional_L(const FunctionalContext& ctx, const ToricPotential& u) {
  require_same_grid(ctx.grid(), u);
  std::vector<double> x(u.values.size());
  for (std::size_t k = 0; k < x.size(); ++k) x[k] = ctx.ricci_potential()[k] - u.values[k];
  return -(log_integral_exp(ctx.grid(), ctx.background().density, x) - std::log(ctx.volume()));
}

double functional_D(const FunctionalContext& ctx, const ToricPotential& u) {
  return functional_J(ctx, u) - mean_value(ctx, u) + functional_L(ctx, u);
}

double entropy(const FunctionalContext& ctx, const ToricPotential& u) { return entropy_from(ctx, measures(ctx, u)); }

double functional_M(const FunctionalContext& ctx, const ToricPotential& u) {
  Measures m = measures(ctx, u);
  const double ent = entropy_from(ctx, m);
  const double i = mean_with(ctx, u, m.rho) - mean_with(ctx, u, m.rho_u);
  const double j = mean_with(ctx, u, m.rho) - energy(ctx, u, m);
  double f_term = 0;
  for (std::size_t k = 0; k < u.values.size(); ++k) {
    f_term += ctx.grid().weight(k) * ctx.ricci_potential()[k] * m.rho_u[k];
  }
  return ent - f_term / ctx.volume() - (i - j);
}

double mt_quotient(const FunctionalContext& ctx, const ToricPotential& u, double lambda) {
  require_same_grid(ctx.grid(), u);
  std::vector<double> x(u.values.size());
  for (std::size_t k = 0; k < x.size(); ++k) x[k] = -lambda * u.values[k];
  const double log_mean = log_integral_exp(ctx.grid(), ctx.background().density, x) - std::log(ctx.volume());
  return log_mean - lambda * functional_J(ctx, u);
}

DingCheck ding_inequality_check(const FunctionalContext& ctx, const ToricPotential& u, double lambda) {
  const int n = ctx.grid().n();
  DingCheck r{};
  r.j = functional_J(ctx, u);
  r.j_lambda = functional_J(ctx, u.scaled(lambda));
  r.lower = std::pow(lambda, n + 1) * r.j;
  r.upper = std::pow(lambda, static_cast<double>(n + 1) / n) * r.j;
  const double tol = 1e-6 * std::max(1.0, r.j);
  r.holds = r.lower <= r.j_lambda + tol && r.j_lambda <= r.upper + tol;
  return r;
}

SandwichResult ij_sandwich_check(const FunctionalContext& ctx, const ToricPotential& u) {
  const int n = ctx.grid().n();
  SandwichResult r{};
  r.i = functional_I(ctx, u);
  r.j = functional_J(ctx, u);
  const double tol = 1e-6 * std::max(1.0, r.j);
  const double gap = r.i - r.j;
  r.holds = r.j / n <= gap + tol && gap <= n * r.j + tol;
  return r;
}

double cocycle_check(const FunctionalContext& ctx, const ToricPotential& u, const ToricPotential& v) {
  Background bv = shifted_form(ctx.grid(), ctx.background(), v);
  FunctionalContext at_v = FunctionalContext::with_background(ctx.grid(), bv);
  const ToricPotential diff = u - v;
  const double lhs = functional_J(ctx, u) - functional_J(ctx, v);
  double cross = 0;
  for (std::size_t k = 0; k < diff.values.size(); ++k) {
    cross += ctx.grid().weight(k) * diff.values[k] * (ctx.background().density[k] - bv.density[k]);
  }
  const double rhs = functional_J(at_v, diff) + cross / ctx.volume();
  return std::abs(lhs - rhs);
}

double analytic_epsilon_zero(int n) {
  auto value = [n](double e) {
    const double a = 1 + e + e * e;
    const double b = 1 + e - e * e;
    return std::pow(a / b, n) * std::pow(1 / a, 1.0 / n);
  };
  if (value(1.0) <= 1 + 1e-15) return 1.0;
  double lo = 0, hi = 1;
  for (int it = 0; it < 80; ++it) {
    double mid = 0.5 * (lo + hi);
    (value(mid) <= 1 ? lo : hi) = mid;
  }
  return lo;
}

JComparison j_comparison_check(const FunctionalContext& ctx, const ToricPotential& u, double r, double eps) {
  const double e0 = analytic_epsilon_zero(ctx.grid().n());
  if (!(eps > 0) || eps > e0 || std::abs(r) > eps) {
    throw EpsilonTooLarge("j_comparison_check: need |r| <= eps <= " + std::to_string(e0));
  }
  FunctionalContext perturbed =
      FunctionalContext::with_background(ctx.grid(), background_form(ctx.grid(), 1 + eps * (1 + r)));
  JComparison out{};
  out.j = functional_J(ctx, u);
  out.j_perturbed = functional_J(perturbed, u);
  out.holds = out.j_perturbed <= out.j + 1e-8;
  return out;
}

ToricPotential concentration_potential(const LogGrid& grid, double c) {
  if (grid.n() != 1) throw InvalidGrid("concentration family lives on a one-dimensional grid");
  if (!(c > 0) || !(c < 1)) throw NotAdmissible("concentration parameter must lie in (0, 1)");
  const double lc = std::log(c);
  // For s > 0 the value is log1p(-(1 - c) sigma(-s)), which keeps relative
  // accuracy in the tail where the density of g + u_c is of order c e^{-s}.
  return ToricPotential::from_function(grid,
                                       [c, lc](double s, double) {
                                         if (s > 0) return std::log1p(-(1 - c) * sigmoid(-s));
                                         return logaddexp(s, lc) - std::log1p(std::exp(s));
                                       })
      .normalized();
}

std::vector<ProbeRow> concentration_probe(const FunctionalContext& ctx, const std::vector<double>& lambdas,
                                          const std::vector<double>& c_values) {
  if (ctx.grid().n() != 1 || std::abs(ctx.grid().p()[0] - 1) > 1e-12) {
    throw InvalidGrid("concentration probe needs n = 1 and class p = 1");
  }
  if (c_values.size() < 2) throw NotAdmissible("concentration probe needs at least two c values");
  struct Cached {
    ToricPotential u;
    double j, i, ent;
  };
  std::vector<Cached> cache;
  for (double c : c_values) {
    ToricPotential u = concentration_potential(ctx.grid(), c);
    cache.push_back({u, functional_J(ctx, u), functional_I(ctx, u), entropy(ctx, u)});
  }
  std::vector<ProbeRow> rows;
  for (double lambda : lambdas) {
    ProbeRow row{lambda, {}, 0};
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t k = 0; k < c_values.size(); ++k) {
      const double q = mt_quotient(ctx, cache[k].u, lambda);
      row.samples.push_back({c_values[k], q, cache[k].j, cache[k].i, cache[k].ent});
      const double x = -std::log(c_values[k]);
      sx += x;
      sy += q;
      sxx += x * x;
      sxy += x * q;
    }
    const double m = static_cast<double>(c_values.size());
    row.slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
    rows.push_back(std::move(row));
  }
  return rows;
}

ToricPotential random_potential(const LogGrid& grid, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::uniform_real_distribution<double> target(0.2, 0.85);
  const int n = grid.n();
  const auto& p = grid.p();
  // Cosine modes have zero moment-gradient on the boundary of the moment
  // polytope, so the Neumann stencil is consistent there.
  struct Mode {
    int m1, m2;
    double a;
  };
  std::vector<Mode> modes;
  if (n == 1) {
    for (int m = 1; m <= 4; ++m) modes.push_back({m, 0, normal(rng) / (1.0 + m * m)});
  } else {
    for (int m1 = 0; m1 <= 3; ++m1) {
      for (int m2 = 0; m2 <= 3; ++m2) {
        if (m1 == 0 && m2 == 0) continue;
        modes.push_back({m1, m2, normal(rng) / (1.0 + m1 * m1 + m2 * m2)});
      }
    }
  }
  const double k1 = M_PI / p[0];
  const double k2 = n == 2 ? M_PI / p[1] : 0.0;
  // F, its gradient and Hessian at moment coordinates (x1, x2).
  auto eval = [&](double x1, double x2, double& f, double g[2], double hs[3]) {
    f = 0;
    g[0] = g[1] = 0;
    hs[0] = hs[1] = hs[2] = 0;
    for (const auto& md : modes) {
      const double a1 = md.m1 * k1 * x1, a2 = md.m2 * k2 * x2;
      const double c1 = std::cos(a1), s1 = std::sin(a1), c2 = std::cos(a2), s2 = std::sin(a2);
      const double w1 = md.m1 * k1, w2 = md.m2 * k2;
      f += md.a * c1 * c2;
      g[0] += -md.a * w1 * s1 * c2;
      g[1] += -md.a * w2 * c1 * s2;
      hs[0] += -md.a * w1 * w1 * c1 * c2;
      hs[1] += -md.a * w2 * w2 * c1 * c2;
      hs[2] += md.a * w1 * w2 * s1 * s2;
    }
  };
  const double pmax = *std::max_element(p.begin(), p.end());
  double hess_max = 0, grad_max = 0;
  std::vector<double> fvals(grid.size());
  for (std::size_t k = 0; k < grid.size(); ++k) {
    int i = 0, j = 0;
    grid.unflatten(k, i, j);
    const double x1 = p[0] * sigmoid(grid.coord(i));
    const double x2 = n == 2 ? p[1] * sigmoid(grid.coord(j)) : 0.0;
    double f, g[2], hs[3];
    eval(x1, x2, f, g, hs);
    fvals[k] = f;
    // Spectral norm of the symmetric 2x2 Hessian.
    const double tr = 0.5 * (hs[0] + hs[1]);
    const double disc = std::sqrt(0.25 * (hs[0] - hs[1]) * (hs[0] - hs[1]) + hs[2] * hs[2]);
    hess_max = std::max(hess_max, std::abs(tr) + disc);
    grad_max = std::max(grad_max, std::hypot(g[0], g[1]));
  }
  const double bound = hess_max * pmax / 4 + grad_max;
  const double scale = bound > 0 ? target(rng) / bound : 0.0;
  ToricPotential u;
  u.values.resize(grid.size());
  for (std::size_t k = 0; k < grid.size(); ++k) u.values[k] = scale * fvals[k];
  return u.normalized();
}

}  // namespace tstab::mt
