#include <gtest/gtest.h>

#include <cmath>

#include "support.hpp"
#include "tstab/cone_explorer.hpp"
#include "tstab/errors.hpp"
#include "tstab/random.hpp"
#include "tstab/thresholds.hpp"

namespace tstab {
namespace {

using test::D;
using test::Q;
using test::V;
using test::X;

// Floating-point root of the defining inequality, found by bisection.
double oracle_epsilon_zero(int n) {
  auto f = [n](double e) {
    const double a = 1 + e - e * e, b = 1 + e + e * e;
    return std::pow(a / b, n) * a - 1;
  };
  double lo = 1e-9, hi = 1;
  for (int it = 0; it < 200; ++it) {
    double mid = 0.5 * (lo + hi);
    (f(mid) >= 0 ? lo : hi) = mid;
  }
  return lo;
}

TEST(EpsilonZero, ValuesAndContract) {
  Rational e1 = epsilon_zero(1);
  EXPECT_GT(e1, Q("0.381"));
  EXPECT_LT(e1, Q("0.383"));
  Rational prev = e1;
  for (int n = 1; n <= 4; ++n) {
    Rational e = epsilon_zero(n);
    EXPECT_LE(e.get_den(), 1000000);
    EXPECT_TRUE(epsilon_zero_predicate(n, e));
    EXPECT_FALSE(epsilon_zero_predicate(n, e + Rational(1, 1000000)));
    EXPECT_NEAR(to_double(e), oracle_epsilon_zero(n), 2e-6) << "n = " << n;
    EXPECT_LE(e, prev);
    prev = e;
  }
  // n = 1: root of 1 - 2e - 2e^2 + e^3 after clearing, i.e. (3 - sqrt 5)/2.
  EXPECT_NEAR(to_double(e1), (3 - std::sqrt(5.0)) / 2, 1e-6);
}

TEST(Comparison, Examples) {
  auto l = anticanonical(X("P2"));
  auto r = comparison_check(l, D("P2", "1,1,9/10"), Q("1/10"));
  EXPECT_TRUE(r.holds);
  EXPECT_LE(r.delta_plus, r.delta);
  EXPECT_LE(r.delta, r.delta_minus);
  // Scaling case.
  auto s = comparison_check(l, l, Q("1/5"));
  EXPECT_EQ(s.delta_plus, r.delta / Q("6/5"));
  EXPECT_EQ(s.delta_minus, r.delta / Q("4/5"));
}

TEST(Comparison, Preconditions) {
  auto l = anticanonical(X("P2"));
  EXPECT_THROW(comparison_check(l, l, Q("1/2")), EpsilonTooLarge);
  EXPECT_THROW(comparison_check(l, l, Q("0")), EpsilonTooLarge);
  EXPECT_THROW(comparison_check(l, D("P2", "4,0,0"), Q("1/10")), HypothesisViolated);
  EXPECT_THROW(comparison_check(D("P2", "0,0,0"), l, Q("1/10")), NotBig);
}

TEST(Comparison, RandomTriplesHold) {
  Rng rng(83);
  for (const char* name : {"P1xP1", "P2", "dP1"}) {
    for (int k = 0; k < 15; ++k) {
      auto t = random_comparison_triple(X(name), rng);
      auto r = comparison_check(t.l, t.l_eps, t.eps);
      EXPECT_TRUE(r.holds) << name << " case " << k;
    }
  }
}

TEST(Sweep, RowsAndCsv) {
  SweepSpec spec{anticanonical(X("P1xP1")), D("P1xP1", "1,0,0,0"), 0, Q("1/2"), 11};
  auto rows = continuity_sweep(spec);
  ASSERT_EQ(rows.size(), 11u);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    EXPECT_EQ(rows[i].gamma, Rational(static_cast<long>(i)) / 20);
    ASSERT_TRUE(rows[i].delta.has_value());
    // Along this path delta = 2 / (2 + gamma).
    EXPECT_EQ(*rows[i].delta, 2 / (2 + rows[i].gamma));
  }
  std::string csv = sweep_csv(rows);
  EXPECT_EQ(csv.substr(0, csv.find('\n')), sweep_csv_header());
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 12);
  std::string exact = sweep_exact_csv(rows);
  EXPECT_NE(exact.find("4/5"), std::string::npos);
  EXPECT_THROW(continuity_sweep({spec.base, spec.direction, 0, 1, 1}), std::invalid_argument);
}

TEST(Sweep, ScalingPath) {
  auto l = anticanonical(X("dP1"));
  auto rows = continuity_sweep({l, l, 0, 2, 9});
  for (const auto& r : rows) EXPECT_EQ(*r.delta, Rational(6, 7) / (1 + r.gamma));
}

TEST(Sweep, OutOfConeRowsAreFlagged) {
  auto rows = continuity_sweep({anticanonical(X("P1xP1")), D("P1xP1", "-1,0,0,0"), 0, 3, 7});
  bool flagged = false;
  for (const auto& r : rows) {
    if (r.gamma >= 2) {
      EXPECT_TRUE(r.flags & kNotBig);
      EXPECT_FALSE(r.delta.has_value());
      flagged = true;
    } else {
      EXPECT_FALSE(r.flags & kNotBig);
    }
  }
  EXPECT_TRUE(flagged);
  std::string csv = sweep_csv(rows);
  EXPECT_NE(csv.find(",1\n"), std::string::npos);
}

TEST(Envelope, SqrtScalingOfTheReconstructedEpsilon) {
  auto e = envelope_epsilon(Rational(1), Q("1/1000000"));
  auto h = envelope_epsilon(Rational(1), Q("1/2000000"));
  ASSERT_TRUE(e && h);
  EXPECT_NEAR(to_double(*e) / to_double(*h), std::sqrt(2.0), 2e-3);
  // The decomposition hypothesis holds at the returned value.
  Rational eps = *e;
  EXPECT_LT((1 + eps) * Q("1/1000000") / (eps * eps), Rational(1));
  EXPECT_FALSE(envelope_epsilon(std::nullopt, Q("1/10")).has_value());
}

// Envelope and beta consistency along seeded paths.
TEST(Sweep, EnvelopeAndBetaConsistency) {
  Rng rng(89);
  for (const char* name : {"P1xP1", "dP1", "P2"}) {
    auto x = X(name);
    RatVector dir;
    for (std::size_t i = 0; i < x->num_rays(); ++i) dir.push_back(random_rational(rng, -1, 1, 4));
    auto rows = continuity_sweep({anticanonical(x), ToricRDivisor(x, dir), 0, Q("1/4"), 21});
    for (std::size_t i = 0; i < rows.size(); ++i) {
      const auto& r = rows[i];
      ASSERT_TRUE(r.delta.has_value());
      EXPECT_GT(*r.delta, 0);
      EXPECT_FALSE(r.flags & kEnvelopeViolated);
      if (r.s && sgn(*r.s) > 0) EXPECT_EQ(*r.beta, std::min(*r.s, *r.delta));
      if (i > 0 && r.eps) {
        const Rational& prev = *rows[i - 1].delta;
        EXPECT_LE((1 - *r.eps) * prev, *r.delta);
        EXPECT_LE(*r.delta, (1 + *r.eps) * prev);
      }
    }
  }
}

TEST(Sweep, JumpsShrinkWithStepSize) {
  SweepSpec spec{anticanonical(X("P1xP1")), D("P1xP1", "1,0,0,0"), 0, Q("1/2"), 11};
  Rational j11 = max_consecutive_jump(continuity_sweep(spec));
  spec.steps = 21;
  Rational j21 = max_consecutive_jump(continuity_sweep(spec));
  spec.steps = 41;
  Rational j41 = max_consecutive_jump(continuity_sweep(spec));
  EXPECT_GT(j11, j21);
  EXPECT_GT(j21, j41);
}

TEST(Scaling, Examples) {
  auto l = anticanonical(X("P2"));
  EXPECT_TRUE(scaling_check(l, {Rational(1), Rational(3), Q("2/7")}));
  EXPECT_EQ(delta(l.scaled(3)).value, Rational(1, 3));
  EXPECT_THROW(scaling_check(D("P2", "0,0,0"), {Rational(2)}), NotBig);
}

}  // namespace
}  // namespace tstab
