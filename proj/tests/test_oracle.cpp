#include "episig/oracle.hpp"

#include "random_games.hpp"

#include <gtest/gtest.h>

#include <cmath>

namespace episig {
namespace {

using enum ReceiverType;
using enum Message;
using enum Action;

EpistemicGame honeypot_with_cost(double cost) {
  auto g = honeypot_preset();
  g.cost = cost;
  return g;
}

StrategyProfile separating_profile() {
  StrategyProfile p;
  p.sender = SenderStrategy(1.0, 0.0);
  p.receiver.a0 << 1.0, 1.0, 0.0, 0.0;
  return p;
}

bool emitted_at(const std::vector<ApproxEquilibrium>& pts, const Eigen::Vector2d& p) {
  for (const auto& e : pts)
    if ((e.sender - p).lpNorm<Eigen::Infinity>() < 1e-12) return true;
  return false;
}

Eigen::Vector2d nearest_grid_point(const Eigen::Vector2d& p, int grid_n) {
  double h = grid_n - 1;
  return {std::round(p(0) * h) / h, std::round(p(1) * h) / h};
}

TEST(Verify, SeparatingUnderHighCost) {
  auto g = honeypot_with_cost(1.0);
  auto p = separating_profile();
  EXPECT_TRUE(verify_pbe(g, p, bayes_beliefs(g, p.sender)).passed());
}

TEST(Verify, SeparatingUnderLowCostFailsSenderOptimality) {
  auto g = honeypot_preset();
  auto p = separating_profile();
  auto v = verify_pbe(g, p, bayes_beliefs(g, p.sender));
  ASSERT_FALSE(v.passed());
  bool sender = false;
  for (const auto& x : v.violations)
    if (x.condition.rfind("sender-optimality", 0) == 0) {
      sender = true;
      EXPECT_DOUBLE_EQ(x.lhs, 1.0);
      EXPECT_DOUBLE_EQ(x.threshold, 0.4);
    }
  EXPECT_TRUE(sender);
}

TEST(Verify, CandidateSixRepresentative) {
  auto g = honeypot_preset();
  auto f = solve_candidate(g, CandidateId::kVI);
  ASSERT_TRUE(f);
  EXPECT_TRUE(verify_pbe(g, f.family->representative, f.family->posterior).passed());
}

TEST(Verify, MissingPosteriorThrows) {
  auto g = honeypot_preset();
  auto f = solve_pooling(g, kM1);
  ASSERT_TRUE(f);
  BeliefSystem bare = bayes_beliefs(g, f.family->representative.sender);
  EXPECT_THROW(verify_pbe(g, f.family->representative, bare), OffPathError);
}

TEST(Verify, WrongPosteriorIsReported) {
  auto g = honeypot_preset();
  auto p = separating_profile();
  auto b = bayes_beliefs(g, p.sender);
  b.at(kM0, kR0) = PosteriorEntry::bayes(0.5);
  auto v = verify_pbe(g, p, b);
  bool bayes = false;
  for (const auto& x : v.violations) bayes |= x.condition == "bayes-consistency(m0,r0)";
  EXPECT_TRUE(bayes);
}

TEST(Oracle, Preconditions) {
  EXPECT_THROW(brute_force_equilibria(honeypot_preset(), 10, 0.1), std::invalid_argument);
  EXPECT_THROW(brute_force_equilibria(honeypot_preset(), 11, 0.0), std::invalid_argument);
}

TEST(Oracle, HoneypotFineEpsilonHasNoStrays) {
  auto g = honeypot_preset();
  auto pts = brute_force_equilibria(g, 201, 1e-6);
  ASSERT_FALSE(pts.empty());
  auto cc = cross_check(enumerate_pbe(g), pts, 1.0 / 200);
  EXPECT_TRUE(cc.stray.empty()) << cc.max_stray_distance;
  for (const auto& e : pts) {
    EXPECT_LE(e.attainable.lo, e.attainable.hi);
    EXPECT_LE(e.required.lo, e.required.hi);
    EXPECT_TRUE(e.sender.minCoeff() >= 0.0 && e.sender.maxCoeff() <= 1.0);
  }
}

TEST(Oracle, HoneypotTwoSided) {
  auto g = honeypot_preset();
  auto cc = cross_check(enumerate_pbe(g), brute_force_equilibria(g, 201, 1e-2), 0.01);
  EXPECT_TRUE(cc.passed()) << cc.max_stray_distance << ' ' << cc.max_family_gap;
}

// At C' = 1 exactly the separating corner is emitted, but so are mixed sender
// points: a truthful receiver gives gamma^s = 1 = C', which leaves both types
// indifferent. These are exact PBE, so the oracle is right to report them.
TEST(Oracle, UnitCostBoundary) {
  auto g = honeypot_with_cost(1.0);
  auto pts = brute_force_equilibria(g, 201, 1e-6);
  EXPECT_TRUE(emitted_at(pts, Eigen::Vector2d(1.0, 0.0)));
  EXPECT_TRUE(emitted_at(pts, Eigen::Vector2d(1.0, 0.2)));
  EXPECT_GT(pts.size(), 1u);
  for (const auto& e : pts) {
    StrategyProfile p;
    p.sender.m0 = e.sender;
    p.receiver.a0 << 1.0, 1.0, 0.0, 0.0;
    EXPECT_TRUE(verify_pbe(g, p, supporting_posterior(g, p)).passed())
        << e.sender.transpose();
  }
}

TEST(Oracle, SeparatingCornerAboveUnitCost) {
  testing::GameSampler s(31);
  for (int i = 0; i < 20; ++i) {
    auto g = s.separating_game();
    auto pts = brute_force_equilibria(g, 21, 1e-3);
    ASSERT_EQ(pts.size(), 1u);
    EXPECT_EQ(pts[0].sender, Eigen::Vector2d(1.0, 0.0));
  }
}

TEST(Oracle, RepresentativesRediscovered) {
  testing::GameSampler s(32);
  const int n = 101;
  const double eps = 2.0 / (n - 1);
  for (int i = 0; i < 20; ++i) {
    auto g = i == 0 ? honeypot_preset() : s.interior_game();
    auto pts = brute_force_equilibria(g, n, eps);
    for (const auto& f : enumerate_pbe(g).families)
      EXPECT_TRUE(emitted_at(pts, nearest_grid_point(f.representative.sender.m0, n)))
          << "game " << i << ' ' << name(f.kind);
  }
}

// With a negligible eps every emitted point sits within one grid step of a
// family. Larger eps widens the band by eps over the local gamma^r slope.
TEST(Oracle, NoStraysOnRandomGames) {
  testing::GameSampler s(33);
  const int n = 101;
  const double res = 1.0 / (n - 1);
  for (int i = 0; i < 100; ++i) {
    auto g = i % 4 == 0 ? s.separating_game() : s.interior_game();
    auto cc = cross_check(enumerate_pbe(g), brute_force_equilibria(g, n, 1e-9), res);
    EXPECT_TRUE(cc.stray.empty()) << "game " << i << " max stray " << cc.max_stray_distance;
  }
}

TEST(Oracle, NoPoolingPointsWhenBeliefsBelowCost) {
  testing::GameSampler s(34);
  for (int i = 0; i < 30; ++i) {
    auto pts = brute_force_equilibria(s.no_pooling_game(), 101, 1e-2);
    EXPECT_FALSE(emitted_at(pts, Eigen::Vector2d(1.0, 1.0)));
    EXPECT_FALSE(emitted_at(pts, Eigen::Vector2d(0.0, 0.0)));
  }
}

TEST(Oracle, ThreadCountDoesNotChangeResult) {
  auto g = honeypot_preset();
  ::setenv("EPISIG_THREADS", "1", 1);
  auto one = brute_force_equilibria(g, 101, 0.01);
  ::setenv("EPISIG_THREADS", "7", 1);
  auto seven = brute_force_equilibria(g, 101, 0.01);
  ::unsetenv("EPISIG_THREADS");
  ASSERT_EQ(one.size(), seven.size());
  for (std::size_t i = 0; i < one.size(); ++i) EXPECT_EQ(one[i].sender, seven[i].sender);
}

}  // namespace
}  // namespace episig
