#pragma once

#include "episig/equilibrium.hpp"
#include "episig/game.hpp"

#include <limits>
#include <vector>

namespace episig {

struct Interval {
  double lo = -std::numeric_limits<double>::infinity();
  double hi = std::numeric_limits<double>::infinity();

  bool empty() const { return lo > hi; }
  Interval intersect(const Interval& o) const {
    return {std::max(lo, o.lo), std::min(hi, o.hi)};
  }
};

/// Grid point that survives the epsilon-relaxed best-response test.
struct ApproxEquilibrium {
  Eigen::Vector2d sender;  // (s00, s10)
  Interval attainable;     // gamma^s over the receiver best-response box
  Interval required;       // gamma^s values consistent with both types' play
  double eps = 0.0;
};

/// Exhaustive search over a grid_n x grid_n sender grid on [0,1]^2.
///
/// The receiver correspondence at each point is formed analytically: pure
/// where |gamma^r| > eps, the whole of [0,1] where |gamma^r| <= eps or the
/// message is off-path. gamma^s is affine in the receiver probabilities, so its
/// attainable range is an interval read off the box corners. A point is
/// emitted when some attainable gamma^s satisfies both sender types.
///
/// Throws std::invalid_argument for grid_n < 11 or eps <= 0.
std::vector<ApproxEquilibrium> brute_force_equilibria(const EpistemicGame& game, int grid_n,
                                                      double eps);

struct FamilyGap {
  FamilyKind kind;
  Eigen::Vector2d point;
  double distance = 0.0;
};

struct CrossCheck {
  double tolerance = 0.0;
  // Oracle points farther than `tolerance` from every analytic sender set.
  std::vector<ApproxEquilibrium> stray;
  // Analytic sender points with no oracle point within `tolerance`.
  std::vector<FamilyGap> unconfirmed;
  double max_stray_distance = 0.0;
  double max_family_gap = 0.0;

  bool passed() const { return stray.empty() && unconfirmed.empty(); }
};

/// Two-sided L-infinity comparison between oracle emissions and the sender
/// sets of the analytic families.
CrossCheck cross_check(const EquilibriumReport& report,
                       const std::vector<ApproxEquilibrium>& emitted, double tolerance);

}  // namespace episig
