#include "episig/oracle.hpp"

#include "episig/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace episig {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
// Absorbs rounding when a distance lands exactly on the tolerance.
constexpr double kDistanceSlack = 1e-9;

// Required gamma^s set for one sender type given her probability on the honest message.
Interval sender_requirement(double honest_prob, double c_prime, double eps) {
  if (honest_prob == 1.0) return {-kInf, c_prime + eps};
  if (honest_prob == 0.0) return {c_prime - eps, kInf};
  return {c_prime - eps, c_prime + eps};
}

std::optional<ApproxEquilibrium> test_point(const EpistemicGame& game, double c_prime,
                                            const SenderStrategy& sender, double eps) {
  // a1-probability interval of the receiver at each (m, theta^r).
  Interval a1[2][2];
  for (Message m : kMessages) {
    for (ReceiverType r : kReceiverTypes) {
      Interval& cell = a1[idx(m)][idx(r)];
      cell = {0.0, 1.0};
      if (message_weight(game, sender, m, r) < kOffPathTol) continue;
      double g = gamma_r(game, sender, m, r);
      if (g < -eps) cell = {0.0, 0.0};
      if (g > eps) cell = {1.0, 1.0};
    }
  }
  Interval attainable{0.0, 0.0};
  for (ReceiverType r : kReceiverTypes) {
    double q = game.sender_belief(r);
    const Interval& on_m1 = a1[1][idx(r)];
    const Interval& on_m0 = a1[0][idx(r)];
    attainable.lo += q * (on_m1.lo - on_m0.hi);
    attainable.hi += q * (on_m1.hi - on_m0.lo);
  }
  Interval required = sender_requirement(sender.prob(Message::kM0, SenderType::kS0), c_prime, eps)
                          .intersect(sender_requirement(
                              sender.prob(Message::kM1, SenderType::kS1), c_prime, eps));
  if (required.intersect(attainable).empty()) return std::nullopt;
  return ApproxEquilibrium{sender.m0, attainable, required, eps};
}

}  // namespace

std::vector<ApproxEquilibrium> brute_force_equilibria(const EpistemicGame& game, int grid_n,
                                                      double eps) {
  if (grid_n < 11) throw std::invalid_argument("grid_n must be at least 11");
  if (!(eps > 0.0)) throw std::invalid_argument("eps must be positive");
  require_valid(game);
  const double c_prime = derive_constants(game).c_prime;
  const double step = 1.0 / (grid_n - 1);

  std::vector<std::vector<ApproxEquilibrium>> rows(static_cast<std::size_t>(grid_n));
  parallel_for(rows.size(), [&](std::size_t i) {
    double x = i == static_cast<std::size_t>(grid_n - 1) ? 1.0 : static_cast<double>(i) * step;
    for (int j = 0; j < grid_n; ++j) {
      double y = j == grid_n - 1 ? 1.0 : j * step;
      if (auto hit = test_point(game, c_prime, SenderStrategy(x, y), eps))
        rows[i].push_back(*hit);
    }
  });

  std::vector<ApproxEquilibrium> out;
  for (auto& row : rows) out.insert(out.end(), row.begin(), row.end());
  return out;
}

CrossCheck cross_check(const EquilibriumReport& report,
                       const std::vector<ApproxEquilibrium>& emitted, double tolerance) {
  CrossCheck cc;
  cc.tolerance = tolerance;

  for (const auto& e : emitted) {
    double best = kInf;
    for (const auto& f : report.families)
      best = std::min(best, linf_distance(e.sender, f.sender_region));
    cc.max_stray_distance = std::max(cc.max_stray_distance, best);
    if (best > tolerance + kDistanceSlack) cc.stray.push_back(e);
  }

  for (const auto& f : report.families) {
    for (const auto& p : sample_region(f.sender_region, 16)) {
      double best = kInf;
      for (const auto& e : emitted)
        best = std::min(best, (e.sender - p).lpNorm<Eigen::Infinity>());
      cc.max_family_gap = std::max(cc.max_family_gap, best);
      if (best > tolerance + kDistanceSlack) cc.unconfirmed.push_back({f.kind, p, best});
    }
  }
  return cc;
}

}  // namespace episig
