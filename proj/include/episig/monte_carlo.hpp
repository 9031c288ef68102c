#pragma once

#include "episig/game.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <string>

namespace episig {

/// Sampling distributions for the types.
struct TypeDraw {
  Eigen::Vector2d receiver_type;     // theta^r ~ pi^s
  Eigen::Matrix2d sender_given_r;    // row theta^r: theta^s ~ pi^r(. | theta^r)
  // Used only at cells where the conditioning message has zero probability.
  std::optional<BeliefSystem> off_path_posterior;

  static TypeDraw from_game(const EpistemicGame& game,
                            std::optional<BeliefSystem> off_path = std::nullopt);
};

struct Estimate {
  double mean = 0.0;
  double se = 0.0;  // sample standard deviation / sqrt(n); 0 when n == 1
  std::uint64_t n = 0;
};

struct PayoffEstimates {
  std::array<Estimate, 2> sender{};                   // by sender type
  std::array<std::array<Estimate, 2>, 2> receiver{};  // [message][receiver type]
  std::string rng;
  std::uint64_t seed = 0;

  const Estimate& sender_at(SenderType t) const { return sender[idx(t)]; }
  const Estimate& receiver_at(Message m, ReceiverType r) const {
    return receiver[idx(m)][idx(r)];
  }
};

/// Name of the generator and seeding scheme recorded with every run.
extern const char* const kMonteCarloRng;

/// Seeded Monte Carlo estimates of the expected utilities.
///
/// Sender type t: theta^r ~ pi^s, m ~ sigma^s(.|t), a ~ sigma^r(.|m,theta^r).
/// Receiver cell (m, theta^r): theta^s ~ pi^r(.|theta^r) and m' ~ sigma^s(.|theta^s),
/// kept when m' == m, then a ~ sigma^r(.|m,theta^r). Off-path cells draw theta^s
/// from the supplied posterior instead and throw OffPathError without one.
///
/// Each quantity gets n_samples samples, generated in fixed-size blocks with
/// per-block seeds and merged in block order, so results do not depend on the
/// thread count.
PayoffEstimates monte_carlo_payoff(const EpistemicGame& game, const StrategyProfile& profile,
                                   const TypeDraw& draw, std::uint64_t n_samples,
                                   std::uint64_t seed);

}  // namespace episig
