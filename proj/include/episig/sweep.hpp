#pragma once

#include "episig/equilibrium.hpp"

#include <array>
#include <optional>
#include <string>
#include <vector>

namespace episig {

enum class SweepParam { kBeliefSenderR0, kCost };

const char* name(SweepParam p);  // "belief_sender.r0" or "cost"
std::optional<SweepParam> parse_sweep_param(const std::string& s);

struct SweepSpec {
  SweepParam param = SweepParam::kBeliefSenderR0;
  double lo = 0.0;
  double hi = 1.0;
  int steps = 2;

  /// Throws std::invalid_argument when the range leaves the parameter's domain.
  void check() const;
  double value(int step) const;
};

struct SweepRow {
  double value = 0.0;
  double c_prime = 0.0;
  std::optional<char> region;  // empty in the separating-only regime
  std::vector<CandidateId> candidates;
  std::array<std::optional<ConvexRegion>, 6> segments;  // by candidate, feasible only
  std::optional<Eigen::Vector2d> belief_independent;
};

/// Game with the swept parameter set; belief_sender.r1 follows r0.
EpistemicGame with_parameter(const EpistemicGame& base, SweepParam p, double v);

/// One row per step, computed in parallel and returned in step order.
std::vector<SweepRow> run_sweep(const EpistemicGame& base, const SweepSpec& spec);

/// CSV text with a '#'-prefixed header comment documenting the columns.
std::string sweep_csv(const SweepSpec& spec, const std::vector<SweepRow>& rows);

}  // namespace episig
