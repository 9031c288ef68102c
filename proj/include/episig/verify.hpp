#pragma once

#include "episig/game.hpp"

#include <string>
#include <vector>

namespace episig {

struct ConditionViolation {
  std::string condition;  // e.g. "sender-optimality(s0)"
  double lhs = 0.0;
  double threshold = 0.0;
  double margin = 0.0;  // how far outside the allowed set; > tol
};

struct VerificationResult {
  std::vector<ConditionViolation> violations;

  bool passed() const { return violations.empty(); }
};

/// Mechanical PBE check: sender optimality against the C' threshold on
/// gamma^s, receiver optimality at every (m, theta^r) against the supplied
/// posterior, and Bayes consistency of on-path posterior cells.
///
/// Throws OffPathError if any posterior cell is missing.
VerificationResult verify_pbe(const EpistemicGame& game, const StrategyProfile& profile,
                              const BeliefSystem& posterior, double tol = kIndifferenceTol);

/// Posterior that makes the receiver's prescribed behaviour optimal: Bayes
/// on-path; off-path the indifference point for a strict mix, else certainty
/// on the type that makes the pure action a best reply.
BeliefSystem supporting_posterior(const EpistemicGame& game, const StrategyProfile& profile,
                                  double tol = kIndifferenceTol);

}  // namespace episig
