#include "episig/verify.hpp"

#include <cmath>

namespace episig {

namespace {

enum class Mix { kFirst, kSecond, kMixed };

// Classify a probability of the "first" option as pure first / pure second / mixed.
Mix classify(double p_first, double tol) {
  if (p_first >= 1.0 - tol) return Mix::kFirst;
  if (p_first <= tol) return Mix::kSecond;
  return Mix::kMixed;
}

}  // namespace

VerificationResult verify_pbe(const EpistemicGame& game, const StrategyProfile& profile,
                              const BeliefSystem& posterior, double tol) {
  for (Message m : kMessages)
    for (ReceiverType r : kReceiverTypes)
      if (!posterior.at(m, r).s0)
        throw OffPathError(std::string("missing posterior entry at (") + name(m) + "," +
                           name(r) + ")");

  VerificationResult result;
  auto fail = [&](std::string cond, double lhs, double threshold, double margin) {
    result.violations.push_back({std::move(cond), lhs, threshold, margin});
  };

  const auto k = derive_constants(game);

  // (a) Sender: both types compare the same gamma^s against C'. The honest
  // message is optimal below the threshold, the deceptive one above it.
  double g = gamma_s(game, profile.receiver);
  for (SenderType t : kSenderTypes) {
    double honest = profile.sender.prob(honest_message(t), t);
    std::string cond = std::string("sender-optimality(") + name(t) + ")";
    switch (classify(honest, tol)) {
      case Mix::kFirst:
        if (g > k.c_prime + tol) fail(cond, g, k.c_prime, g - k.c_prime);
        break;
      case Mix::kSecond:
        if (g < k.c_prime - tol) fail(cond, g, k.c_prime, k.c_prime - g);
        break;
      case Mix::kMixed:
        if (std::abs(g - k.c_prime) > tol) fail(cond, g, k.c_prime, std::abs(g - k.c_prime));
        break;
    }
  }

  for (Message m : kMessages) {
    for (ReceiverType r : kReceiverTypes) {
      double p = *posterior.at(m, r).s0;
      std::string cell = std::string("(") + name(m) + "," + name(r) + ")";

      // (c) Bayes consistency on-path.
      if (auto bayes = bayes_posterior(game, profile.sender, m, r)) {
        if (std::abs(*bayes - p) > tol)
          fail("bayes-consistency" + cell, p, *bayes, std::abs(*bayes - p));
      }

      // (b) Receiver: advantage of a1 over a0 under the posterior.
      double advantage = p * k.delta_ur_s0 + (1.0 - p) * k.delta_ur_s1;
      std::string cond = "receiver-optimality" + cell;
      switch (classify(profile.receiver.prob(Action::kA0, m, r), tol)) {
        case Mix::kFirst:
          if (advantage > tol) fail(cond, advantage, 0.0, advantage);
          break;
        case Mix::kSecond:
          if (advantage < -tol) fail(cond, advantage, 0.0, -advantage);
          break;
        case Mix::kMixed:
          if (std::abs(advantage) > tol) fail(cond, advantage, 0.0, std::abs(advantage));
          break;
      }
    }
  }
  return result;
}

BeliefSystem supporting_posterior(const EpistemicGame& game, const StrategyProfile& profile,
                                  double tol) {
  const auto k = derive_constants(game);
  BeliefSystem b;
  for (Message m : kMessages) {
    for (ReceiverType r : kReceiverTypes) {
      if (auto bayes = bayes_posterior(game, profile.sender, m, r)) {
        b.at(m, r) = PosteriorEntry::bayes(*bayes);
        continue;
      }
      switch (classify(profile.receiver.prob(Action::kA0, m, r), tol)) {
        case Mix::kFirst: b.at(m, r) = PosteriorEntry::constructed(1.0); break;
        case Mix::kSecond: b.at(m, r) = PosteriorEntry::constructed(0.0); break;
        case Mix::kMixed:
          b.at(m, r) = PosteriorEntry::constructed(k.indifference_posterior());
          break;
      }
    }
  }
  return b;
}

}  // namespace episig
