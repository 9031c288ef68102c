#include "episig/game.hpp"

#include <cmath>
#include <sstream>

namespace episig {

const char* name(SenderType t) { return t == SenderType::kS0 ? "s0" : "s1"; }
const char* name(ReceiverType t) { return t == ReceiverType::kR0 ? "r0" : "r1"; }
const char* name(Message m) { return m == Message::kM0 ? "m0" : "m1"; }
const char* name(Action a) { return a == Action::kA0 ? "a0" : "a1"; }

const char* name(MessageChoice c) {
  switch (c) {
    case MessageChoice::kM0: return "m0";
    case MessageChoice::kM1: return "m1";
    case MessageChoice::kAny: return "any";
  }
  return "?";
}

const char* name(ActionChoice c) {
  switch (c) {
    case ActionChoice::kA0: return "a0";
    case ActionChoice::kA1: return "a1";
    case ActionChoice::kAny: return "any";
  }
  return "?";
}

double EpistemicGame::sender_utility(SenderType t, Message m, Action a) const {
  double honest = sender_honest(idx(t), idx(a));
  return m == honest_message(t) ? honest : honest - cost;
}

Eigen::Vector4d ReceiverStrategy::flat() const {
  return {a0(0, 0), a0(0, 1), a0(1, 0), a0(1, 1)};
}

bool ValidationReport::contains(const std::string& name) const {
  for (const auto& v : violations)
    if (v.name == name) return true;
  return false;
}

namespace {

std::string fmt_num(double v) {
  std::ostringstream os;
  os.precision(12);
  os << v;
  return os.str();
}

void require_finite(double v, const std::string& field) {
  if (!std::isfinite(v)) throw StructuralError(field + ": value is not finite");
}

void require_distribution(const Eigen::Vector2d& p, const std::string& field) {
  for (int i = 0; i < 2; ++i) {
    require_finite(p(i), field);
    if (p(i) < 0.0 || p(i) > 1.0)
      throw StructuralError(field + ": probability " + fmt_num(p(i)) + " outside [0,1]");
  }
  if (std::abs(p.sum() - 1.0) > kDistributionTol)
    throw StructuralError(field + ": distribution does not sum to 1 (sum = " + fmt_num(p.sum()) +
                          ")");
}

bool nearly_equal(double a, double b) {
  double scale = std::max({1.0, std::abs(a), std::abs(b)});
  return std::abs(a - b) <= kDistributionTol * scale;
}

}  // namespace

ValidationReport validate_game(const EpistemicGame& game) {
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      require_finite(game.sender_honest(i, j), "u_s_honest");
      require_finite(game.receiver(i, j), "u_r");
    }
  require_finite(game.cost, "cost");
  require_distribution(game.belief_sender, "belief_sender");
  require_distribution(game.belief_receiver.row(0).transpose(), "belief_receiver.r0");
  require_distribution(game.belief_receiver.row(1).transpose(), "belief_receiver.r1");

  ValidationReport report;
  auto add = [&](const char* n, std::string detail) {
    report.violations.push_back({n, std::move(detail)});
  };

  if (!(game.cost > 0.0)) add(assumption::kCostPositive, "cost must be positive");

  using enum SenderType;
  using enum Action;
  for (Message m : kMessages) {
    if (!(game.sender_utility(kS0, m, kA0) < game.sender_utility(kS0, m, kA1))) {
      if (!report.contains(assumption::kSenderS0PrefersA1))
        add(assumption::kSenderS0PrefersA1, "requires u^s(s0,m,a0) < u^s(s0,m,a1)");
    }
    if (!(game.sender_utility(kS1, m, kA1) < game.sender_utility(kS1, m, kA0))) {
      if (!report.contains(assumption::kSenderS1PrefersA0))
        add(assumption::kSenderS1PrefersA0, "requires u^s(s1,m,a1) < u^s(s1,m,a0)");
    }
  }
  if (!(game.receiver_utility(kS0, kA0) > game.receiver_utility(kS0, kA1)))
    add(assumption::kReceiverA0GivenS0, "requires u^r(s0,a0) > u^r(s0,a1)");
  if (!(game.receiver_utility(kS1, kA1) > game.receiver_utility(kS1, kA0)))
    add(assumption::kReceiverA1GivenS1, "requires u^r(s1,a1) > u^r(s1,a0)");
  if (!nearly_equal(game.sender_honest(0, 0), game.sender_honest(1, 1)))
    add(assumption::kSenderSymmetryA0, "requires u^s(s0,m0,a0) = u^s(s1,m1,a1)");
  if (!nearly_equal(game.sender_honest(0, 1), game.sender_honest(1, 0)))
    add(assumption::kSenderSymmetryA1, "requires u^s(s0,m0,a1) = u^s(s1,m1,a0)");

  // ubar^r(a | theta^r) under the receiver's prior.
  Eigen::Matrix2d prior_utility = game.belief_receiver * game.receiver;
  if (!(prior_utility(0, 0) > prior_utility(0, 1)))
    add(assumption::kReceiverR0PrefersA0, "requires ubar^r(a0|r0) > ubar^r(a1|r0)");
  if (!(prior_utility(1, 0) < prior_utility(1, 1)))
    add(assumption::kReceiverR1PrefersA1, "requires ubar^r(a0|r1) < ubar^r(a1|r1)");
  return report;
}

void require_valid(const EpistemicGame& game) {
  auto report = validate_game(game);
  if (report.ok()) return;
  std::string msg = "game violates assumptions:";
  for (const auto& v : report.violations) msg += " " + v.name;
  throw StructuralError(msg);
}

DerivedConstants derive_constants(const EpistemicGame& game) {
  using enum SenderType;
  using enum Message;
  using enum Action;
  DerivedConstants k;
  k.delta_us_s0 = game.sender_utility(kS0, kM0, kA1) - game.sender_utility(kS0, kM0, kA0);
  k.delta_us_s1 = game.sender_utility(kS1, kM1, kA1) - game.sender_utility(kS1, kM1, kA0);
  k.delta_ur_s0 = game.receiver_utility(kS0, kA1) - game.receiver_utility(kS0, kA0);
  k.delta_ur_s1 = game.receiver_utility(kS1, kA1) - game.receiver_utility(kS1, kA0);
  k.c_prime = game.cost / k.delta_us_s0;
  return k;
}

double sender_expected_utility(const EpistemicGame& game, const StrategyProfile& profile,
                               SenderType t) {
  double total = 0.0;
  for (ReceiverType r : kReceiverTypes)
    for (Message m : kMessages)
      for (Action a : kActions)
        total += profile.receiver.prob(a, m, r) * game.sender_belief(r) *
                 profile.sender.prob(m, t) * game.sender_utility(t, m, a);
  return total;
}

double receiver_expected_utility(const EpistemicGame& game, const StrategyProfile& profile,
                                 const BeliefSystem& beliefs, Message m, ReceiverType r) {
  const auto& cell = beliefs.at(m, r);
  if (!cell.s0)
    throw OffPathError(std::string("posterior undefined off-path at (") + name(m) + "," +
                       name(r) + "); supply an off-path belief");
  Eigen::Vector2d posterior(*cell.s0, 1.0 - *cell.s0);
  double total = 0.0;
  for (Action a : kActions)
    for (SenderType t : kSenderTypes)
      total += profile.receiver.prob(a, m, r) * posterior(idx(t)) * game.receiver_utility(t, a);
  return total;
}

double message_weight(const EpistemicGame& game, const SenderStrategy& sender, Message m,
                      ReceiverType r) {
  return sender.column(m).dot(game.belief_receiver.row(idx(r)).transpose());
}

std::optional<double> bayes_posterior(const EpistemicGame& game, const SenderStrategy& sender,
                                      Message m, ReceiverType r) {
  double denom = message_weight(game, sender, m, r);
  if (denom < kOffPathTol) return std::nullopt;
  return sender.prob(m, SenderType::kS0) * game.receiver_belief(SenderType::kS0, r) / denom;
}

BeliefSystem bayes_beliefs(const EpistemicGame& game, const SenderStrategy& sender) {
  BeliefSystem b;
  for (Message m : kMessages)
    for (ReceiverType r : kReceiverTypes) {
      auto p = bayes_posterior(game, sender, m, r);
      b.at(m, r) = p ? PosteriorEntry::bayes(*p) : PosteriorEntry::off_path_marker();
    }
  return b;
}

double gamma_s(const EpistemicGame& game, const ReceiverStrategy& receiver) {
  using enum Action;
  double total = 0.0;
  for (ReceiverType r : kReceiverTypes) {
    double swing = receiver.prob(kA1, Message::kM1, r) - receiver.prob(kA1, Message::kM0, r);
    total += swing * game.sender_belief(r);
  }
  return total;
}

double gamma_r(const EpistemicGame& game, const SenderStrategy& sender, Message m,
               ReceiverType r) {
  auto k = derive_constants(game);
  Eigen::Vector2d weighted_swing =
      game.belief_receiver.row(idx(r)).transpose().cwiseProduct(
          Eigen::Vector2d(k.delta_ur_s0, k.delta_ur_s1));
  return sender.column(m).dot(weighted_swing);
}

SenderBestResponse sender_best_response(const EpistemicGame& game,
                                        const ReceiverStrategy& receiver) {
  double g = gamma_s(game, receiver);
  double c = derive_constants(game).c_prime;
  if (g < c - kIndifferenceTol) return {MessageChoice::kM0, MessageChoice::kM1};
  if (g > c + kIndifferenceTol) return {MessageChoice::kM1, MessageChoice::kM0};
  return {MessageChoice::kAny, MessageChoice::kAny};
}

ActionChoice receiver_best_response(const EpistemicGame& game, const SenderStrategy& sender,
                                    Message m, ReceiverType r) {
  if (message_weight(game, sender, m, r) < kOffPathTol)
    throw OffPathError(std::string("message ") + name(m) + " is off-path for receiver type " +
                       name(r) +
                       "; every behaviour there is rationalizable, use off-path rationalization");
  double g = gamma_r(game, sender, m, r);
  if (g < -kIndifferenceTol) return ActionChoice::kA0;
  if (g > kIndifferenceTol) return ActionChoice::kA1;
  return ActionChoice::kAny;
}

EpistemicGame honeypot_preset() {
  EpistemicGame g;
  g.sender_honest << 0.0, 1.0,  //
      1.0, 0.0;
  g.cost = 0.4;
  g.receiver << 1.0, 0.0,  //
      -1.0, 0.0;
  g.belief_sender << 0.3, 0.7;
  g.belief_receiver << 0.8, 0.2,  //
      0.2, 0.8;
  g.label = "honeypot";
  g.comment =
      "Honeypot example with asymmetric recognition. Beliefs: defender weights 0.3/0.7 on "
      "attacker types believing legitimate/honeypot with 0.8/0.2 and 0.2/0.8. Utilities and "
      "cost are canonical illustrative values, not taken from a measured scenario.";
  return g;
}

}  // namespace episig
