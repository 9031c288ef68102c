#pragma once

#include <Eigen/Dense>

#include <array>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace episig {

// Binary type, message and action sets. Index 0/1 everywhere.
enum class SenderType { kS0 = 0, kS1 = 1 };
enum class ReceiverType { kR0 = 0, kR1 = 1 };
enum class Message { kM0 = 0, kM1 = 1 };
enum class Action { kA0 = 0, kA1 = 1 };

inline constexpr std::array<SenderType, 2> kSenderTypes{SenderType::kS0, SenderType::kS1};
inline constexpr std::array<ReceiverType, 2> kReceiverTypes{ReceiverType::kR0, ReceiverType::kR1};
inline constexpr std::array<Message, 2> kMessages{Message::kM0, Message::kM1};
inline constexpr std::array<Action, 2> kActions{Action::kA0, Action::kA1};

template <typename E>
constexpr int idx(E e) {
  return static_cast<int>(e);
}

/// The message type `t` sends when it is honest.
constexpr Message honest_message(SenderType t) {
  return t == SenderType::kS0 ? Message::kM0 : Message::kM1;
}

const char* name(SenderType t);
const char* name(ReceiverType t);
const char* name(Message m);
const char* name(Action a);

// Sign tests for best responses.
inline constexpr double kIndifferenceTol = 1e-9;
// Probability distributions must sum to one within this.
inline constexpr double kDistributionTol = 1e-12;
// A Bayes denominator below this marks the message as off-path.
inline constexpr double kOffPathTol = 1e-12;

/// Input is not a well-formed game (non-finite values, broken distributions).
/// Distinct from violations of the modelling assumptions.
class StructuralError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Raised when an operation needs a posterior at an (m, theta^r) cell that has none.
class OffPathError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Epistemic signaling game with a finite type structure.
///
/// Sender utilities are stored for honest messages only; the deceptive message
/// costs `cost` on top, so u^s(s0,m1,a) = u^s(s0,m0,a) - C and likewise for s1.
struct EpistemicGame {
  // (sender type, action) -> u^s under the honest message.
  Eigen::Matrix2d sender_honest = Eigen::Matrix2d::Zero();
  double cost = 0.0;
  // (sender type, action) -> u^r.
  Eigen::Matrix2d receiver = Eigen::Matrix2d::Zero();
  // pi^s(theta^r), indexed by receiver type.
  Eigen::Vector2d belief_sender = Eigen::Vector2d::Zero();
  // Row theta^r holds pi^r(. | theta^r) over sender types.
  Eigen::Matrix2d belief_receiver = Eigen::Matrix2d::Zero();
  std::string label;
  std::string comment;

  double sender_utility(SenderType t, Message m, Action a) const;
  double receiver_utility(SenderType t, Action a) const { return receiver(idx(t), idx(a)); }
  double sender_belief(ReceiverType r) const { return belief_sender(idx(r)); }
  double receiver_belief(SenderType t, ReceiverType r) const {
    return belief_receiver(idx(r), idx(t));
  }
};

/// sigma^s(m0 | theta^s) per sender type; the m1 probability is the complement.
struct SenderStrategy {
  Eigen::Vector2d m0 = Eigen::Vector2d::Ones();

  SenderStrategy() = default;
  SenderStrategy(double s00, double s10) : m0(s00, s10) {}

  double s00() const { return m0(0); }
  double s10() const { return m0(1); }
  double prob(Message m, SenderType t) const {
    return m == Message::kM0 ? m0(idx(t)) : 1.0 - m0(idx(t));
  }
  /// Column (over sender types) of sigma^s(m | .).
  Eigen::Vector2d column(Message m) const {
    return m == Message::kM0 ? m0 : Eigen::Vector2d(Eigen::Vector2d::Ones() - m0);
  }
};

/// sigma^r(a0 | m, theta^r) stored as a (message, receiver type) matrix.
struct ReceiverStrategy {
  Eigen::Matrix2d a0 = Eigen::Matrix2d::Ones();

  double prob(Action a, Message m, ReceiverType r) const {
    double p0 = a0(idx(m), idx(r));
    return a == Action::kA0 ? p0 : 1.0 - p0;
  }
  void set_a0(Message m, ReceiverType r, double p) { a0(idx(m), idx(r)) = p; }
  void set_a1(Message m, ReceiverType r, double p) { a0(idx(m), idx(r)) = 1.0 - p; }
  /// Row-major flattening [ (m0,r0), (m0,r1), (m1,r0), (m1,r1) ].
  Eigen::Vector4d flat() const;
};

struct StrategyProfile {
  SenderStrategy sender;
  ReceiverStrategy receiver;
};

/// One posterior cell pi^r(s0 | m, theta^r).
///
/// `s0` is empty for a bare off-path marker. Off-path cells may also carry a
/// constructed belief, in which case `off_path` stays true.
struct PosteriorEntry {
  std::optional<double> s0;
  bool off_path = false;

  static PosteriorEntry bayes(double p) { return {p, false}; }
  static PosteriorEntry off_path_marker() { return {std::nullopt, true}; }
  static PosteriorEntry constructed(double p) { return {p, true}; }
};

struct BeliefSystem {
  std::array<std::array<PosteriorEntry, 2>, 2> cells{};  // [message][receiver type]

  const PosteriorEntry& at(Message m, ReceiverType r) const { return cells[idx(m)][idx(r)]; }
  PosteriorEntry& at(Message m, ReceiverType r) { return cells[idx(m)][idx(r)]; }
};

struct DerivedConstants {
  double delta_us_s0 = 0.0;  // u^s(s0,m0,a1) - u^s(s0,m0,a0) > 0
  double delta_us_s1 = 0.0;  // u^s(s1,m1,a1) - u^s(s1,m1,a0) < 0
  double delta_ur_s0 = 0.0;  // u^r(s0,a1) - u^r(s0,a0) < 0
  double delta_ur_s1 = 0.0;  // u^r(s1,a1) - u^r(s1,a0) > 0
  double c_prime = 0.0;      // C / delta_us_s0

  double delta_ur(SenderType t) const { return t == SenderType::kS0 ? delta_ur_s0 : delta_ur_s1; }
  /// Posterior on s0 at which the receiver is indifferent between a0 and a1.
  double indifference_posterior() const { return delta_ur_s1 / (delta_ur_s1 - delta_ur_s0); }
};

struct Violation {
  std::string name;
  std::string detail;
};

struct ValidationReport {
  std::vector<Violation> violations;

  bool ok() const { return violations.empty(); }
  bool contains(const std::string& name) const;
};

// Assumption names reported by validate_game.
namespace assumption {
inline constexpr const char* kCostPositive = "cost-positive";
inline constexpr const char* kSenderS0PrefersA1 = "sender-s0-prefers-a1";
inline constexpr const char* kSenderS1PrefersA0 = "sender-s1-prefers-a0";
inline constexpr const char* kReceiverA0GivenS0 = "receiver-prefers-a0-given-s0";
inline constexpr const char* kReceiverA1GivenS1 = "receiver-prefers-a1-given-s1";
inline constexpr const char* kSenderSymmetryA0 = "sender-symmetry-a0";
inline constexpr const char* kSenderSymmetryA1 = "sender-symmetry-a1";
inline constexpr const char* kReceiverR0PrefersA0 = "receiver-r0-prefers-a0-under-prior";
inline constexpr const char* kReceiverR1PrefersA1 = "receiver-r1-prefers-a1-under-prior";
}  // namespace assumption

/// Checks the standing modelling assumptions. Throws StructuralError when the
/// input is not a game at all (non-finite numbers, bad distributions).
ValidationReport validate_game(const EpistemicGame& game);

/// validate_game, throwing StructuralError with the joined violations if any.
void require_valid(const EpistemicGame& game);

DerivedConstants derive_constants(const EpistemicGame& game);

/// Expected utility of sender type `t` under the profile, averaged over her
/// belief about the receiver type.
double sender_expected_utility(const EpistemicGame& game, const StrategyProfile& profile,
                               SenderType t);

/// Receiver expected utility at (m, theta^r) under the posterior cell. Throws
/// OffPathError when the cell carries no belief.
double receiver_expected_utility(const EpistemicGame& game, const StrategyProfile& profile,
                                 const BeliefSystem& beliefs, Message m, ReceiverType r);

/// Total probability of message m for receiver type r: sum_phi sigma^s(m|phi) pi^r(phi|r).
double message_weight(const EpistemicGame& game, const SenderStrategy& sender, Message m,
                      ReceiverType r);

/// pi^r(s0 | m, theta^r) by Bayes' rule; empty when m is off-path for r.
std::optional<double> bayes_posterior(const EpistemicGame& game, const SenderStrategy& sender,
                                      Message m, ReceiverType r);

/// Bayes posteriors for every cell, with bare off-path markers where undefined.
BeliefSystem bayes_beliefs(const EpistemicGame& game, const SenderStrategy& sender);

double gamma_s(const EpistemicGame& game, const ReceiverStrategy& receiver);
double gamma_r(const EpistemicGame& game, const SenderStrategy& sender, Message m,
               ReceiverType r);

enum class MessageChoice { kM0, kM1, kAny };
enum class ActionChoice { kA0, kA1, kAny };

const char* name(MessageChoice c);
const char* name(ActionChoice c);

struct SenderBestResponse {
  MessageChoice s0 = MessageChoice::kAny;
  MessageChoice s1 = MessageChoice::kAny;

  MessageChoice of(SenderType t) const { return t == SenderType::kS0 ? s0 : s1; }
};

SenderBestResponse sender_best_response(const EpistemicGame& game,
                                        const ReceiverStrategy& receiver);

/// Throws OffPathError when m carries no weight for receiver type r: any
/// off-path behaviour is rationalizable by some posterior.
ActionChoice receiver_best_response(const EpistemicGame& game, const SenderStrategy& sender,
                                    Message m, ReceiverType r);

/// The honeypot example game: attacker-belief types (0.8/0.2) and (0.2/0.8)
/// weighted 0.3/0.7 by the defender, with canonical utilities and C = 0.4.
EpistemicGame honeypot_preset();

}  // namespace episig
