#include "episig/monte_carlo.hpp"

#include "episig/parallel.hpp"

#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

namespace episig {

const char* const kMonteCarloRng =
    "mt19937_64; block seed = seed_seq{seed_lo32, seed_hi32, stream, block}; "
    "uniform = (x >> 11) * 2^-53";

namespace {

constexpr std::uint64_t kBlockSize = 8192;
// Rejection sampling gives up after this many draws per accepted sample on average.
constexpr std::uint64_t kMaxRejectFactor = 1u << 20;

struct Moments {
  std::uint64_t n = 0;
  double mean = 0.0;
  double m2 = 0.0;

  void add(double x) {
    ++n;
    double d = x - mean;
    mean += d / static_cast<double>(n);
    m2 += d * (x - mean);
  }
  // Chan et al. pairwise merge.
  void merge(const Moments& o) {
    if (o.n == 0) return;
    if (n == 0) {
      *this = o;
      return;
    }
    double total = static_cast<double>(n + o.n);
    double d = o.mean - mean;
    mean += d * static_cast<double>(o.n) / total;
    m2 += o.m2 + d * d * static_cast<double>(n) * static_cast<double>(o.n) / total;
    n += o.n;
  }
  Estimate estimate() const {
    Estimate e;
    e.mean = mean;
    e.n = n;
    e.se = n > 1 ? std::sqrt(m2 / static_cast<double>(n - 1) / static_cast<double>(n)) : 0.0;
    return e;
  }
};

class Stream {
 public:
  Stream(std::uint64_t seed, std::uint32_t stream, std::uint32_t block) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed & 0xffffffffu),
                      static_cast<std::uint32_t>(seed >> 32), stream, block};
    gen_.seed(seq);
  }
  double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }
  bool bernoulli(double p) { return uniform() < p; }

 private:
  std::mt19937_64 gen_;
};

Message draw_message(Stream& s, const SenderStrategy& sender, SenderType t) {
  return s.bernoulli(sender.prob(Message::kM0, t)) ? Message::kM0 : Message::kM1;
}

Action draw_action(Stream& s, const ReceiverStrategy& receiver, Message m, ReceiverType r) {
  return s.bernoulli(receiver.prob(Action::kA0, m, r)) ? Action::kA0 : Action::kA1;
}

// Runs `sample(stream, moments)` until `n` samples, in deterministic blocks.
template <typename Sample>
Estimate run_blocks(std::uint64_t n, std::uint64_t seed, std::uint32_t stream, Sample sample) {
  std::size_t blocks = static_cast<std::size_t>((n + kBlockSize - 1) / kBlockSize);
  std::vector<Moments> parts(blocks);
  parallel_for(blocks, [&](std::size_t b) {
    Stream rng(seed, stream, static_cast<std::uint32_t>(b));
    std::uint64_t count = std::min<std::uint64_t>(kBlockSize, n - b * kBlockSize);
    for (std::uint64_t i = 0; i < count; ++i) parts[b].add(sample(rng));
  });
  Moments total;
  for (const auto& p : parts) total.merge(p);
  return total.estimate();
}

}  // namespace

TypeDraw TypeDraw::from_game(const EpistemicGame& game, std::optional<BeliefSystem> off_path) {
  return {game.belief_sender, game.belief_receiver, std::move(off_path)};
}

PayoffEstimates monte_carlo_payoff(const EpistemicGame& game, const StrategyProfile& profile,
                                   const TypeDraw& draw, std::uint64_t n_samples,
                                   std::uint64_t seed) {
  if (n_samples < 1) throw std::invalid_argument("n_samples must be at least 1");
  PayoffEstimates out;
  out.rng = kMonteCarloRng;
  out.seed = seed;
  const auto& sender = profile.sender;
  const auto& receiver = profile.receiver;

  for (SenderType t : kSenderTypes) {
    out.sender[idx(t)] = run_blocks(n_samples, seed, static_cast<std::uint32_t>(idx(t)),
                                    [&](Stream& s) {
                                      ReceiverType r = s.bernoulli(draw.receiver_type(0))
                                                           ? ReceiverType::kR0
                                                           : ReceiverType::kR1;
                                      Message m = draw_message(s, sender, t);
                                      Action a = draw_action(s, receiver, m, r);
                                      return game.sender_utility(t, m, a);
                                    });
  }

  for (Message m : kMessages) {
    for (ReceiverType r : kReceiverTypes) {
      double prior_s0 = draw.sender_given_r(idx(r), 0);
      double weight = sender.prob(m, SenderType::kS0) * prior_s0 +
                      sender.prob(m, SenderType::kS1) * (1.0 - prior_s0);
      bool off_path = weight < kOffPathTol;
      double posterior_s0 = 0.0;
      if (off_path) {
        const PosteriorEntry* cell =
            draw.off_path_posterior ? &draw.off_path_posterior->at(m, r) : nullptr;
        if (!cell || !cell->s0)
          throw OffPathError(std::string("zero-probability conditioning event at (") + name(m) +
                             "," + name(r) + ") and no off-path posterior supplied");
        posterior_s0 = *cell->s0;
      }
      auto stream = static_cast<std::uint32_t>(2 + 2 * idx(m) + idx(r));
      out.receiver[idx(m)][idx(r)] = run_blocks(n_samples, seed, stream, [&](Stream& s) {
        SenderType t = SenderType::kS0;
        if (off_path) {
          t = s.bernoulli(posterior_s0) ? SenderType::kS0 : SenderType::kS1;
        } else {
          for (std::uint64_t tries = 0;; ++tries) {
            if (tries > kMaxRejectFactor)
              throw std::runtime_error("rejection sampling did not converge");
            t = s.bernoulli(prior_s0) ? SenderType::kS0 : SenderType::kS1;
            if (draw_message(s, sender, t) == m) break;
          }
        }
        Action a = draw_action(s, receiver, m, r);
        return game.receiver_utility(t, a);
      });
    }
  }
  return out;
}

}  // namespace episig
