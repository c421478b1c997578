#include "lerpa/selftest.h"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <sstream>

#include "lerpa/arena.h"
#include "lerpa/encoder.h"
#include "lerpa/mlp.h"
#include "lerpa/session_csv.h"
#include "lerpa/td_agent.h"

namespace lerpa {
namespace {

std::vector<double> random_binary_input(Rng& rng, int n) {
  std::vector<double> x(n);
  for (double& v : x) v = rng.below(2) ? 1.0 : 0.0;
  return x;
}

Mlp random_mlp(Rng& rng, double scale) {
  Mlp m(rng);
  // Non-zero biases and wider weights exercise every gradient term.
  for (double& p : m.params()) p += scale * (2.0 * rng.uniform() - 1.0);
  return m;
}

CheckResult gradient_check(const SelftestOptions& opt) {
  CheckResult r{"gradient_check", true, 0.0, ""};
  Rng rng(derive_seed(opt.seed, 1));
  constexpr double kStep = 1e-5;
  for (int trial = 0; trial < 100; ++trial) {
    Mlp mlp = random_mlp(rng, 0.5);
    const std::vector<double> x = random_binary_input(rng, mlp.input_dim());
    const ForwardTrace t = mlp.forward(x);
    GradientSet g = grad_outputs(mlp, t);
    if (opt.corrupt_gradient) {
      for (auto& gk : g) gk[mlp.b1_index(0)] *= 1.01;
    }
    // A random sample of parameters keeps the check fast.
    for (int probe = 0; probe < 60; ++probe) {
      const std::size_t p = probe == 0 ? mlp.b1_index(0) : rng.below(mlp.num_params());
      const double saved = mlp.params()[p];
      mlp.params()[p] = saved + kStep;
      const auto up = mlp.forward(x).y;
      mlp.params()[p] = saved - kStep;
      const auto down = mlp.forward(x).y;
      mlp.params()[p] = saved;
      for (int k = 0; k < kNumOutputs; ++k) {
        const double numeric = (up[k] - down[k]) / (2.0 * kStep);
        const double analytic = g[k][p];
        const double denom = std::max(std::abs(numeric) + std::abs(analytic), 1e-8);
        r.max_error = std::max(r.max_error, std::abs(numeric - analytic) / denom);
      }
    }
  }
  r.passed = r.max_error < 1e-4;
  return r;
}

CheckResult trace_identity(const SelftestOptions& opt) {
  CheckResult r{"trace_identity", true, 0.0, ""};
  Rng rng(derive_seed(opt.seed, 2));
  for (double lambda : {0.0, 0.1, 0.5, 0.9}) {
    for (int episode = 0; episode < 10; ++episode) {
      AgentParams p;
      p.lambda = lambda;
      p.alpha = 0.05;
      TdAgent agent(p, rng.next());
      agent.begin_hand();
      GradientSet expected;
      for (auto& e : expected) e.assign(agent.mlp().num_params(), 0.0);
      for (int stage = 0; stage < 3; ++stage) {
        const std::vector<double> x =
            random_binary_input(rng, agent.mlp().input_dim());
        const ForwardTrace t = agent.mlp().forward(x);
        const GradientSet g = grad_outputs(agent.mlp(), t);
        for (int k = 0; k < kNumOutputs; ++k) {
          for (std::size_t i = 0; i < g[k].size(); ++i) {
            expected[k][i] = lambda * expected[k][i] + g[k][i];
          }
        }
        agent.td_step(t);
        for (int k = 0; k < kNumOutputs; ++k) {
          for (std::size_t i = 0; i < g[k].size(); ++i) {
            r.max_error = std::max(
                r.max_error, std::abs(agent.traces()[k][i] - expected[k][i]));
          }
        }
      }
      agent.td_terminal(Outcome::kWinOne);
    }
  }
  r.passed = r.max_error <= 1e-12;
  return r;
}

CheckResult legality_oracle(const SelftestOptions& opt) {
  CheckResult r{"legality_oracle", true, 0.0, ""};
  Rng rng(derive_seed(opt.seed, 3));
  int mismatches = 0;
  for (int i = 0; i < 10000; ++i) {
    const RandomPosition pos = random_position(rng);
    CardSet expected;
    for (Card c : pos.hand.cards()) {
      if (oracle_is_legal(c, pos.hand, pos.trick, pos.trump)) expected.insert(c);
    }
    if (expected != legal_moves(pos.hand, pos.trick, pos.trump)) ++mismatches;
  }
  r.max_error = mismatches;
  r.passed = mismatches == 0;
  r.detail = std::to_string(mismatches) + " mismatches in 10000 positions";
  return r;
}

CheckResult ledger_conservation(const SelftestOptions& opt) {
  CheckResult r{"ledger_conservation", true, 0.0, ""};
  TableConfig config;
  config.seed = derive_seed(opt.seed, 4);
  for (int s = 0; s < kNumSeats; ++s) {
    config.seats[s] = SeatConfig{"R" + std::to_string(s), AgentKind::kRandom, {}};
  }
  Table table(config);
  const SessionLog log = run_session(table, 2000);
  int violations = 0;
  std::array<int, kNumSeats> running{};
  for (std::size_t i = 0; i < log.hands.size(); ++i) {
    const HandRecord& h = log.hands[i];
    const int expected = h.void_hand() ? 0 : -kLerpaPenalty * h.settlement.lerpad_count();
    if (h.settlement.total() != expected) ++violations;
    for (int s = 0; s < kNumSeats; ++s) running[s] += h.settlement.deltas[s];
    if (running != log.cumulative[i]) ++violations;
    try {
      replay_hand(h);
    } catch (const std::exception&) {
      ++violations;
    }
  }
  r.max_error = violations;
  r.passed = violations == 0;
  r.detail = std::to_string(violations) + " violations in 2000 hands";
  return r;
}

CheckResult encoding_invariants(const SelftestOptions& opt) {
  CheckResult r{"encoding_invariants", true, 0.0, ""};
  Rng rng(derive_seed(opt.seed, 5));
  int violations = 0;
  for (int i = 0; i < 1000; ++i) {
    const Deal d = deal(rng);
    const Suit trump = d.trump();
    const CardSet hand = to_card_set(d.hands[0]);
    const auto base = encode_hand(hand, trump);
    std::array<int, kNumSuits> perm = {0, 1, 2, 3};
    do {
      CardSet relabeled;
      for (Card c : hand.cards()) {
        relabeled.insert(Card{static_cast<Suit>(perm[static_cast<int>(c.suit)]), c.rank});
      }
      const Suit t = static_cast<Suit>(perm[static_cast<int>(trump)]);
      if (encode_hand(relabeled, t) != base) ++violations;
    } while (std::next_permutation(perm.begin(), perm.end()));
    GameView v;
    v.hand = hand;
    v.trump = trump;
    if (encode_observation(v).bits().size() != kObservationSize) ++violations;
  }
  int covered = 0;
  for (const LayoutField& f : encoding_layout()) {
    if (f.offset != covered) ++violations;
    covered += f.width;
  }
  if (covered != kObservationSize) ++violations;
  r.max_error = violations;
  r.passed = violations == 0;
  r.detail = std::to_string(violations) + " violations";
  return r;
}

}  // namespace

bool oracle_is_legal(Card card, CardSet hand, const TrickState& trick,
                     Suit trump) {
  if (!hand.contains(card)) return false;
  bool holds_led = false;
  if (trick.led_suit) {
    for (Card c : hand.cards()) holds_led = holds_led || c.suit == *trick.led_suit;
  }
  auto follows = [&](Card c) {
    return !trick.led_suit || !holds_led || c.suit == *trick.led_suit;
  };
  const Card ace{trump, Rank::kAce};
  const bool ace_forced = hand.contains(ace) && follows(ace);
  if (ace_forced) return card == ace;
  return follows(card);
}

RandomPosition random_position(Rng& rng) {
  const Deal d = deal(rng);
  RandomPosition pos;
  pos.trump = static_cast<Suit>(rng.below(kNumSuits));
  const int hand_size = 1 + static_cast<int>(rng.below(kHandSize));
  for (int j = 0; j < hand_size; ++j) pos.hand.insert(d.hands[0][j]);
  const int in_trick = static_cast<int>(rng.below(kNumSeats));
  for (int j = 0; j < in_trick; ++j) pos.trick.add(j + 1, d.remaining[j]);
  // Bias toward positions holding the Ace of trumps or the led suit.
  if (rng.below(4) == 0 && !pos.hand.contains(Card{pos.trump, Rank::kAce})) {
    bool ace_elsewhere = false;
    for (const Play& p : pos.trick.plays) {
      ace_elsewhere = ace_elsewhere || p.card == Card{pos.trump, Rank::kAce};
    }
    if (!ace_elsewhere) {
      pos.hand.erase(pos.hand.cards().front());
      pos.hand.insert(Card{pos.trump, Rank::kAce});
    }
  }
  return pos;
}

std::vector<CheckResult> run_selftest(const SelftestOptions& options) {
  return {gradient_check(options), trace_identity(options),
          legality_oracle(options), ledger_conservation(options),
          encoding_invariants(options)};
}

}  // namespace lerpa
