#ifndef LERPA_TD_AGENT_H_
#define LERPA_TD_AGENT_H_

// Agents seated at a Lerpa table.
//
// TdAgent scores each option by the network's expected chips for the
// resulting situation (the afterstate), acts epsilon-greedily, and trains its
// network online with TD(lambda): every evaluated decision of a hand is
// chained to the next one, and the final decision is compared against the
// actual result once the hand is over.

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <optional>
#include <span>
#include <string_view>

#include "lerpa/encoder.h"
#include "lerpa/mlp.h"
#include "lerpa/rng.h"
#include "lerpa/rules.h"

namespace lerpa {

struct AgentParams {
  double alpha = 0.1;
  double lambda = 0.1;
  double epsilon = 0.01;
  int courage_hands = 200;
  // Train toward the all-zero target after folding.
  bool fold_update = true;
  // Apply epsilon exploration to the knock/fold decision as well as to cards.
  bool explore_knock = true;
  // Clamp outputs into [0, 1] before computing expected chips for decisions.
  bool clamp_outputs = false;
  int hidden_units = kDefaultHiddenUnits;

  // Throws std::invalid_argument when a field is out of range.
  void validate() const;
  friend bool operator==(const AgentParams&, const AgentParams&) = default;
};

enum class DecisionKind : std::uint8_t { kKnock, kFold, kPlayCard };

enum class Stage : std::uint8_t { kKnock = 1, kFirstCard = 2, kSecondCard = 3 };

struct Decision {
  DecisionKind kind = DecisionKind::kKnock;
  std::optional<Card> card;
  Observation chosen_afterstate;
  bool was_exploratory = false;
  bool forced = false;
  // Network evaluation of the chosen afterstate; empty for agents that do
  // not evaluate.
  std::optional<ForwardTrace> evaluation;
};

struct CardCandidate {
  Card card;
  Observation afterstate;
};

class Agent {
 public:
  virtual ~Agent() = default;

  virtual std::string_view kind() const = 0;
  // Deep copy including network weights and random stream state.
  virtual std::unique_ptr<Agent> clone() const = 0;
  // Whether candidate afterstates must be encoded for this agent.
  virtual bool uses_observations() const = 0;

  virtual void begin_hand() {}
  virtual Decision decide_knock(const Observation& obs_stay) = 0;
  virtual Decision choose_card(std::span<const CardCandidate> candidates) = 0;
  // Called with every decision the agent actually takes.
  virtual void commit(const Decision&) {}
  virtual void end_hand(Outcome) {}
};

// Always knocks; plays a uniformly random legal card.
Decision random_agent_decide(Rng& rng, Stage stage,
                             std::span<const CardCandidate> options);

class RandomAgent final : public Agent {
 public:
  explicit RandomAgent(std::uint64_t seed) : rng_(seed) {}

  std::string_view kind() const override { return "random"; }
  std::unique_ptr<Agent> clone() const override {
    return std::make_unique<RandomAgent>(*this);
  }
  bool uses_observations() const override { return false; }
  Decision decide_knock(const Observation& obs_stay) override;
  Decision choose_card(std::span<const CardCandidate> candidates) override;

 private:
  Rng rng_;
};

class TdAgent final : public Agent {
 public:
  TdAgent(const AgentParams& params, std::uint64_t seed);
  TdAgent(const AgentParams& params, Mlp mlp, std::uint64_t seed);

  std::string_view kind() const override { return "td"; }
  std::unique_ptr<Agent> clone() const override {
    return std::make_unique<TdAgent>(*this);
  }
  bool uses_observations() const override { return true; }

  void begin_hand() override;
  Decision decide_knock(const Observation& obs_stay) override;
  Decision choose_card(std::span<const CardCandidate> candidates) override;
  void commit(const Decision& d) override;
  void end_hand(Outcome o) override { td_terminal(o); }

  // Chains a new evaluation into the learning episode. The first evaluation
  // of a hand only seeds the traces and the previous prediction.
  void td_step(const ForwardTrace& evaluation);
  // Final update toward the one-hot target of the outcome (all zeros for a
  // fold), then clears per-hand state. Throws std::logic_error if called
  // twice in one hand.
  void td_terminal(Outcome outcome);

  // Expected chips used for decisions (honours clamp_outputs).
  double decision_value(const OutcomeDistribution& y) const;

  const AgentParams& params() const { return params_; }
  AgentParams& mutable_params() { return params_; }
  const Mlp& mlp() const { return mlp_; }
  Mlp& mutable_mlp() { return mlp_; }
  const GradientSet& traces() const { return traces_; }
  const std::optional<OutcomeDistribution>& y_prev() const { return y_prev_; }
  std::int64_t hands_played() const { return hands_played_; }
  void set_hands_played(std::int64_t n) { hands_played_ = n; }
  // Frozen agents evaluate and decide but never change their weights.
  void set_frozen(bool frozen) { frozen_ = frozen; }

 private:
  void apply_update(const OutcomeDistribution& delta);
  void reset_episode();

  AgentParams params_;
  Mlp mlp_;
  Rng rng_;
  GradientSet traces_;
  GradientSet scratch_;
  std::optional<OutcomeDistribution> y_prev_;
  std::int64_t hands_played_ = 0;
  bool terminal_done_ = false;
  bool frozen_ = false;
};

OutcomeDistribution outcome_target(Outcome o);

// Agent checkpoint: the 8-byte magic "LRPAGT01"; alpha, lambda, epsilon as
// little-endian doubles; courage_hands and a flag word (bit 0 fold_update,
// bit 1 explore_knock, bit 2 clamp_outputs) as little-endian uint32;
// hands_played as little-endian uint64; then the network in weight-file
// format. The random stream is not stored; a loaded agent draws from `seed`.
void save_agent(const TdAgent& agent, std::ostream& out);
std::unique_ptr<TdAgent> load_agent(std::istream& in, std::uint64_t seed);

}  // namespace lerpa

#endif  // LERPA_TD_AGENT_H_
