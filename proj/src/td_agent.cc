#include "lerpa/td_agent.h"

#include <algorithm>
#include <bit>
#include <cstring>
#include <istream>
#include <ostream>
#include <stdexcept>

namespace lerpa {
namespace {

constexpr char kAgentMagic[8] = {'L', 'R', 'P', 'A', 'G', 'T', '0', '1'};

Mlp fresh_mlp(const AgentParams& params, std::uint64_t seed) {
  Rng init(derive_seed(seed, 0x1417));
  return Mlp(init, kObservationSize, params.hidden_units);
}

void put_le(std::ostream& out, std::uint64_t v, int nbytes) {
  for (int i = 0; i < nbytes; ++i) out.put(static_cast<char>(v >> (8 * i)));
}

std::uint64_t get_le(std::istream& in, int nbytes) {
  unsigned char b[8] = {};
  if (!in.read(reinterpret_cast<char*>(b), nbytes)) {
    throw std::runtime_error("agent checkpoint truncated");
  }
  std::uint64_t v = 0;
  for (int i = nbytes - 1; i >= 0; --i) v = (v << 8) | b[i];
  return v;
}

}  // namespace

void AgentParams::validate() const {
  if (!(alpha > 0.0)) throw std::invalid_argument("alpha must be > 0");
  if (!(lambda >= 0.0 && lambda <= 1.0)) {
    throw std::invalid_argument("lambda must be in [0, 1]");
  }
  if (!(epsilon >= 0.0 && epsilon <= 1.0)) {
    throw std::invalid_argument("epsilon must be in [0, 1]");
  }
  if (courage_hands < 0) throw std::invalid_argument("courage must be >= 0");
  if (hidden_units <= 0) throw std::invalid_argument("hidden units must be > 0");
}

OutcomeDistribution outcome_target(Outcome o) {
  switch (o) {
    case Outcome::kWinThree: return {1, 0, 0, 0};
    case Outcome::kWinTwo: return {0, 1, 0, 0};
    case Outcome::kWinOne: return {0, 0, 1, 0};
    case Outcome::kLerpad: return {0, 0, 0, 1};
    case Outcome::kFold: return {0, 0, 0, 0};
  }
  return {};
}

Decision random_agent_decide(Rng& rng, Stage stage,
                             std::span<const CardCandidate> options) {
  Decision d;
  if (stage == Stage::kKnock) {
    d.kind = DecisionKind::kKnock;
    return d;
  }
  if (options.empty()) throw std::logic_error("random agent: no legal cards");
  const std::size_t pick = options.size() == 1 ? 0 : rng.below(options.size());
  d.kind = DecisionKind::kPlayCard;
  d.card = options[pick].card;
  d.chosen_afterstate = options[pick].afterstate;
  d.forced = options.size() == 1;
  return d;
}

Decision RandomAgent::decide_knock(const Observation& obs_stay) {
  Decision d = random_agent_decide(rng_, Stage::kKnock, {});
  d.chosen_afterstate = obs_stay;
  return d;
}

Decision RandomAgent::choose_card(std::span<const CardCandidate> candidates) {
  return random_agent_decide(rng_, Stage::kFirstCard, candidates);
}

TdAgent::TdAgent(const AgentParams& params, std::uint64_t seed)
    : TdAgent(params, fresh_mlp(params, seed), seed) {}

TdAgent::TdAgent(const AgentParams& params, Mlp mlp, std::uint64_t seed)
    : params_(params), mlp_(std::move(mlp)), rng_(derive_seed(seed, 0x7d)) {
  params_.validate();
  if (mlp_.input_dim() != kObservationSize) {
    throw std::invalid_argument("agent network must take an observation");
  }
  for (auto& e : traces_) e.assign(mlp_.num_params(), 0.0);
}

double TdAgent::decision_value(const OutcomeDistribution& y) const {
  if (!params_.clamp_outputs) return scalar_prediction(y);
  OutcomeDistribution c;
  for (int k = 0; k < kNumOutputs; ++k) c[k] = std::clamp(y[k], 0.0, 1.0);
  return scalar_prediction(c);
}

void TdAgent::reset_episode() {
  for (auto& e : traces_) std::fill(e.begin(), e.end(), 0.0);
  y_prev_.reset();
}

void TdAgent::begin_hand() {
  reset_episode();
  terminal_done_ = false;
}

Decision TdAgent::decide_knock(const Observation& obs_stay) {
  Decision d;
  d.chosen_afterstate = obs_stay;
  d.evaluation = mlp_.forward(obs_stay);
  if (hands_played_ < params_.courage_hands) {
    d.kind = DecisionKind::kKnock;
    d.forced = true;
    return d;
  }
  if (params_.explore_knock && rng_.bernoulli(params_.epsilon)) {
    d.was_exploratory = true;
    d.kind = rng_.below(2) == 0 ? DecisionKind::kKnock : DecisionKind::kFold;
    return d;
  }
  // Folding is worth exactly zero chips; ties fold.
  d.kind = decision_value(d.evaluation->y) > 0.0 ? DecisionKind::kKnock
                                                 : DecisionKind::kFold;
  return d;
}

Decision TdAgent::choose_card(std::span<const CardCandidate> candidates) {
  if (candidates.empty()) throw std::logic_error("choose_card: no candidates");
  std::vector<ForwardTrace> evals;
  evals.reserve(candidates.size());
  for (const CardCandidate& c : candidates) {
    evals.push_back(mlp_.forward(c.afterstate));
  }
  Decision d;
  d.kind = DecisionKind::kPlayCard;
  std::size_t pick = 0;
  if (candidates.size() == 1) {
    d.forced = true;
  } else if (rng_.bernoulli(params_.epsilon)) {
    d.was_exploratory = true;
    pick = rng_.below(candidates.size());
  } else {
    double best = decision_value(evals[0].y);
    for (std::size_t i = 1; i < candidates.size(); ++i) {
      const double v = decision_value(evals[i].y);
      if (v > best || (v == best && candidates[i].card < candidates[pick].card)) {
        best = v;
        pick = i;
      }
    }
  }
  d.card = candidates[pick].card;
  d.chosen_afterstate = candidates[pick].afterstate;
  d.evaluation = std::move(evals[pick]);
  return d;
}

void TdAgent::commit(const Decision& d) {
  if (d.evaluation) td_step(*d.evaluation);
}

void TdAgent::apply_update(const OutcomeDistribution& delta) {
  if (frozen_) return;
  auto w = mlp_.params();
  for (int k = 0; k < kNumOutputs; ++k) {
    const double step = params_.alpha * delta[k];
    if (step == 0.0) continue;
    const double* e = traces_[k].data();
    for (std::size_t i = 0; i < w.size(); ++i) w[i] += step * e[i];
  }
}

void TdAgent::td_step(const ForwardTrace& evaluation) {
  if (evaluation.hidden.size() != static_cast<std::size_t>(mlp_.hidden_dim())) {
    throw std::logic_error("td_step: evaluation shape mismatch");
  }
  grad_outputs_into(mlp_, evaluation, scratch_);
  if (y_prev_) {
    OutcomeDistribution delta;
    for (int k = 0; k < kNumOutputs; ++k) {
      delta[k] = evaluation.y[k] - (*y_prev_)[k];
    }
    apply_update(delta);
    const double lambda = params_.lambda;
    for (int k = 0; k < kNumOutputs; ++k) {
      double* e = traces_[k].data();
      const double* g = scratch_[k].data();
      for (std::size_t i = 0; i < traces_[k].size(); ++i) {
        e[i] = lambda * e[i] + g[i];
      }
    }
  } else {
    traces_ = scratch_;
  }
  y_prev_ = evaluation.y;
}

void TdAgent::td_terminal(Outcome outcome) {
  if (terminal_done_) throw std::logic_error("td_terminal called twice in a hand");
  terminal_done_ = true;
  const bool skip = outcome == Outcome::kFold && !params_.fold_update;
  if (y_prev_ && !skip) {
    const OutcomeDistribution z = outcome_target(outcome);
    OutcomeDistribution delta;
    for (int k = 0; k < kNumOutputs; ++k) delta[k] = z[k] - (*y_prev_)[k];
    apply_update(delta);
  }
  reset_episode();
  ++hands_played_;
}

void save_agent(const TdAgent& agent, std::ostream& out) {
  const AgentParams& p = agent.params();
  out.write(kAgentMagic, sizeof(kAgentMagic));
  put_le(out, std::bit_cast<std::uint64_t>(p.alpha), 8);
  put_le(out, std::bit_cast<std::uint64_t>(p.lambda), 8);
  put_le(out, std::bit_cast<std::uint64_t>(p.epsilon), 8);
  put_le(out, static_cast<std::uint32_t>(p.courage_hands), 4);
  const std::uint32_t flags = (p.fold_update ? 1U : 0U) |
                              (p.explore_knock ? 2U : 0U) |
                              (p.clamp_outputs ? 4U : 0U);
  put_le(out, flags, 4);
  put_le(out, static_cast<std::uint64_t>(agent.hands_played()), 8);
  save_mlp(agent.mlp(), out);
}

std::unique_ptr<TdAgent> load_agent(std::istream& in, std::uint64_t seed) {
  char magic[8];
  if (!in.read(magic, sizeof(magic)) ||
      std::memcmp(magic, kAgentMagic, sizeof(magic)) != 0) {
    throw std::runtime_error("not an agent checkpoint (bad magic)");
  }
  AgentParams p;
  p.alpha = std::bit_cast<double>(get_le(in, 8));
  p.lambda = std::bit_cast<double>(get_le(in, 8));
  p.epsilon = std::bit_cast<double>(get_le(in, 8));
  p.courage_hands = static_cast<int>(get_le(in, 4));
  const auto flags = static_cast<std::uint32_t>(get_le(in, 4));
  p.fold_update = (flags & 1U) != 0;
  p.explore_knock = (flags & 2U) != 0;
  p.clamp_outputs = (flags & 4U) != 0;
  const auto hands = static_cast<std::int64_t>(get_le(in, 8));
  Mlp mlp = load_mlp(in);
  p.hidden_units = mlp.hidden_dim();
  auto agent = std::make_unique<TdAgent>(p, std::move(mlp), seed);
  agent->set_hands_played(hands);
  return agent;
}

}  // namespace lerpa
