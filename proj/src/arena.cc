#include "lerpa/arena.h"

#include <fstream>
#include <istream>
#include <sstream>
#include <stdexcept>

namespace lerpa {
namespace {

constexpr int kMaxConsecutiveVoids = 100000;

std::vector<int> play_order(int leader, const std::array<bool, kNumSeats>& stays) {
  std::vector<int> order;
  for (int i = 0; i < kNumSeats; ++i) {
    const int seat = next_seat(leader, i);
    if (stays[seat]) order.push_back(seat);
  }
  return order;
}

int first_stayer_after(int dealer, const std::array<bool, kNumSeats>& stays) {
  for (int i = 1; i <= kNumSeats; ++i) {
    const int seat = next_seat(dealer, i);
    if (stays[seat]) return seat;
  }
  throw std::logic_error("no stayers");
}

}  // namespace

void SessionLog::append(HandRecord rec) {
  std::array<int, kNumSeats> cum = cumulative.empty()
                                       ? std::array<int, kNumSeats>{}
                                       : cumulative.back();
  for (int s = 0; s < kNumSeats; ++s) cum[s] += rec.settlement.deltas[s];
  if (rec.void_hand()) ++void_hands;
  cumulative.push_back(cum);
  hands.push_back(std::move(rec));
}

std::array<int, kNumSeats> SessionLog::totals() const {
  return cumulative.empty() ? std::array<int, kNumSeats>{} : cumulative.back();
}

PredealtSpec parse_predealt(std::istream& in) {
  std::vector<std::vector<Card>> lines;
  std::string line;
  while (std::getline(in, line)) {
    if (const auto hash = line.find('#'); hash != std::string::npos) {
      line.erase(hash);
    }
    std::istringstream tokens(line);
    std::vector<Card> cards;
    std::string tok;
    while (tokens >> tok) cards.push_back(parse_card(tok));
    if (!cards.empty()) lines.push_back(std::move(cards));
  }
  if (lines.size() != kNumSeats + 1) {
    throw std::invalid_argument("predealt file needs 5 card lines, found " +
                                std::to_string(lines.size()));
  }
  PredealtSpec spec;
  for (int s = 0; s < kNumSeats; ++s) {
    if (lines[s].size() != kHandSize) {
      throw std::invalid_argument("predealt hand line " + std::to_string(s + 1) +
                                  " must have 3 cards");
    }
    for (int j = 0; j < kHandSize; ++j) spec.hands[s][j] = lines[s][j];
  }
  if (lines[kNumSeats].size() != 1) {
    throw std::invalid_argument("predealt trump line must have 1 card");
  }
  spec.trump_card = lines[kNumSeats][0];
  validate_deal(spec.hands, spec.trump_card);
  return spec;
}

PredealtSpec load_predealt(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open predealt file " + path);
  return parse_predealt(in);
}

std::string format_predealt(const PredealtSpec& spec) {
  std::string out;
  for (const Hand& h : spec.hands) {
    out += to_string(h[0]) + ' ' + to_string(h[1]) + ' ' + to_string(h[2]) + '\n';
  }
  out += to_string(spec.trump_card) + '\n';
  return out;
}

PredealtSpec random_predealt(Rng& rng) {
  const Deal d = deal(rng);
  return PredealtSpec{d.hands, d.trump_card};
}

std::unique_ptr<Agent> make_agent(const SeatConfig& seat, std::uint64_t seed) {
  switch (seat.kind) {
    case AgentKind::kTd: return std::make_unique<TdAgent>(seat.params, seed);
    case AgentKind::kRandom: return std::make_unique<RandomAgent>(seed);
  }
  throw std::logic_error("unknown agent kind");
}

Table::Table(const TableConfig& config)
    : rng_(derive_seed(config.seed, 0)), dealer_(config.dealer_start) {
  if (dealer_ < 0 || dealer_ >= kNumSeats) {
    throw std::invalid_argument("dealer seat out of range");
  }
  for (int s = 0; s < kNumSeats; ++s) {
    agents_[s] = make_agent(config.seats[s], derive_seed(config.seed, 100 + s));
    ids_[s] = config.seats[s].id;
  }
}

Table::Table(std::array<std::unique_ptr<Agent>, kNumSeats> agents,
             std::array<std::string, kNumSeats> ids, std::uint64_t seed,
             int dealer_start)
    : agents_(std::move(agents)),
      ids_(std::move(ids)),
      rng_(derive_seed(seed, 0)),
      dealer_(dealer_start) {
  for (const auto& a : agents_) {
    if (!a) throw std::invalid_argument("table needs four agents");
  }
}

std::array<std::unique_ptr<Agent>, kNumSeats> Table::clone_agents() const {
  std::array<std::unique_ptr<Agent>, kNumSeats> out;
  for (int s = 0; s < kNumSeats; ++s) out[s] = agents_[s]->clone();
  return out;
}

std::array<std::unique_ptr<Agent>, kNumSeats> Table::release_agents() {
  return std::move(agents_);
}

HandRecord Table::play_hand() {
  const Deal d = deal(rng_);
  HandRecord rec = play_deal(d.hands, d.trump_card, dealer_);
  if (!rec.void_hand()) dealer_ = next_seat(dealer_);
  return rec;
}

HandRecord Table::play_predealt(const PredealtSpec& spec) {
  HandRecord rec = play_deal(spec.hands, spec.trump_card, kPredealtDealer);
  rec.predealt = true;
  return rec;
}

HandRecord Table::play_deal(const std::array<Hand, kNumSeats>& hands,
                            Card trump_card, int dealer) {
  HandRecord rec;
  rec.hand_index = next_index_++;
  rec.dealer = dealer;
  rec.hands = hands;
  rec.trump_card = trump_card;
  const Suit trump = trump_card.suit;

  std::array<CardSet, kNumSeats> held;
  for (int s = 0; s < kNumSeats; ++s) held[s] = to_card_set(hands[s]);
  for (auto& a : agents_) a->begin_hand();

  std::array<SeatStatus, kNumSeats> status{};
  auto view_for = [&](int seat) {
    GameView v;
    v.seat = seat;
    v.hand = held[seat];
    v.trump = trump;
    v.played = rec.plays;
    v.status = status;
    v.trick_winners = rec.trick_winners;
    return v;
  };

  // Knock round, clockwise from the dealer's left.
  std::array<bool, kNumSeats> stays{};
  for (int i = 1; i <= kNumSeats; ++i) {
    const int seat = next_seat(dealer, i);
    Agent& agent = *agents_[seat];
    const Observation obs = agent.uses_observations()
                                ? encode_observation(view_for(seat))
                                : Observation{};
    const Decision d = agent.decide_knock(obs);
    agent.commit(d);
    const bool knocked = d.kind == DecisionKind::kKnock;
    stays[seat] = knocked;
    status[seat] = knocked ? SeatStatus::kKnocked : SeatStatus::kFolded;
    rec.knock_order.push_back(seat);
    KnockRecord& kr = rec.knocks[seat];
    kr.knocked = knocked;
    kr.forced = d.forced;
    kr.exploratory = d.was_exploratory;
    if (d.evaluation) kr.y = d.evaluation->y;
  }

  int n_stayers = 0;
  for (bool b : stays) n_stayers += b ? 1 : 0;

  if (n_stayers == 1) {
    // Uncontested: the lone stayer takes every trick without play.
    rec.tricks_won[first_stayer_after(dealer, stays)] = kTricksPerHand;
  } else if (n_stayers > 1) {
    int leader = first_stayer_after(dealer, stays);
    for (int t = 0; t < kTricksPerHand; ++t) {
      TrickState trick;
      for (int seat : play_order(leader, stays)) {
        const CardSet legal = legal_moves(held[seat], trick, trump);
        Card card = legal.cards().front();
        if (t < kTricksPerHand - 1) {
          Agent& agent = *agents_[seat];
          std::vector<CardCandidate> cands;
          for (Card c : legal.cards()) {
            CardCandidate cand{c, Observation{}};
            if (agent.uses_observations()) {
              GameView v = view_for(seat);
              v.hand.erase(c);
              v.played.push_back(Play{seat, c});
              if (static_cast<int>(trick.plays.size()) + 1 == n_stayers) {
                TrickState done = trick;
                done.add(seat, c);
                v.trick_winners.push_back(resolve_trick(done, trump, n_stayers));
              }
              cand.afterstate = encode_observation(v);
            }
            cands.push_back(std::move(cand));
          }
          const Decision d = agent.choose_card(cands);
          agent.commit(d);
          card = *d.card;
          if (!legal.contains(card)) {
            throw std::logic_error("agent chose an illegal card");
          }
          CardStageRecord sr;
          sr.seat = seat;
          sr.stage = t == 0 ? Stage::kFirstCard : Stage::kSecondCard;
          sr.card = card;
          sr.forced = d.forced;
          sr.exploratory = d.was_exploratory;
          if (d.evaluation) sr.y = d.evaluation->y;
          rec.card_stages.push_back(sr);
        }
        trick.add(seat, card);
        held[seat].erase(card);
        rec.plays.push_back(Play{seat, card});
      }
      const int winner = resolve_trick(trick, trump, n_stayers);
      ++rec.tricks_won[winner];
      rec.trick_winners.push_back(winner);
      leader = winner;
    }
  }

  rec.settlement = settle_hand(stays, rec.tricks_won, dealer);
  for (int s = 0; s < kNumSeats; ++s) {
    agents_[s]->end_hand(outcome_for(stays[s], rec.tricks_won[s]));
  }
  return rec;
}

SessionLog run_session(Table& table, std::int64_t n_hands) {
  if (n_hands < 1) throw std::invalid_argument("session needs at least 1 hand");
  SessionLog log;
  log.agent_ids = table.ids();
  std::int64_t played = 0;
  int consecutive_voids = 0;
  while (played < n_hands) {
    HandRecord rec = table.play_hand();
    if (rec.void_hand()) {
      if (++consecutive_voids > kMaxConsecutiveVoids) {
        throw std::runtime_error("session stalled: every seat keeps folding");
      }
    } else {
      consecutive_voids = 0;
      ++played;
    }
    log.append(std::move(rec));
  }
  return log;
}

SessionLog run_predealt(Table& table, const PredealtSpec& spec,
                        std::int64_t repeats) {
  validate_deal(spec.hands, spec.trump_card);
  SessionLog log;
  log.agent_ids = table.ids();
  log.predealt = true;
  for (std::int64_t r = 0; r < repeats; ++r) log.append(table.play_predealt(spec));
  return log;
}

void replay_hand(const HandRecord& rec) {
  auto fail = [&](const std::string& what) {
    throw std::runtime_error("hand " + std::to_string(rec.hand_index) + ": " +
                             what);
  };
  try {
    validate_deal(rec.hands, rec.trump_card);
  } catch (const std::invalid_argument& e) {
    fail(e.what());
  }
  const Suit trump = rec.trump();
  std::array<bool, kNumSeats> stays{};
  if (rec.knock_order.size() != kNumSeats) fail("knock round incomplete");
  for (int i = 0; i < kNumSeats; ++i) {
    if (rec.knock_order[i] != next_seat(rec.dealer, i + 1)) {
      fail("knock order is not clockwise from the dealer's left");
    }
  }
  int n_stayers = 0;
  for (int s = 0; s < kNumSeats; ++s) {
    stays[s] = rec.knocks[s].knocked;
    n_stayers += stays[s] ? 1 : 0;
  }
  std::array<int, kNumSeats> tricks{};
  if (n_stayers == 1) {
    if (!rec.plays.empty()) fail("uncontested hand has card plays");
    tricks[first_stayer_after(rec.dealer, stays)] = kTricksPerHand;
  } else if (n_stayers > 1) {
    if (static_cast<int>(rec.plays.size()) != n_stayers * kTricksPerHand) {
      fail("wrong number of card plays");
    }
    std::array<CardSet, kNumSeats> held;
    for (int s = 0; s < kNumSeats; ++s) held[s] = to_card_set(rec.hands[s]);
    int leader = first_stayer_after(rec.dealer, stays);
    std::size_t next = 0;
    for (int t = 0; t < kTricksPerHand; ++t) {
      TrickState trick;
      for (int seat : play_order(leader, stays)) {
        const Play& p = rec.plays[next++];
        if (p.seat != seat) fail("play out of turn");
        if (!legal_moves(held[seat], trick, trump).contains(p.card)) {
          fail("illegal play " + to_string(p.card));
        }
        trick.add(seat, p.card);
        held[seat].erase(p.card);
      }
      const int winner = resolve_trick(trick, trump, n_stayers);
      if (t >= static_cast<int>(rec.trick_winners.size()) ||
          rec.trick_winners[t] != winner) {
        fail("trick winner mismatch");
      }
      ++tricks[winner];
      leader = winner;
    }
  }
  if (tricks != rec.tricks_won) fail("trick counts mismatch");
  const Settlement s = settle_hand(stays, tricks, rec.dealer);
  if (s.deltas != rec.settlement.deltas || s.void_hand != rec.void_hand() ||
      s.lerpad != rec.settlement.lerpad) {
    fail("settlement mismatch");
  }
}

}  // namespace lerpa
