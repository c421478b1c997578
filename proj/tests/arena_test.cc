#include <fstream>
#include <sstream>
#include <stdexcept>

#include <gtest/gtest.h>

#include "lerpa/arena.h"
#include "lerpa/session_csv.h"

namespace lerpa {
namespace {

// Knocks or folds as told and plays its lowest legal card.
class ScriptedAgent final : public Agent {
 public:
  explicit ScriptedAgent(bool knock) : knock_(knock) {}
  std::string_view kind() const override { return "scripted"; }
  std::unique_ptr<Agent> clone() const override {
    return std::make_unique<ScriptedAgent>(*this);
  }
  bool uses_observations() const override { return false; }
  Decision decide_knock(const Observation&) override {
    Decision d;
    d.kind = knock_ ? DecisionKind::kKnock : DecisionKind::kFold;
    return d;
  }
  Decision choose_card(std::span<const CardCandidate> c) override {
    Decision d;
    d.kind = DecisionKind::kPlayCard;
    d.card = c.front().card;
    d.forced = c.size() == 1;
    return d;
  }
  void end_hand(Outcome o) override { outcomes.push_back(o); }
  std::vector<Outcome> outcomes;

 private:
  bool knock_;
};

Table scripted_table(std::array<bool, 4> knocks, int dealer = 0) {
  std::array<std::unique_ptr<Agent>, 4> agents;
  for (int s = 0; s < 4; ++s) agents[s] = std::make_unique<ScriptedAgent>(knocks[s]);
  return Table(std::move(agents), {"a", "b", "c", "d"}, 5, dealer);
}

TableConfig random_config(std::uint64_t seed) {
  TableConfig c;
  for (int s = 0; s < 4; ++s) c.seats[s] = {"R" + std::to_string(s), AgentKind::kRandom, {}};
  c.seed = seed;
  return c;
}

TableConfig td_config(std::uint64_t seed) {
  TableConfig c;
  for (int s = 0; s < 4; ++s) c.seats[s] = {"T" + std::to_string(s), AgentKind::kTd, {}};
  c.seed = seed;
  return c;
}

int rank_power(Card c, Suit led, Suit trump) {
  if (c.suit == trump) return 100 + ordinal(c.rank);
  if (c.suit == led) return ordinal(c.rank);
  return -1;
}

// Settlement recomputed from the raw plays of a record.
std::array<int, 4> oracle_deltas(const HandRecord& r) {
  std::array<int, 4> delta{};
  std::vector<int> stayers;
  for (int s = 0; s < 4; ++s)
    if (r.knocks[s].knocked) stayers.push_back(s);
  if (stayers.empty()) return delta;
  std::array<int, 4> tricks{};
  if (stayers.size() == 1) {
    tricks[stayers[0]] = 3;
  } else {
    const std::size_t n = stayers.size();
    for (std::size_t t = 0; t < 3; ++t) {
      const Suit led = r.plays[t * n].card.suit;
      std::size_t best = t * n;
      for (std::size_t i = t * n + 1; i < (t + 1) * n; ++i) {
        if (rank_power(r.plays[i].card, led, r.trump()) >
            rank_power(r.plays[best].card, led, r.trump()))
          best = i;
      }
      ++tricks[r.plays[best].seat];
    }
  }
  for (int s : stayers) delta[s] = tricks[s] > 0 ? tricks[s] : -3;
  delta[r.dealer] -= 3;
  return delta;
}

TEST(Table, LedgerMatchesOracleForRandomAgents) {
  Table table(random_config(21));
  const SessionLog log = run_session(table, 3000);
  for (const HandRecord& r : log.hands) {
    EXPECT_EQ(r.settlement.deltas, oracle_deltas(r)) << r.hand_index;
    EXPECT_EQ(r.settlement.total(), -3 * r.settlement.lerpad_count());
    EXPECT_NO_THROW(replay_hand(r));
  }
}

TEST(Table, CourageKeepsFreshAgentsIn) {
  Table table(td_config(3));
  const SessionLog log = run_session(table, 200);
  EXPECT_EQ(log.void_hands, 0);
  for (const HandRecord& r : log.hands) {
    for (int s = 0; s < 4; ++s) {
      EXPECT_TRUE(r.knocks[s].knocked);
      EXPECT_TRUE(r.knocks[s].forced);
      EXPECT_TRUE(r.knocks[s].y.has_value());
    }
  }
}

TEST(Table, KnockRoundStartsLeftOfDealer) {
  Table table = scripted_table({true, true, true, true}, 2);
  const HandRecord r = table.play_hand();
  EXPECT_EQ(r.dealer, 2);
  EXPECT_EQ(r.knock_order, (std::vector<int>{3, 0, 1, 2}));
  EXPECT_EQ(r.plays.front().seat, 3);
  EXPECT_EQ(r.plays.size(), 12u);
  EXPECT_EQ(table.dealer(), 3);
}

TEST(Table, LoneStayerTakesAllTricks) {
  Table table = scripted_table({false, true, false, false}, 0);
  const HandRecord r = table.play_hand();
  EXPECT_TRUE(r.plays.empty());
  EXPECT_EQ(r.tricks_won, (std::array<int, 4>{0, 3, 0, 0}));
  EXPECT_EQ(r.settlement.deltas, (std::array<int, 4>{-3, 3, 0, 0}));
  EXPECT_NO_THROW(replay_hand(r));
  auto& agent = static_cast<ScriptedAgent&>(table.agent(1));
  EXPECT_EQ(agent.outcomes.back(), Outcome::kWinThree);
}

TEST(Table, AllFoldIsVoidAndDealerDealsAgain) {
  Table table = scripted_table({false, false, false, false}, 1);
  const HandRecord r = table.play_hand();
  EXPECT_TRUE(r.void_hand());
  EXPECT_EQ(r.settlement.deltas, (std::array<int, 4>{0, 0, 0, 0}));
  EXPECT_EQ(table.dealer(), 1);
  auto& agent = static_cast<ScriptedAgent&>(table.agent(0));
  EXPECT_EQ(agent.outcomes.back(), Outcome::kFold);
}

TEST(Table, StalledSessionThrows) {
  Table table = scripted_table({false, false, false, false});
  EXPECT_THROW(run_session(table, 1), std::runtime_error);
}

TEST(Table, ReplayDetectsTampering) {
  Table table(random_config(8));
  HandRecord r = table.play_hand();
  ASSERT_FALSE(r.plays.empty());
  r.settlement.deltas[0] += 1;
  EXPECT_THROW(replay_hand(r), std::runtime_error);
  HandRecord r2 = table.play_hand();
  std::swap(r2.plays[0], r2.plays[1]);
  EXPECT_THROW(replay_hand(r2), std::runtime_error);
}

TEST(Session, CountsNonVoidHandsAndCumulative) {
  Table table(random_config(4));
  const SessionLog log = run_session(table, 100);
  EXPECT_EQ(log.hands.size(), 100u);
  std::array<int, 4> sum{};
  for (std::size_t i = 0; i < log.hands.size(); ++i) {
    for (int s = 0; s < 4; ++s) sum[s] += log.hands[i].settlement.deltas[s];
    EXPECT_EQ(log.cumulative[i], sum);
    EXPECT_EQ(log.hands[i].hand_index, std::int64_t(i));
  }
  EXPECT_EQ(log.totals(), sum);
  EXPECT_THROW(run_session(table, 0), std::invalid_argument);
}

TEST(Session, SameSeedSameLog) {
  auto run = [] {
    TableConfig c = td_config(77);
    c.seats[0].params.courage_hands = 20;
    Table table(c);
    return run_session(table, 300);
  };
  const SessionLog a = run(), b = run();
  EXPECT_EQ(session_csv(a), session_csv(b));
  ASSERT_EQ(a.hands.size(), b.hands.size());
  for (std::size_t i = 0; i < a.hands.size(); ++i) {
    EXPECT_EQ(a.hands[i].plays, b.hands[i].plays);
    for (int s = 0; s < 4; ++s) EXPECT_EQ(a.hands[i].knocks[s].y, b.hands[i].knocks[s].y);
  }
  TableConfig c = td_config(78);
  Table other(c);
  EXPECT_NE(session_csv(run_session(other, 300)), session_csv(a));
}

constexpr const char* kSpecText =
    "# comment line\n"
    "4D 3C 5S   # seat 0\n"
    "2H 6C 3S\n"
    "\n"
    "7D AS 6H\n"
    "AD KD JC\n"
    "2D\n";

TEST(Predealt, ParseAndFormat) {
  std::istringstream in(kSpecText);
  const PredealtSpec spec = parse_predealt(in);
  EXPECT_EQ(spec.hands[0][0], parse_card("4D"));
  EXPECT_EQ(spec.hands[3][2], parse_card("JC"));
  EXPECT_EQ(spec.trump_card, parse_card("2D"));
  std::istringstream again(format_predealt(spec));
  const PredealtSpec round = parse_predealt(again);
  EXPECT_EQ(round.hands, spec.hands);
  EXPECT_EQ(round.trump_card, spec.trump_card);
}

TEST(Predealt, RejectsMalformedFiles) {
  std::istringstream dup("4D 3C 5S\n4D 6C 3S\n7D AS 6H\nAD KD JC\n2D\n");
  EXPECT_THROW(parse_predealt(dup), std::invalid_argument);
  std::istringstream short_line("4D 3C\n2H 6C 3S\n7D AS 6H\nAD KD JC\n2D\n");
  EXPECT_THROW(parse_predealt(short_line), std::invalid_argument);
  std::istringstream missing_trump("4D 3C 5S\n2H 6C 3S\n7D AS 6H\nAD KD JC\n");
  EXPECT_THROW(parse_predealt(missing_trump), std::invalid_argument);
  std::istringstream bad_card("4D 3C 9S\n2H 6C 3S\n7D AS 6H\nAD KD JC\n2D\n");
  EXPECT_THROW(parse_predealt(bad_card), std::invalid_argument);
  EXPECT_THROW(load_predealt("/nonexistent/deal.txt"), std::invalid_argument);
}

TEST(Predealt, ShippedReconstructionLoads) {
  const PredealtSpec spec = load_predealt(LERPA_DATA_DIR "/fig11_reconstruction.txt");
  EXPECT_EQ(spec.trump_card.suit, Suit::kDiamonds);
}

TEST(Predealt, SameCardsEveryRepeat) {
  std::istringstream in(kSpecText);
  const PredealtSpec spec = parse_predealt(in);
  Table table(random_config(9));
  const SessionLog log = run_predealt(table, spec, 25);
  EXPECT_TRUE(log.predealt);
  ASSERT_EQ(log.hands.size(), 25u);
  for (const HandRecord& r : log.hands) {
    EXPECT_EQ(r.hands, spec.hands);
    EXPECT_EQ(r.trump_card, spec.trump_card);
    EXPECT_EQ(r.dealer, kPredealtDealer);
    EXPECT_TRUE(r.predealt);
  }
  EXPECT_TRUE(run_predealt(table, spec, 0).hands.empty());
}

TEST(Predealt, FrozenGreedyAgentsRepeatExactly) {
  std::istringstream in(kSpecText);
  const PredealtSpec spec = parse_predealt(in);
  TableConfig c = td_config(10);
  for (auto& seat : c.seats) {
    seat.params.epsilon = 0.0;
    seat.params.courage_hands = 0;
  }
  Table table(c);
  for (int s = 0; s < 4; ++s) static_cast<TdAgent&>(table.agent(s)).set_frozen(true);
  const SessionLog log = run_predealt(table, spec, 20);
  for (const HandRecord& r : log.hands) {
    EXPECT_EQ(r.plays, log.hands[0].plays);
    EXPECT_EQ(r.settlement.deltas, log.hands[0].settlement.deltas);
    for (int s = 0; s < 4; ++s)
      EXPECT_EQ(r.knocks[s].knocked, log.hands[0].knocks[s].knocked);
  }
}

TEST(Table, ClonedAgentsAreDeepCopies) {
  Table table(td_config(12));
  run_session(table, 50);
  auto copies = table.clone_agents();
  const Mlp before = static_cast<TdAgent&>(*copies[0]).mlp();
  run_session(table, 50);
  EXPECT_EQ(static_cast<TdAgent&>(*copies[0]).mlp(), before);
  EXPECT_NE(static_cast<TdAgent&>(table.agent(0)).mlp(), before);
}

TEST(Table, RejectsBadConstruction) {
  TableConfig c = random_config(1);
  c.dealer_start = 4;
  EXPECT_THROW(Table{c}, std::invalid_argument);
  std::array<std::unique_ptr<Agent>, 4> agents;
  EXPECT_THROW(Table(std::move(agents), {"a", "b", "c", "d"}, 1), std::invalid_argument);
}

}  // namespace
}  // namespace lerpa
