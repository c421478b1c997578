#include <sstream>
#include <stdexcept>
#include <string>

#include <gtest/gtest.h>

#include "lerpa/arena.h"
#include "lerpa/detectors.h"

namespace lerpa {
namespace {

constexpr int kRandy = 0, kRonald = 1, kRoderick = 2, kAlden = 3;

// One predealt record per pattern; "K"/"F" per seat, lower case marks an
// exploratory decision.
SessionLog knock_log(const std::vector<std::string>& patterns) {
  SessionLog log;
  log.predealt = true;
  log.agent_ids = {"Randy", "Ronald", "Roderick", "Alden"};
  for (std::size_t i = 0; i < patterns.size(); ++i) {
    HandRecord r;
    r.hand_index = std::int64_t(i);
    r.dealer = kPredealtDealer;
    r.predealt = true;
    r.knock_order = {0, 1, 2, 3};
    for (int s = 0; s < 4; ++s) {
      const char c = patterns[i][s];
      r.knocks[s].knocked = c == 'K' || c == 'k';
      r.knocks[s].exploratory = c == 'k' || c == 'f';
    }
    log.append(r);
  }
  return log;
}

std::vector<std::string> repeat(const std::string& p, int n) {
  return std::vector<std::string>(n, p);
}

std::vector<std::string> concat(std::initializer_list<std::vector<std::string>> parts) {
  std::vector<std::string> out;
  for (const auto& p : parts) out.insert(out.end(), p.begin(), p.end());
  return out;
}

TEST(Bluffs, NarrativeLogGivesOneEvent) {
  const SessionLog log = knock_log(concat({repeat("KFFK", 12), repeat("FFKK", 10)}));
  const auto events = detect_bluffs(log);
  ASSERT_EQ(events.size(), 1u);
  EXPECT_EQ(events[0], (BluffEvent{kRandy, kRoderick, 0, 12, 12}));
}

TEST(Bluffs, DelayedReentryWithinWindow) {
  const SessionLog log = knock_log(
      concat({repeat("KFFK", 5), repeat("FFFK", 3), repeat("FFKK", 2)}));
  const auto events = detect_bluffs(log, 5);
  ASSERT_EQ(events.size(), 1u);
  EXPECT_EQ(events[0].switch_index, 5);
  EXPECT_EQ(events[0].reentry_index, 8);
}

TEST(Bluffs, NoChangesNoEvents) {
  EXPECT_TRUE(detect_bluffs(knock_log(repeat("KFFK", 40))).empty());
  EXPECT_TRUE(detect_bluffs(knock_log(repeat("KKKK", 40))).empty());
}

TEST(Bluffs, LateReentryIsNotABluff) {
  const int k = kDefaultBluffWindow;
  const SessionLog log = knock_log(concat(
      {repeat("KFFK", 10), repeat("FFFK", k + 10), repeat("FFKK", 5)}));
  EXPECT_TRUE(detect_bluffs(log).empty());
  EXPECT_EQ(detect_bluffs(log, k + 10).size(), 1u);
}

TEST(Bluffs, ReentryExactlyAtWindowEdge) {
  const SessionLog log = knock_log(
      concat({repeat("KFFK", 4), repeat("FFFK", 5), repeat("FFKK", 1)}));
  // Switch at 4, re-entry at 9 = switch + 5.
  EXPECT_EQ(detect_bluffs(log, 5).size(), 1u);
  EXPECT_TRUE(detect_bluffs(log, 4).empty());
}

TEST(Bluffs, VictimMustDecideAfterBluffer) {
  // Roderick knocks and Randy folds, then Roderick quits and Randy comes in;
  // Randy had already decided before seeing Roderick's knock.
  const SessionLog log = knock_log(concat({repeat("FFKK", 10), repeat("KFFK", 5)}));
  EXPECT_TRUE(detect_bluffs(log).empty());
}

TEST(Bluffs, ExploratoryDecisionsDoNotCount) {
  // The bluffer's only fold is exploratory.
  const SessionLog a =
      knock_log(concat({repeat("KFFK", 10), {"fFKK"}, repeat("KFFK", 10)}));
  EXPECT_TRUE(detect_bluffs(a).empty());
  // The victim's only knock is exploratory.
  const SessionLog b =
      knock_log(concat({repeat("KFFK", 10), {"FFkK"}, repeat("FFFK", 10)}));
  EXPECT_TRUE(detect_bluffs(b).empty());
  // An exploratory blip inside the epoch neither ends nor breaks it.
  const SessionLog c = knock_log(
      concat({repeat("KFFK", 5), {"KFkK"}, repeat("KFFK", 5), repeat("FFKK", 2)}));
  const auto events = detect_bluffs(c);
  ASSERT_EQ(events.size(), 1u);
  EXPECT_EQ(events[0].epoch_start, 0);
  EXPECT_EQ(events[0].switch_index, 11);
}

TEST(Bluffs, SeveralVictims) {
  const SessionLog log = knock_log(concat({repeat("KFFK", 6), repeat("FKKK", 3)}));
  const auto events = detect_bluffs(log);
  ASSERT_EQ(events.size(), 2u);
  EXPECT_EQ(events[0].victim, kRonald);
  EXPECT_EQ(events[1].victim, kRoderick);
}

TEST(Bluffs, RejectsFreePlayLogs) {
  SessionLog log = knock_log(repeat("KKKK", 3));
  log.predealt = false;
  EXPECT_THROW(detect_bluffs(log), std::invalid_argument);
  log.predealt = true;
  EXPECT_THROW(detect_bluffs(log, -1), std::invalid_argument);
  EXPECT_EQ(kAlden, 3);
}

SessionLog payout_log(const std::vector<int>& dealer_deltas) {
  SessionLog log;
  log.predealt = true;
  for (std::size_t i = 0; i < dealer_deltas.size(); ++i) {
    HandRecord r;
    r.hand_index = std::int64_t(i);
    r.dealer = kPredealtDealer;
    for (int s = 0; s < 4; ++s) r.knocks[s].knocked = true;
    r.settlement.deltas = {1, 1, 1, dealer_deltas[i]};
    log.append(r);
  }
  return log;
}

TEST(Equilibrium, IdenticalHandsFireAtZero) {
  EXPECT_EQ(detect_equilibrium(payout_log(std::vector<int>(20, -6)), 10), 0);
}

TEST(Equilibrium, AlternatingPayoutsNeverSettle) {
  std::vector<int> d;
  for (int i = 0; i < 50; ++i) d.push_back(i % 2 ? -3 : -6);
  EXPECT_FALSE(detect_equilibrium(payout_log(d), 10).has_value());
}

TEST(Equilibrium, FirstStableWindow) {
  std::vector<int> d = {-3, -6, -3, -6};
  d.insert(d.end(), 5, -9);
  const SessionLog log = payout_log(d);
  EXPECT_EQ(detect_equilibrium(log, 5), 4);
  EXPECT_FALSE(detect_equilibrium(log, 6).has_value());
}

TEST(Equilibrium, DifferentPlaysBreakTheRun) {
  SessionLog log = payout_log(std::vector<int>(12, -6));
  log.hands[5].plays.push_back({0, parse_card("AS")});
  EXPECT_EQ(detect_equilibrium(log, 6), 6);
}

TEST(Equilibrium, DifferentKnocksBreakTheRun) {
  SessionLog log = payout_log(std::vector<int>(12, -6));
  log.hands[3].knocks[1].knocked = false;
  EXPECT_EQ(detect_equilibrium(log, 8), 4);
}

TEST(Equilibrium, WindowErrors) {
  const SessionLog log = payout_log(std::vector<int>(5, 0));
  EXPECT_THROW(detect_equilibrium(log, 1), std::invalid_argument);
  EXPECT_THROW(detect_equilibrium(log, 6), std::invalid_argument);
  EXPECT_NO_THROW(detect_equilibrium(log, 5));
}

TEST(Equilibrium, FrozenGreedyReplayIsImmediatelyConstant) {
  std::istringstream in("4D 3C 5S\n2H 6C 3S\n7D AS 6H\nAD KD JC\n2D\n");
  const PredealtSpec spec = parse_predealt(in);
  TableConfig c;
  for (int s = 0; s < 4; ++s) {
    c.seats[s] = {"T" + std::to_string(s), AgentKind::kTd, {}};
    c.seats[s].params.epsilon = 0.0;
  }
  c.seed = 31;
  Table table(c);
  for (int s = 0; s < 4; ++s) static_cast<TdAgent&>(table.agent(s)).set_frozen(true);
  EXPECT_EQ(detect_equilibrium(run_predealt(table, spec, 40), 30), 0);
}

}  // namespace
}  // namespace lerpa
