#ifndef LERPA_ARENA_H_
#define LERPA_ARENA_H_

// The table: seats four agents, deals, runs the knock round and the card
// play, settles chips and hands each agent its outcome.

#include <array>
#include <cstdint>
#include <iosfwd>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "lerpa/rules.h"
#include "lerpa/td_agent.h"

namespace lerpa {

enum class AgentKind { kTd, kRandom };

struct SeatConfig {
  std::string id;
  AgentKind kind = AgentKind::kTd;
  AgentParams params;
};

struct TableConfig {
  std::array<SeatConfig, kNumSeats> seats;
  std::uint64_t seed = 1;
  int dealer_start = 0;
};

struct KnockRecord {
  bool knocked = false;
  bool forced = false;
  bool exploratory = false;
  std::optional<OutcomeDistribution> y;  // evaluated stay prediction
};

struct CardStageRecord {
  int seat = 0;
  Stage stage = Stage::kFirstCard;
  Card card;
  bool forced = false;
  bool exploratory = false;
  std::optional<OutcomeDistribution> y;
};

struct HandRecord {
  std::int64_t hand_index = 0;
  int dealer = 0;
  bool predealt = false;
  std::array<Hand, kNumSeats> hands{};
  Card trump_card;
  std::array<KnockRecord, kNumSeats> knocks{};
  std::vector<int> knock_order;  // seats in the order they decided
  std::vector<Play> plays;
  std::vector<int> trick_winners;
  std::array<int, kNumSeats> tricks_won{};
  std::vector<CardStageRecord> card_stages;
  Settlement settlement;

  bool void_hand() const { return settlement.void_hand; }
  Suit trump() const { return trump_card.suit; }
};

struct SessionLog {
  std::array<std::string, kNumSeats> agent_ids;
  bool predealt = false;
  std::vector<HandRecord> hands;
  std::vector<std::array<int, kNumSeats>> cumulative;  // after each record
  int void_hands = 0;

  void append(HandRecord rec);
  std::array<int, kNumSeats> totals() const;
};

// Four hands (seats clockwise from the dealer's left, dealer last) and the
// trump card, dealt identically on every repeat.
struct PredealtSpec {
  std::array<Hand, kNumSeats> hands{};
  Card trump_card;
};

// Seat of the dealer during predealt play; line i of a predealt file is
// seat i.
inline constexpr int kPredealtDealer = kNumSeats - 1;

// Predealt text file: four lines of three card tokens, then one line with the
// trump card. Throws std::invalid_argument on malformed input or duplicates.
PredealtSpec parse_predealt(std::istream& in);
PredealtSpec load_predealt(const std::string& path);
std::string format_predealt(const PredealtSpec& spec);
PredealtSpec random_predealt(Rng& rng);

class Table {
 public:
  explicit Table(const TableConfig& config);
  Table(std::array<std::unique_ptr<Agent>, kNumSeats> agents,
        std::array<std::string, kNumSeats> ids, std::uint64_t seed,
        int dealer_start = 0);

  // Deals a fresh hand and plays it. A void hand (everybody folded) is
  // returned as such and the same dealer deals again next time.
  HandRecord play_hand();
  HandRecord play_predealt(const PredealtSpec& spec);

  Agent& agent(int seat) { return *agents_[seat]; }
  const std::array<std::string, kNumSeats>& ids() const { return ids_; }
  int dealer() const { return dealer_; }

  // Deep copies of the seated agents.
  std::array<std::unique_ptr<Agent>, kNumSeats> clone_agents() const;
  // Moves the agents out; the table is unusable afterwards.
  std::array<std::unique_ptr<Agent>, kNumSeats> release_agents();

 private:
  HandRecord play_deal(const std::array<Hand, kNumSeats>& hands,
                       Card trump_card, int dealer);

  std::array<std::unique_ptr<Agent>, kNumSeats> agents_;
  std::array<std::string, kNumSeats> ids_;
  Rng rng_;
  int dealer_;
  std::int64_t next_index_ = 0;
};

std::unique_ptr<Agent> make_agent(const SeatConfig& seat, std::uint64_t seed);

// Plays until `n_hands` non-void hands have been recorded; void hands are
// logged as well. Throws std::runtime_error after 100000 consecutive voids.
SessionLog run_session(Table& table, std::int64_t n_hands);

// Plays the predealt deal `repeats` times with the dealer fixed. Void
// repeats count toward `repeats`.
SessionLog run_predealt(Table& table, const PredealtSpec& spec,
                        std::int64_t repeats);

// Re-simulates a record under the rules: legality of every play, trick
// winners and settlement. Throws std::runtime_error on any mismatch.
void replay_hand(const HandRecord& rec);

}  // namespace lerpa

#endif  // LERPA_ARENA_H_
