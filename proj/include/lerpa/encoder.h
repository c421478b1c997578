#ifndef LERPA_ENCODER_H_
#define LERPA_ENCODER_H_

// Binary observation seen by an agent at a decision point.
//
// Suits are not named directly. Each suit is classified by the role it plays
// in the agent's current holding (trump, multi-card side suit, or the rank of
// a singleton), and cards already played are described relative to the
// agent's own cards in that suit. Bit fields are written most significant bit
// first.
//
//   field               offset  width
//   hand_card_0..2       0..14   7 each   3 suit-class + 4 rank-ordinal bits
//   played_0..7         21..63   6 each   3 played-suit + 3 played-value bits
//   opponent_1..3       69..73   2 each   00 undecided, 01 knocked, 10 folded
//   trick_winner_1..2   75..78   3 each   0 none, else 1 + relative seat
//
// Opponents and trick winners use seats relative to the observer, counted
// clockwise (the observer is 0, the left-hand opponent is 1).

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "lerpa/cards.h"
#include "lerpa/rules.h"

namespace lerpa {

inline constexpr int kObservationSize = 81;
inline constexpr int kHandCardBits = 7;
inline constexpr int kPlayedCardBits = 6;
inline constexpr int kPlayedSlots = 8;
inline constexpr int kStatusBits = 2;
inline constexpr int kWinnerBits = 3;
inline constexpr int kMaxCompletedTricks = 2;

enum class HandSuitClass : std::uint8_t {
  kTrump = 0,
  kMultipleNonTrump = 1,
  kHighestSingleton = 2,
  kSecondSingleton = 3,
  kThirdSingleton = 4,
};

// Codes for played-card slots start at 1 so that an unplayed (all-zero) slot
// is distinguishable from any played card.
enum class PlayedSuitClass : std::uint8_t {
  kTrump = 1,
  kMultipleNonTrump = 2,
  kHighestSingleton = 3,
  kSecondSingleton = 4,
  kThirdSingleton = 5,
  kVoid = 6,
};

enum class PlayedValueClass : std::uint8_t {
  kHigherThanAll = 0,
  kHigherThanSecond = 1,
  kHigherThanThird = 2,
  kLowerThanAny = 3,
  kVoidMember = 4,
  kAceOfTrumps = 5,
};

enum class SeatStatus : std::uint8_t { kUndecided = 0, kKnocked = 1, kFolded = 2 };

struct LayoutField {
  std::string_view name;
  int offset;
  int width;
};

// Every field of the observation in offset order; offsets are disjoint and
// cover 0..80 exactly.
const std::vector<LayoutField>& encoding_layout();

using SuitClassMap = std::array<std::optional<HandSuitClass>, kNumSuits>;

// Classifies each held suit. Works for any non-empty holding of up to three
// cards; singletons of equal rank are ordered Spades > Hearts > Diamonds >
// Clubs.
SuitClassMap classify_hand_suits(CardSet hand, Suit trump);

// Hand cards sorted by suit class then descending rank, 7 bits each. Slots
// beyond the number of held cards are zero.
std::array<std::uint8_t, kHandSize * kHandCardBits> encode_hand(CardSet hand,
                                                                Suit trump);

struct PlayedCardCode {
  PlayedSuitClass suit_class;
  PlayedValueClass value_class;
};

PlayedCardCode classify_played_card(Card card, CardSet my_hand, Suit trump);
std::array<std::uint8_t, kPlayedCardBits> encode_played_card(Card card,
                                                             CardSet my_hand,
                                                             Suit trump);

// Everything an agent can see of the current hand.
struct GameView {
  int seat = 0;          // observer, absolute
  CardSet hand;          // cards still held
  Suit trump = Suit::kClubs;
  std::vector<Play> played;                 // all cards played so far, in order
  std::array<SeatStatus, kNumSeats> status{};  // absolute seats
  std::vector<int> trick_winners;              // absolute seats
};

class Observation {
 public:
  Observation() { bits_.fill(0); }

  std::uint8_t operator[](int i) const { return bits_[i]; }
  std::span<const std::uint8_t, kObservationSize> bits() const { return bits_; }
  std::array<double, kObservationSize> as_input() const;

  void set_field(int offset, int width, unsigned value);
  unsigned field(int offset, int width) const;

  friend bool operator==(const Observation&, const Observation&) = default;

 private:
  std::array<std::uint8_t, kObservationSize> bits_;
};

// Throws std::logic_error when the view holds more than 8 played cards or
// more than 2 completed tricks.
Observation encode_observation(const GameView& view);

constexpr int relative_seat(int observer, int seat) {
  return (seat - observer + kNumSeats) % kNumSeats;
}

}  // namespace lerpa

#endif  // LERPA_ENCODER_H_
