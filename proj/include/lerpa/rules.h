#ifndef LERPA_RULES_H_
#define LERPA_RULES_H_

// Lerpa rules: 40-card deck, 3-card hands, four seats, trump from the card
// flipped after dealing. The dealer antes 3 chips each hand; stayers are paid
// one chip per trick won and a stayer who wins nothing ("Lerpa'd") pays 3.

#include <array>
#include <optional>
#include <vector>

#include "lerpa/cards.h"
#include "lerpa/rng.h"

namespace lerpa {

inline constexpr int kAnte = 3;
inline constexpr int kLerpaPenalty = 3;
inline constexpr int kTricksPerHand = 3;

using Hand = std::array<Card, kHandSize>;

// Seats are numbered 0..3 clockwise.
constexpr int next_seat(int seat, int steps = 1) {
  return (seat + steps) % kNumSeats;
}

// All 40 cards in canonical order (clubs, diamonds, hearts, spades; each
// suit from 2 up to A in rank order).
std::vector<Card> build_deck();

struct Deal {
  std::array<Hand, kNumSeats> hands;  // indexed by seat
  Card trump_card;
  std::vector<Card> remaining;

  Suit trump() const { return trump_card.suit; }
};

// Shuffles a fresh deck, deals three cards to each seat and flips the next
// card for trumps.
Deal deal(Rng& rng);

// Throws std::invalid_argument unless the four hands and trump card are 13
// distinct cards.
void validate_deal(const std::array<Hand, kNumSeats>& hands, Card trump_card);

CardSet to_card_set(const Hand& hand);

struct Play {
  int seat = 0;
  Card card;
  friend bool operator==(const Play&, const Play&) = default;
};

struct TrickState {
  std::optional<Suit> led_suit;
  std::vector<Play> plays;

  bool leading() const { return plays.empty(); }
  // Appends a play; the first play fixes the led suit.
  void add(int seat, Card card);
};

constexpr Card ace_of(Suit s) { return Card{s, Rank::kAce}; }

// Cards the seat may play. Must follow the led suit when able; otherwise any
// card. If the Ace of trumps is among the playable cards it is the only legal
// play. Throws std::logic_error on an empty hand.
CardSet legal_moves(CardSet hand, const TrickState& trick, Suit trump);

// Seat that wins a trick of `expected_plays` cards. Throws std::logic_error if
// the trick is incomplete.
int resolve_trick(const TrickState& trick, Suit trump, int expected_plays);

// True when `challenger` beats `incumbent` given the led suit and trumps.
bool beats(Card challenger, Card incumbent, Suit led, Suit trump);

struct Settlement {
  std::array<int, kNumSeats> deltas{};
  std::array<bool, kNumSeats> lerpad{};
  bool void_hand = false;

  int lerpad_count() const;
  int total() const;
};

// Chip settlement for one hand. Tricks of stayers must sum to 3 and folded
// seats must have 0 tricks; if nobody stayed the hand is void and every delta
// is 0. Throws std::logic_error on inconsistent counts.
Settlement settle_hand(const std::array<bool, kNumSeats>& stays,
                       const std::array<int, kNumSeats>& tricks_won,
                       int dealer);

// Terminal result of a hand from one seat's point of view.
enum class Outcome { kWinThree, kWinTwo, kWinOne, kLerpad, kFold };

Outcome outcome_for(bool stayed, int tricks_won);
int outcome_chips(Outcome o);  // 3, 2, 1, -3, 0

}  // namespace lerpa

#endif  // LERPA_RULES_H_
