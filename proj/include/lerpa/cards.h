#ifndef LERPA_CARDS_H_
#define LERPA_CARDS_H_

#include <array>
#include <bit>
#include <compare>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace lerpa {

inline constexpr int kNumSuits = 4;
inline constexpr int kNumRanks = 10;
inline constexpr int kDeckSize = kNumSuits * kNumRanks;
inline constexpr int kNumSeats = 4;
inline constexpr int kHandSize = 3;

// Enum values double as the fixed physical suit order used for tie-breaks:
// Spades > Hearts > Diamonds > Clubs.
enum class Suit : std::uint8_t { kClubs = 0, kDiamonds, kHearts, kSpades };

inline constexpr std::array<Suit, kNumSuits> kAllSuits = {
    Suit::kClubs, Suit::kDiamonds, Suit::kHearts, Suit::kSpades};

// Enum values are the rank ordinals: 2 < 3 < 4 < 5 < 6 < J < Q < K < 7 < A.
// The deck has no 8, 9 or 10.
enum class Rank : std::uint8_t {
  kTwo = 0,
  kThree,
  kFour,
  kFive,
  kSix,
  kJack,
  kQueen,
  kKing,
  kSeven,
  kAce,
};

constexpr int ordinal(Rank r) { return static_cast<int>(r); }

struct Card {
  Suit suit = Suit::kClubs;
  Rank rank = Rank::kTwo;

  // Canonical index: suit-major, ordinal ascending within a suit.
  constexpr int index() const {
    return static_cast<int>(suit) * kNumRanks + ordinal(rank);
  }
  static constexpr Card from_index(int i) {
    return Card{static_cast<Suit>(i / kNumRanks),
                static_cast<Rank>(i % kNumRanks)};
  }

  friend constexpr bool operator==(Card a, Card b) {
    return a.index() == b.index();
  }
  friend constexpr auto operator<=>(Card a, Card b) {
    return a.index() <=> b.index();
  }
};

// Two-character text form: rank in {2,3,4,5,6,7,J,Q,K,A}, suit in {C,D,H,S}.
std::string to_string(Card c);
char suit_char(Suit s);
Card parse_card(std::string_view token);  // throws std::invalid_argument
Suit parse_suit(char c);                  // throws std::invalid_argument

// A set of cards from the 40-card deck, stored as a bitmask over
// Card::index(). Iteration is in canonical order.
class CardSet {
 public:
  constexpr CardSet() = default;
  constexpr explicit CardSet(std::uint64_t bits) : bits_(bits) {}
  CardSet(std::initializer_list<Card> cards) {
    for (Card c : cards) insert(c);
  }

  constexpr bool contains(Card c) const { return (bits_ >> c.index()) & 1U; }
  constexpr void insert(Card c) { bits_ |= std::uint64_t{1} << c.index(); }
  constexpr void erase(Card c) { bits_ &= ~(std::uint64_t{1} << c.index()); }
  constexpr int size() const { return std::popcount(bits_); }
  constexpr bool empty() const { return bits_ == 0; }
  constexpr std::uint64_t bits() const { return bits_; }

  CardSet of_suit(Suit s) const {
    const std::uint64_t mask = ((std::uint64_t{1} << kNumRanks) - 1)
                               << (static_cast<int>(s) * kNumRanks);
    return CardSet(bits_ & mask);
  }

  std::vector<Card> cards() const;

  friend constexpr bool operator==(CardSet, CardSet) = default;
  friend constexpr CardSet operator|(CardSet a, CardSet b) {
    return CardSet(a.bits_ | b.bits_);
  }
  friend constexpr CardSet operator&(CardSet a, CardSet b) {
    return CardSet(a.bits_ & b.bits_);
  }

 private:
  std::uint64_t bits_ = 0;
};

std::string to_string(CardSet s);

}  // namespace lerpa

#endif  // LERPA_CARDS_H_
