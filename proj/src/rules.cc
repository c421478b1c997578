#include "lerpa/rules.h"

#include <numeric>
#include <stdexcept>
#include <string>
#include <utility>

namespace lerpa {

std::vector<Card> build_deck() {
  std::vector<Card> deck;
  deck.reserve(kDeckSize);
  for (int i = 0; i < kDeckSize; ++i) deck.push_back(Card::from_index(i));
  return deck;
}

Deal deal(Rng& rng) {
  std::vector<Card> deck = build_deck();
  // Fisher-Yates over our own uniform draws keeps deals platform-stable.
  for (std::size_t i = deck.size() - 1; i > 0; --i) {
    std::swap(deck[i], deck[rng.below(i + 1)]);
  }
  Deal d;
  std::size_t next = 0;
  for (int seat = 0; seat < kNumSeats; ++seat) {
    for (int j = 0; j < kHandSize; ++j) d.hands[seat][j] = deck[next++];
  }
  d.trump_card = deck[next++];
  d.remaining.assign(deck.begin() + static_cast<std::ptrdiff_t>(next),
                     deck.end());
  return d;
}

void validate_deal(const std::array<Hand, kNumSeats>& hands, Card trump_card) {
  CardSet seen;
  auto add = [&](Card c) {
    if (seen.contains(c)) {
      throw std::invalid_argument("duplicate card " + to_string(c) +
                                  " in deal");
    }
    seen.insert(c);
  };
  for (const Hand& h : hands) {
    for (Card c : h) add(c);
  }
  add(trump_card);
}

CardSet to_card_set(const Hand& hand) {
  CardSet s;
  for (Card c : hand) s.insert(c);
  return s;
}

void TrickState::add(int seat, Card card) {
  if (plays.empty()) led_suit = card.suit;
  plays.push_back(Play{seat, card});
}

CardSet legal_moves(CardSet hand, const TrickState& trick, Suit trump) {
  if (hand.empty()) throw std::logic_error("legal_moves: empty hand");
  CardSet candidates = hand;
  if (!trick.leading()) {
    const CardSet following = hand.of_suit(*trick.led_suit);
    if (!following.empty()) candidates = following;
  }
  const Card ace = ace_of(trump);
  if (candidates.contains(ace)) return CardSet{ace};
  return candidates;
}

bool beats(Card challenger, Card incumbent, Suit led, Suit trump) {
  const bool ct = challenger.suit == trump;
  const bool it = incumbent.suit == trump;
  if (ct != it) return ct;
  if (challenger.suit == incumbent.suit) {
    return ordinal(challenger.rank) > ordinal(incumbent.rank);
  }
  // Different non-trump suits: only a card of the led suit can win.
  return challenger.suit == led && incumbent.suit != led;
}

int resolve_trick(const TrickState& trick, Suit trump, int expected_plays) {
  if (trick.plays.empty() ||
      static_cast<int>(trick.plays.size()) != expected_plays) {
    throw std::logic_error("resolve_trick: incomplete trick (" +
                           std::to_string(trick.plays.size()) + " of " +
                           std::to_string(expected_plays) + " plays)");
  }
  const Suit led = *trick.led_suit;
  Play best = trick.plays.front();
  for (std::size_t i = 1; i < trick.plays.size(); ++i) {
    if (beats(trick.plays[i].card, best.card, led, trump)) best = trick.plays[i];
  }
  return best.seat;
}

int Settlement::lerpad_count() const {
  int n = 0;
  for (bool b : lerpad) n += b ? 1 : 0;
  return n;
}

int Settlement::total() const {
  return std::accumulate(deltas.begin(), deltas.end(), 0);
}

Settlement settle_hand(const std::array<bool, kNumSeats>& stays,
                       const std::array<int, kNumSeats>& tricks_won,
                       int dealer) {
  int stayers = 0;
  int total_tricks = 0;
  for (int s = 0; s < kNumSeats; ++s) {
    if (tricks_won[s] < 0) throw std::logic_error("settle_hand: negative tricks");
    if (!stays[s] && tricks_won[s] != 0) {
      throw std::logic_error("settle_hand: folded seat won tricks");
    }
    stayers += stays[s] ? 1 : 0;
    total_tricks += tricks_won[s];
  }
  Settlement out;
  if (stayers == 0) {
    out.void_hand = true;
    return out;
  }
  if (total_tricks != kTricksPerHand) {
    throw std::logic_error("settle_hand: stayers' tricks sum to " +
                           std::to_string(total_tricks));
  }
  for (int s = 0; s < kNumSeats; ++s) {
    if (!stays[s]) continue;
    if (tricks_won[s] == 0) {
      out.deltas[s] = -kLerpaPenalty;
      out.lerpad[s] = true;
    } else {
      out.deltas[s] = tricks_won[s];
    }
  }
  out.deltas[dealer] -= kAnte;
  return out;
}

Outcome outcome_for(bool stayed, int tricks_won) {
  if (!stayed) return Outcome::kFold;
  switch (tricks_won) {
    case 0: return Outcome::kLerpad;
    case 1: return Outcome::kWinOne;
    case 2: return Outcome::kWinTwo;
    case 3: return Outcome::kWinThree;
  }
  throw std::logic_error("outcome_for: bad trick count");
}

int outcome_chips(Outcome o) {
  switch (o) {
    case Outcome::kWinThree: return 3;
    case Outcome::kWinTwo: return 2;
    case Outcome::kWinOne: return 1;
    case Outcome::kLerpad: return -3;
    case Outcome::kFold: return 0;
  }
  return 0;
}

}  // namespace lerpa
