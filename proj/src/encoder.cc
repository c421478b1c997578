#include "lerpa/encoder.h"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace lerpa {
namespace {

constexpr int kHandOffset = 0;
constexpr int kPlayedOffset = kHandOffset + kHandSize * kHandCardBits;
constexpr int kStatusOffset = kPlayedOffset + kPlayedSlots * kPlayedCardBits;
constexpr int kWinnerOffset = kStatusOffset + (kNumSeats - 1) * kStatusBits;
static_assert(kWinnerOffset + kMaxCompletedTricks * kWinnerBits ==
              kObservationSize);

template <std::size_t N>
void write_bits(std::array<std::uint8_t, N>& out, int offset, int width,
                unsigned value) {
  for (int b = 0; b < width; ++b) {
    out[offset + b] = (value >> (width - 1 - b)) & 1U;
  }
}

}  // namespace

const std::vector<LayoutField>& encoding_layout() {
  static const std::vector<LayoutField> layout = [] {
    std::vector<LayoutField> fields;
    static constexpr std::string_view kHandNames[] = {
        "hand_card_0", "hand_card_1", "hand_card_2"};
    static constexpr std::string_view kPlayedNames[] = {
        "played_0", "played_1", "played_2", "played_3",
        "played_4", "played_5", "played_6", "played_7"};
    static constexpr std::string_view kStatusNames[] = {
        "opponent_1", "opponent_2", "opponent_3"};
    static constexpr std::string_view kWinnerNames[] = {"trick_winner_1",
                                                        "trick_winner_2"};
    for (int i = 0; i < kHandSize; ++i) {
      fields.push_back({kHandNames[i], kHandOffset + i * kHandCardBits,
                        kHandCardBits});
    }
    for (int i = 0; i < kPlayedSlots; ++i) {
      fields.push_back({kPlayedNames[i], kPlayedOffset + i * kPlayedCardBits,
                        kPlayedCardBits});
    }
    for (int i = 0; i < kNumSeats - 1; ++i) {
      fields.push_back(
          {kStatusNames[i], kStatusOffset + i * kStatusBits, kStatusBits});
    }
    for (int i = 0; i < kMaxCompletedTricks; ++i) {
      fields.push_back(
          {kWinnerNames[i], kWinnerOffset + i * kWinnerBits, kWinnerBits});
    }
    return fields;
  }();
  return layout;
}

SuitClassMap classify_hand_suits(CardSet hand, Suit trump) {
  SuitClassMap classes{};
  struct Singleton {
    Suit suit;
    int ordinal;
  };
  std::vector<Singleton> singletons;
  for (Suit s : kAllSuits) {
    const CardSet held = hand.of_suit(s);
    if (held.empty()) continue;
    if (s == trump) {
      classes[static_cast<int>(s)] = HandSuitClass::kTrump;
    } else if (held.size() >= 2) {
      classes[static_cast<int>(s)] = HandSuitClass::kMultipleNonTrump;
    } else {
      singletons.push_back({s, ordinal(held.cards().front().rank)});
    }
  }
  std::sort(singletons.begin(), singletons.end(),
            [](const Singleton& a, const Singleton& b) {
              if (a.ordinal != b.ordinal) return a.ordinal > b.ordinal;
              return static_cast<int>(a.suit) > static_cast<int>(b.suit);
            });
  constexpr HandSuitClass kOrder[] = {HandSuitClass::kHighestSingleton,
                                      HandSuitClass::kSecondSingleton,
                                      HandSuitClass::kThirdSingleton};
  for (std::size_t i = 0; i < singletons.size(); ++i) {
    classes[static_cast<int>(singletons[i].suit)] = kOrder[i];
  }
  return classes;
}

std::array<std::uint8_t, kHandSize * kHandCardBits> encode_hand(CardSet hand,
                                                                Suit trump) {
  if (hand.size() > kHandSize) {
    throw std::logic_error("encode_hand: more than three cards");
  }
  const SuitClassMap classes = classify_hand_suits(hand, trump);
  struct Entry {
    int suit_class;
    int ordinal;
  };
  std::vector<Entry> entries;
  for (Card c : hand.cards()) {
    entries.push_back({static_cast<int>(*classes[static_cast<int>(c.suit)]),
                       ordinal(c.rank)});
  }
  std::sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) {
    if (a.suit_class != b.suit_class) return a.suit_class < b.suit_class;
    return a.ordinal > b.ordinal;
  });
  std::array<std::uint8_t, kHandSize * kHandCardBits> out{};
  for (std::size_t i = 0; i < entries.size(); ++i) {
    const int base = static_cast<int>(i) * kHandCardBits;
    write_bits(out, base, 3, static_cast<unsigned>(entries[i].suit_class));
    write_bits(out, base + 3, 4, static_cast<unsigned>(entries[i].ordinal));
  }
  return out;
}

PlayedCardCode classify_played_card(Card card, CardSet my_hand, Suit trump) {
  const CardSet same = my_hand.of_suit(card.suit);
  PlayedCardCode code{};
  if (same.empty()) {
    code.suit_class = PlayedSuitClass::kVoid;
  } else {
    const SuitClassMap classes = classify_hand_suits(my_hand, trump);
    code.suit_class = static_cast<PlayedSuitClass>(
        static_cast<int>(*classes[static_cast<int>(card.suit)]) + 1);
  }
  if (card == ace_of(trump)) {
    code.value_class = PlayedValueClass::kAceOfTrumps;
  } else if (same.empty()) {
    code.value_class = PlayedValueClass::kVoidMember;
  } else {
    int higher_held = 0;
    for (Card c : same.cards()) {
      if (ordinal(c.rank) > ordinal(card.rank)) ++higher_held;
    }
    if (higher_held == same.size()) {
      code.value_class = PlayedValueClass::kLowerThanAny;
    } else {
      code.value_class = static_cast<PlayedValueClass>(higher_held);
    }
  }
  return code;
}

std::array<std::uint8_t, kPlayedCardBits> encode_played_card(Card card,
                                                             CardSet my_hand,
                                                             Suit trump) {
  const PlayedCardCode code = classify_played_card(card, my_hand, trump);
  std::array<std::uint8_t, kPlayedCardBits> out{};
  write_bits(out, 0, 3, static_cast<unsigned>(code.suit_class));
  write_bits(out, 3, 3, static_cast<unsigned>(code.value_class));
  return out;
}

std::array<double, kObservationSize> Observation::as_input() const {
  std::array<double, kObservationSize> x{};
  for (int i = 0; i < kObservationSize; ++i) x[i] = bits_[i];
  return x;
}

void Observation::set_field(int offset, int width, unsigned value) {
  write_bits(bits_, offset, width, value);
}

unsigned Observation::field(int offset, int width) const {
  unsigned v = 0;
  for (int b = 0; b < width; ++b) v = (v << 1) | bits_[offset + b];
  return v;
}

Observation encode_observation(const GameView& view) {
  if (view.played.size() > kPlayedSlots) {
    throw std::logic_error("encode_observation: " +
                           std::to_string(view.played.size()) +
                           " played cards");
  }
  if (view.trick_winners.size() > kMaxCompletedTricks) {
    throw std::logic_error("encode_observation: too many completed tricks");
  }
  Observation obs;
  const auto hand_bits = encode_hand(view.hand, view.trump);
  for (int i = 0; i < static_cast<int>(hand_bits.size()); ++i) {
    obs.set_field(kHandOffset + i, 1, hand_bits[i]);
  }
  for (std::size_t i = 0; i < view.played.size(); ++i) {
    const PlayedCardCode code =
        classify_played_card(view.played[i].card, view.hand, view.trump);
    const int base = kPlayedOffset + static_cast<int>(i) * kPlayedCardBits;
    obs.set_field(base, 3, static_cast<unsigned>(code.suit_class));
    obs.set_field(base + 3, 3, static_cast<unsigned>(code.value_class));
  }
  for (int rel = 1; rel < kNumSeats; ++rel) {
    const SeatStatus st = view.status[next_seat(view.seat, rel)];
    obs.set_field(kStatusOffset + (rel - 1) * kStatusBits, kStatusBits,
                  static_cast<unsigned>(st));
  }
  for (std::size_t t = 0; t < view.trick_winners.size(); ++t) {
    obs.set_field(kWinnerOffset + static_cast<int>(t) * kWinnerBits,
                  kWinnerBits,
                  1U + static_cast<unsigned>(
                           relative_seat(view.seat, view.trick_winners[t])));
  }
  return obs;
}

}  // namespace lerpa
