#include "lerpa/cards.h"

#include <stdexcept>

namespace lerpa {
namespace {

constexpr std::string_view kRankChars = "23456JQK7A";
constexpr std::string_view kSuitChars = "CDHS";

}  // namespace

char suit_char(Suit s) { return kSuitChars[static_cast<int>(s)]; }

std::string to_string(Card c) {
  return {kRankChars[ordinal(c.rank)], suit_char(c.suit)};
}

Suit parse_suit(char c) {
  const auto pos = kSuitChars.find(c);
  if (pos == std::string_view::npos) {
    throw std::invalid_argument(std::string("bad suit character '") + c + "'");
  }
  return static_cast<Suit>(pos);
}

Card parse_card(std::string_view token) {
  if (token.size() != 2) {
    throw std::invalid_argument("bad card token '" + std::string(token) + "'");
  }
  const auto r = kRankChars.find(token[0]);
  if (r == std::string_view::npos) {
    throw std::invalid_argument("bad card rank in '" + std::string(token) +
                                "'");
  }
  return Card{parse_suit(token[1]), static_cast<Rank>(r)};
}

std::vector<Card> CardSet::cards() const {
  std::vector<Card> out;
  out.reserve(size());
  for (std::uint64_t b = bits_; b != 0; b &= b - 1) {
    out.push_back(Card::from_index(std::countr_zero(b)));
  }
  return out;
}

std::string to_string(CardSet s) {
  std::string out;
  for (Card c : s.cards()) {
    if (!out.empty()) out += ' ';
    out += to_string(c);
  }
  return out;
}

}  // namespace lerpa
