#include <algorithm>
#include <cmath>
#include <functional>
#include <set>
#include <stdexcept>

#include <gtest/gtest.h>

#include "lerpa/cards.h"
#include "lerpa/rng.h"
#include "lerpa/rules.h"
#include "lerpa/selftest.h"

namespace lerpa {
namespace {

Card C(const char* s) { return parse_card(s); }

TrickState trick_of(std::initializer_list<std::pair<int, const char*>> plays) {
  TrickState t;
  for (auto [seat, card] : plays) t.add(seat, C(card));
  return t;
}

TEST(Cards, RankOrdinals) {
  EXPECT_EQ(ordinal(Rank::kTwo), 0);
  EXPECT_EQ(ordinal(Rank::kSeven), 8);
  EXPECT_EQ(ordinal(Rank::kAce), 9);
  EXPECT_LT(ordinal(Rank::kKing), ordinal(Rank::kSeven));
  EXPECT_LT(ordinal(Rank::kSix), ordinal(Rank::kJack));
}

TEST(Cards, ParseAndFormatRoundTrip) {
  for (int i = 0; i < kDeckSize; ++i) {
    const Card c = Card::from_index(i);
    EXPECT_EQ(parse_card(to_string(c)), c);
  }
  EXPECT_EQ(to_string(C("7C")), "7C");
  EXPECT_THROW(parse_card("9H"), std::invalid_argument);
  EXPECT_THROW(parse_card("10H"), std::invalid_argument);
  EXPECT_THROW(parse_card("AX"), std::invalid_argument);
  EXPECT_THROW(parse_card(""), std::invalid_argument);
}

TEST(Cards, CardSetBasics) {
  CardSet s{C("AD"), C("2C")};
  EXPECT_EQ(s.size(), 2);
  EXPECT_TRUE(s.contains(C("AD")));
  s.erase(C("AD"));
  EXPECT_FALSE(s.contains(C("AD")));
  EXPECT_EQ(s.cards(), std::vector<Card>{C("2C")});
  EXPECT_TRUE(CardSet{}.empty());
}

TEST(Deck, FortyDistinctCardsTenPerSuit) {
  const auto deck = build_deck();
  ASSERT_EQ(deck.size(), 40u);
  std::set<int> seen;
  for (Card c : deck) seen.insert(c.index());
  EXPECT_EQ(seen.size(), 40u);
  for (Suit s : kAllSuits) {
    EXPECT_EQ(std::count_if(deck.begin(), deck.end(),
                            [s](Card c) { return c.suit == s; }),
              10);
  }
  EXPECT_NE(std::find(deck.begin(), deck.end(), C("AD")), deck.end());
  EXPECT_NE(std::find(deck.begin(), deck.end(), C("7C")), deck.end());
}

TEST(Deal, SameSeedSameDeal) {
  Rng a(42), b(42);
  const Deal x = deal(a), y = deal(b);
  EXPECT_EQ(x.hands, y.hands);
  EXPECT_EQ(x.trump_card, y.trump_card);
  EXPECT_EQ(x.remaining, y.remaining);
}

TEST(Deal, ThirteenDistinctCards) {
  Rng rng(7);
  for (int i = 0; i < 200; ++i) {
    const Deal d = deal(rng);
    std::set<int> seen;
    for (const Hand& h : d.hands)
      for (Card c : h) seen.insert(c.index());
    seen.insert(d.trump_card.index());
    EXPECT_EQ(seen.size(), 13u);
    EXPECT_EQ(d.remaining.size(), 27u);
    EXPECT_NO_THROW(validate_deal(d.hands, d.trump_card));
  }
}

TEST(Deal, EachCardDealtWithBinomialFrequency) {
  constexpr int kDeals = 10000;
  Rng rng(2024);
  std::array<int, kDeckSize> count{};
  for (int i = 0; i < kDeals; ++i) {
    const Deal d = deal(rng);
    for (const Hand& h : d.hands)
      for (Card c : h) ++count[c.index()];
  }
  const double p = 12.0 / 40.0;
  const double sigma = std::sqrt(p * (1 - p) / kDeals);
  for (int i = 0; i < kDeckSize; ++i) {
    EXPECT_NEAR(count[i] / double(kDeals), p, 3 * sigma)
        << to_string(Card::from_index(i));
  }
}

TEST(Deal, ValidateRejectsDuplicates) {
  std::array<Hand, kNumSeats> hands = {
      Hand{C("2C"), C("3C"), C("4C")}, Hand{C("5C"), C("6C"), C("JC")},
      Hand{C("QC"), C("KC"), C("7C")}, Hand{C("AC"), C("2D"), C("3D")}};
  EXPECT_NO_THROW(validate_deal(hands, C("4D")));
  EXPECT_THROW(validate_deal(hands, C("2C")), std::invalid_argument);
  hands[1][0] = C("3C");
  EXPECT_THROW(validate_deal(hands, C("4D")), std::invalid_argument);
}

TEST(LegalMoves, AceOfTrumpsForcedWhenLeading) {
  const CardSet hand{C("AD"), C("KH"), C("2C")};
  EXPECT_EQ(legal_moves(hand, TrickState{}, Suit::kDiamonds), CardSet{C("AD")});
}

TEST(LegalMoves, MustFollowSuit) {
  const CardSet hand{C("KH"), C("2H"), C("3C")};
  const TrickState t = trick_of({{0, "5H"}});
  EXPECT_EQ(legal_moves(hand, t, Suit::kDiamonds), (CardSet{C("KH"), C("2H")}));
}

TEST(LegalMoves, VoidInLedSuitAllowsAnything) {
  const CardSet hand{C("3C"), C("4S"), C("2D")};
  const TrickState t = trick_of({{0, "5H"}});
  EXPECT_EQ(legal_moves(hand, t, Suit::kDiamonds), hand);
}

TEST(LegalMoves, AceOfTrumpsForcedWhenVoidInLedSuit) {
  const CardSet hand{C("3C"), C("AD")};
  const TrickState t = trick_of({{0, "5H"}});
  EXPECT_EQ(legal_moves(hand, t, Suit::kDiamonds), CardSet{C("AD")});
}

TEST(LegalMoves, AceOfTrumpsNotForcedWhenFollowingOtherSuit) {
  const CardSet hand{C("3H"), C("AD")};
  const TrickState t = trick_of({{0, "5H"}});
  EXPECT_EQ(legal_moves(hand, t, Suit::kDiamonds), CardSet{C("3H")});
}

TEST(LegalMoves, EmptyHandIsContractViolation) {
  EXPECT_THROW(legal_moves(CardSet{}, TrickState{}, Suit::kClubs),
               std::logic_error);
}

// Card-by-card rule table, written without reference to legal_moves.
bool table_legal(Card card, CardSet hand, const TrickState& trick, Suit trump) {
  if (!hand.contains(card)) return false;
  bool can_follow = false;
  bool holds_ace = hand.contains(Card{trump, Rank::kAce});
  for (Card c : hand.cards())
    if (trick.led_suit && c.suit == *trick.led_suit) can_follow = true;
  const bool ace_playable =
      holds_ace && (!trick.led_suit || !can_follow || *trick.led_suit == trump);
  if (ace_playable) return card == Card{trump, Rank::kAce};
  if (can_follow) return card.suit == *trick.led_suit;
  return true;
}

TEST(LegalMoves, MatchesRuleTableOnRandomPositions) {
  Rng rng(99);
  int mismatches = 0;
  for (int i = 0; i < 10000; ++i) {
    const RandomPosition pos = random_position(rng);
    const CardSet legal = legal_moves(pos.hand, pos.trick, pos.trump);
    EXPECT_FALSE(legal.empty());
    for (int c = 0; c < kDeckSize; ++c) {
      const Card card = Card::from_index(c);
      if (legal.contains(card) !=
          table_legal(card, pos.hand, pos.trick, pos.trump))
        ++mismatches;
    }
  }
  EXPECT_EQ(mismatches, 0);
}

TEST(ResolveTrick, HighestOfLedSuit) {
  const TrickState t = trick_of({{0, "KH"}, {1, "AH"}, {2, "2H"}});
  EXPECT_EQ(resolve_trick(t, Suit::kDiamonds, 3), 1);
}

TEST(ResolveTrick, TrumpWins) {
  const TrickState t = trick_of({{0, "AH"}, {1, "2D"}, {2, "3H"}});
  EXPECT_EQ(resolve_trick(t, Suit::kDiamonds, 3), 1);
}

TEST(ResolveTrick, AceIsHighestTrump) {
  const TrickState t = trick_of({{3, "2D"}, {0, "7D"}, {1, "AD"}});
  EXPECT_EQ(resolve_trick(t, Suit::kDiamonds, 3), 1);
}

TEST(ResolveTrick, SevenBeatsKing) {
  const TrickState t = trick_of({{0, "KS"}, {1, "7S"}});
  EXPECT_EQ(resolve_trick(t, Suit::kHearts, 2), 1);
}

TEST(ResolveTrick, OffSuitDiscardNeverWins) {
  const TrickState t = trick_of({{2, "2S"}, {3, "AC"}, {0, "AH"}});
  EXPECT_EQ(resolve_trick(t, Suit::kDiamonds, 3), 2);
}

TEST(ResolveTrick, IncompleteTrickIsContractViolation) {
  const TrickState t = trick_of({{0, "KH"}, {1, "AH"}});
  EXPECT_THROW(resolve_trick(t, Suit::kDiamonds, 3), std::logic_error);
}

TEST(Settle, DealerLerpad) {
  const Settlement s = settle_hand({true, true, true, false}, {0, 2, 1, 0}, 0);
  EXPECT_EQ(s.deltas, (std::array<int, 4>{-6, 2, 1, 0}));
  EXPECT_EQ(s.total(), -3);
  EXPECT_EQ(s.lerpad_count(), 1);
  EXPECT_FALSE(s.void_hand);
}

TEST(Settle, LoneNonDealerStayer) {
  const Settlement s = settle_hand({false, false, true, false}, {0, 0, 3, 0}, 0);
  EXPECT_EQ(s.deltas, (std::array<int, 4>{-3, 0, 3, 0}));
  EXPECT_EQ(s.total(), 0);
}

TEST(Settle, DealerAloneWinsAll) {
  const Settlement s = settle_hand({false, true, false, false}, {0, 3, 0, 0}, 1);
  EXPECT_EQ(s.deltas, (std::array<int, 4>{0, 0, 0, 0}));
}

TEST(Settle, AllFoldIsVoid) {
  const Settlement s = settle_hand({false, false, false, false}, {0, 0, 0, 0}, 2);
  EXPECT_TRUE(s.void_hand);
  EXPECT_EQ(s.deltas, (std::array<int, 4>{0, 0, 0, 0}));
}

TEST(Settle, InconsistentCountsAreContractViolations) {
  EXPECT_THROW(settle_hand({true, true, false, false}, {1, 1, 0, 0}, 0),
               std::logic_error);
  EXPECT_THROW(settle_hand({true, false, false, false}, {2, 1, 0, 0}, 0),
               std::logic_error);
}

TEST(Settle, ConservationOverAllStayPatterns) {
  for (int mask = 1; mask < 16; ++mask) {
    std::array<bool, 4> stays{};
    std::vector<int> stayers;
    for (int s = 0; s < 4; ++s) {
      stays[s] = (mask >> s) & 1;
      if (stays[s]) stayers.push_back(s);
    }
    // Every split of three tricks among the stayers.
    std::vector<int> split(stayers.size(), 0);
    std::function<void(std::size_t, int)> rec = [&](std::size_t i, int left) {
      if (i + 1 == split.size()) {
        split[i] = left;
        std::array<int, 4> tricks{};
        for (std::size_t j = 0; j < split.size(); ++j) tricks[stayers[j]] = split[j];
        for (int dealer = 0; dealer < 4; ++dealer) {
          const Settlement s = settle_hand(stays, tricks, dealer);
          EXPECT_EQ(s.total(), -3 * s.lerpad_count());
        }
        return;
      }
      for (int t = 0; t <= left; ++t) {
        split[i] = t;
        rec(i + 1, left - t);
      }
    };
    rec(0, 3);
  }
}

TEST(Outcome, ChipsAndMapping) {
  EXPECT_EQ(outcome_for(true, 3), Outcome::kWinThree);
  EXPECT_EQ(outcome_for(true, 0), Outcome::kLerpad);
  EXPECT_EQ(outcome_for(false, 0), Outcome::kFold);
  EXPECT_EQ(outcome_chips(Outcome::kWinTwo), 2);
  EXPECT_EQ(outcome_chips(Outcome::kLerpad), -3);
  EXPECT_EQ(outcome_chips(Outcome::kFold), 0);
}

TEST(Rng, UniformAndBelowAreInRange) {
  Rng rng(5);
  for (int i = 0; i < 1000; ++i) {
    const double u = rng.uniform();
    EXPECT_GE(u, 0.0);
    EXPECT_LT(u, 1.0);
    EXPECT_LT(rng.below(7), 7u);
  }
  EXPECT_NE(derive_seed(1, 0), derive_seed(1, 1));
  EXPECT_EQ(derive_seed(3, 4), derive_seed(3, 4));
}

}  // namespace
}  // namespace lerpa
