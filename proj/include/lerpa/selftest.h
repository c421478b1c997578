#ifndef LERPA_SELFTEST_H_
#define LERPA_SELFTEST_H_

#include <string>
#include <vector>

#include "lerpa/rules.h"

namespace lerpa {

struct CheckResult {
  std::string name;
  bool passed = false;
  double max_error = 0.0;
  std::string detail;
};

struct SelftestOptions {
  // Test hook: perturbs the analytic gradient so the gradient check must fail.
  bool corrupt_gradient = false;
  std::uint64_t seed = 1;
};

// Gradient check, trace identity, legality oracle, ledger conservation and
// encoding invariants.
std::vector<CheckResult> run_selftest(const SelftestOptions& options = {});

// Rule-table legality written card by card, independent of legal_moves.
bool oracle_is_legal(Card card, CardSet hand, const TrickState& trick,
                     Suit trump);

struct RandomPosition {
  CardSet hand;
  TrickState trick;
  Suit trump;
};
// A hand of 1..3 cards facing 0..3 cards already in the trick.
RandomPosition random_position(Rng& rng);

}  // namespace lerpa

#endif  // LERPA_SELFTEST_H_
