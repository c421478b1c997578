#ifndef LERPA_DETECTORS_H_
#define LERPA_DETECTORS_H_

#include <cstdint>
#include <optional>
#include <vector>

#include "lerpa/arena.h"

namespace lerpa {

inline constexpr int kDefaultEquilibriumWindow = 30;
inline constexpr int kDefaultBluffWindow = 5;

// First log position i such that records [i, i + window) share the same
// stage-1 decisions, card plays and chip deltas. Throws std::invalid_argument
// if window < 2 or window exceeds the log length.
std::optional<std::int64_t> detect_equilibrium(const SessionLog& log,
                                               int window);

// A knock by `bluffer` that kept `victim` folded. Indices are log positions:
// the first hand of the epoch in which the bluffer knocked and the victim
// folded, the hand where the bluffer switched to folding, and the hand where
// the victim came back in.
struct BluffEvent {
  int bluffer = 0;
  int victim = 0;
  std::int64_t epoch_start = 0;
  std::int64_t switch_index = 0;
  std::int64_t reentry_index = 0;

  friend bool operator==(const BluffEvent&, const BluffEvent&) = default;
};

// Scans a predealt log for bluff events. The victim must decide after the
// bluffer in the knock round. Exploratory and forced stage-1 decisions never
// start, end or break an epoch. The victim must knock within `k` hands of the
// bluffer's switch (the switch hand itself included). Throws
// std::invalid_argument for a non-predealt log or k < 0.
std::vector<BluffEvent> detect_bluffs(const SessionLog& log,
                                      int k = kDefaultBluffWindow);

}  // namespace lerpa

#endif  // LERPA_DETECTORS_H_
