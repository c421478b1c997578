#include "lerpa/detectors.h"

#include <stdexcept>

namespace lerpa {
namespace {

bool same_outcome(const HandRecord& a, const HandRecord& b) {
  for (int s = 0; s < kNumSeats; ++s) {
    if (a.knocks[s].knocked != b.knocks[s].knocked) return false;
  }
  return a.plays == b.plays && a.settlement.deltas == b.settlement.deltas;
}

int turn_position(const HandRecord& rec, int seat) {
  return relative_seat(next_seat(rec.dealer), seat);
}

// Stage-1 decision taken on the agent's own judgement.
bool deliberate(const KnockRecord& k) { return !k.exploratory && !k.forced; }

}  // namespace

std::optional<std::int64_t> detect_equilibrium(const SessionLog& log,
                                               int window) {
  if (window < 2) throw std::invalid_argument("equilibrium window must be >= 2");
  const auto n = static_cast<std::int64_t>(log.hands.size());
  if (window > n) {
    throw std::invalid_argument("equilibrium window longer than the log");
  }
  // Length of the run of identical records ending at i.
  std::int64_t run = 1;
  for (std::int64_t i = 1; i < n; ++i) {
    run = same_outcome(log.hands[i], log.hands[i - 1]) ? run + 1 : 1;
    if (run >= window) return i - window + 1;
  }
  return std::nullopt;
}

std::vector<BluffEvent> detect_bluffs(const SessionLog& log, int k) {
  if (!log.predealt) throw std::invalid_argument("bluff detection needs a predealt log");
  if (k < 0) throw std::invalid_argument("re-entry window must be >= 0");
  std::vector<BluffEvent> events;
  const auto n = static_cast<std::int64_t>(log.hands.size());
  for (int b = 0; b < kNumSeats; ++b) {
    for (int v = 0; v < kNumSeats; ++v) {
      if (b == v) continue;
      std::int64_t i = 0;
      while (i < n) {
        const HandRecord& start = log.hands[i];
        const KnockRecord& kb = start.knocks[b];
        const KnockRecord& kv = start.knocks[v];
        if (!(turn_position(start, b) < turn_position(start, v) &&
              deliberate(kb) && deliberate(kv) && kb.knocked && !kv.knocked)) {
          ++i;
          continue;
        }
        // Inside an epoch: follow it until the bluffer or the victim changes.
        const std::int64_t epoch_start = i;
        std::optional<std::int64_t> switch_at;
        std::int64_t j = i + 1;
        for (; j < n; ++j) {
          const KnockRecord& jb = log.hands[j].knocks[b];
          const KnockRecord& jv = log.hands[j].knocks[v];
          if (deliberate(jb) && !jb.knocked) {
            switch_at = j;
            break;
          }
          if (deliberate(jv) && jv.knocked) break;
        }
        if (!switch_at) {
          i = j;
          continue;
        }
        std::optional<std::int64_t> reentry;
        for (std::int64_t r = *switch_at; r < n && r <= *switch_at + k; ++r) {
          const KnockRecord& rv = log.hands[r].knocks[v];
          if (deliberate(rv) && rv.knocked) {
            reentry = r;
            break;
          }
        }
        if (reentry) {
          events.push_back(BluffEvent{b, v, epoch_start, *switch_at, *reentry});
          i = *reentry + 1;
        } else {
          i = *switch_at + 1;
        }
      }
    }
  }
  return events;
}

}  // namespace lerpa
