#ifndef LERPA_EXPERIMENTS_H_
#define LERPA_EXPERIMENTS_H_

// Seeded experiment runners behind the `lerpa` command line tool. Every
// runner is a pure function of its ExperimentConfig: the same config yields
// byte-identical CSV.

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "lerpa/arena.h"
#include "lerpa/detectors.h"
#include "lerpa/td_agent.h"

namespace lerpa {

enum class Smoothing { kBlock, kSliding };

struct Series {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
};

// Non-overlapping block means; block b (x = b + 1) averages
// values[b*w, (b+1)*w) and a trailing partial block is dropped. Throws
// std::invalid_argument when window < 1 or window > values.size().
Series moving_average(const std::vector<double>& values, int window);
// Mean of every length-w window; x is the 1-based index of its last value.
Series sliding_average(const std::vector<double>& values, int window);
Series smooth(const std::vector<double>& values, int window, Smoothing mode);

struct ExperimentConfig {
  std::string name;
  // Values <= 0 select the per-experiment default.
  std::int64_t hands = 0;
  std::uint64_t seed = 1;
  AgentParams params;
  bool courage_set = false;
  int window = 0;
  std::string predealt_path;
  int k = kDefaultBluffWindow;
  std::string out;
  Smoothing smoothing = Smoothing::kBlock;
  // Free-play hands the four agents train on before predealt repeats; < 0
  // selects the default.
  std::int64_t warmup = -1;
  // Parameter sets for tune, one per seat; empty selects the default grid.
  std::vector<AgentParams> grid;
};

inline constexpr std::int64_t kDefaultLearnHands = 20000;
inline constexpr std::int64_t kDefaultCowardHands = 2000;
inline constexpr std::int64_t kDefaultTuneHands = 40000;
inline constexpr std::int64_t kDefaultMasHands = 10000;
inline constexpr std::int64_t kMasFinalWindow = 200;
inline constexpr std::int64_t kDefaultPredealtRepeats = 200;
inline constexpr std::int64_t kDefaultWarmupHands = 15000;
inline constexpr int kLearnWindow = 40;
inline constexpr int kCowardWindow = 5;
inline constexpr int kTuneWindow = 30;

// Grid used by `tune` when none is given; includes alpha = lambda = 0.1,
// epsilon = 0.01.
std::vector<AgentParams> default_tune_grid(const AgentParams& base);

// Per-hand chip deltas of one seat over the non-void hands of a log.
std::vector<double> seat_deltas(const SessionLog& log, int seat);
// Mean delta of one seat over the last `last_n` non-void hands.
double final_mean(const SessionLog& log, int seat, std::int64_t last_n);
double final_total(const SessionLog& log, int seat, std::int64_t last_n);

// One TD agent (seat 0, "Aiden") against three random agents.
SessionLog run_learn(const ExperimentConfig& config);
// Same table with courage forced to zero.
SessionLog run_coward(const ExperimentConfig& config);
// Fold indicator (1 = folded) of seat 0 for every non-void hand.
std::vector<double> fold_indicators(const SessionLog& log, int seat);
SessionLog run_tune(const ExperimentConfig& config,
                    std::vector<AgentParams>* grid_used = nullptr);

struct MasResult {
  SessionLog vs_random;  // AI1 + R1..R3
  SessionLog vs_td;      // AI2..AI5
};
MasResult run_mas(const ExperimentConfig& config);

// Four TD agents trained by free play for `warmup` hands, then seated for
// predealt play (seat i holds line i of the predealt file).
Table make_predealt_table(const ExperimentConfig& config);
SessionLog run_predealt_experiment(const ExperimentConfig& config,
                                   const PredealtSpec& spec);

struct CommandOutput {
  std::string csv;
  // Secondary CSV files as (suffix, content); written next to --out.
  std::vector<std::pair<std::string, std::string>> extras;
  // Human-readable notes for stderr.
  std::string summary;
};

CommandOutput cmd_learn(const ExperimentConfig& config);
CommandOutput cmd_coward(const ExperimentConfig& config);
CommandOutput cmd_tune(const ExperimentConfig& config);
CommandOutput cmd_mas(const ExperimentConfig& config);
CommandOutput cmd_adapt(const ExperimentConfig& config);
CommandOutput cmd_solve(const ExperimentConfig& config);
CommandOutput cmd_bluff(const ExperimentConfig& config);
CommandOutput cmd_layout();

// Wide CSV: x column followed by one column per series (series must share x).
std::string series_csv(const std::string& x_name,
                       const std::vector<Series>& series);

}  // namespace lerpa

#endif  // LERPA_EXPERIMENTS_H_
