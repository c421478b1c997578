#include "lerpa/experiments.h"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "lerpa/encoder.h"
#include "lerpa/session_csv.h"

namespace lerpa {
namespace {

std::int64_t or_default(std::int64_t v, std::int64_t fallback) {
  return v > 0 ? v : fallback;
}

SeatConfig td_seat(std::string id, const AgentParams& p) {
  return SeatConfig{std::move(id), AgentKind::kTd, p};
}

SeatConfig random_seat(std::string id) {
  return SeatConfig{std::move(id), AgentKind::kRandom, AgentParams{}};
}

TableConfig learn_table(const ExperimentConfig& config, const AgentParams& p) {
  TableConfig t;
  t.seed = config.seed;
  t.seats = {td_seat("Aiden", p), random_seat("Randy"), random_seat("Roderick"),
             random_seat("Ronald")};
  return t;
}

std::vector<Series> per_seat_series(const SessionLog& log, int window,
                                    Smoothing mode) {
  std::vector<Series> out;
  for (int s = 0; s < kNumSeats; ++s) {
    Series series = smooth(seat_deltas(log, s), window, mode);
    series.label = log.agent_ids[s];
    out.push_back(std::move(series));
  }
  return out;
}

std::string x_name(Smoothing mode) {
  return mode == Smoothing::kBlock ? "block" : "hand";
}

void check_window(int window, std::int64_t hands) {
  if (window < 1) throw std::invalid_argument("window must be >= 1");
  if (window > hands) throw std::invalid_argument("window larger than --hands");
}

std::string params_label(const AgentParams& p) {
  return "alpha=" + format_number(p.alpha, 3) +
         " lambda=" + format_number(p.lambda, 3) +
         " epsilon=" + format_number(p.epsilon, 3);
}

PredealtSpec predealt_from(const ExperimentConfig& config) {
  if (config.predealt_path.empty()) {
    throw std::invalid_argument(config.name + " needs --predealt PATH");
  }
  return load_predealt(config.predealt_path);
}

}  // namespace

Series moving_average(const std::vector<double>& values, int window) {
  if (window < 1) throw std::invalid_argument("window must be >= 1");
  if (static_cast<std::size_t>(window) > values.size()) {
    throw std::invalid_argument("window longer than the series");
  }
  Series s;
  const std::size_t blocks = values.size() / static_cast<std::size_t>(window);
  for (std::size_t b = 0; b < blocks; ++b) {
    double sum = 0.0;
    for (int i = 0; i < window; ++i) sum += values[b * window + i];
    s.x.push_back(static_cast<double>(b + 1));
    s.y.push_back(sum / window);
  }
  return s;
}

Series sliding_average(const std::vector<double>& values, int window) {
  if (window < 1) throw std::invalid_argument("window must be >= 1");
  if (static_cast<std::size_t>(window) > values.size()) {
    throw std::invalid_argument("window longer than the series");
  }
  Series s;
  double sum = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    sum += values[i];
    if (i >= static_cast<std::size_t>(window)) sum -= values[i - window];
    if (i + 1 >= static_cast<std::size_t>(window)) {
      s.x.push_back(static_cast<double>(i + 1));
      s.y.push_back(sum / window);
    }
  }
  return s;
}

Series smooth(const std::vector<double>& values, int window, Smoothing mode) {
  return mode == Smoothing::kBlock ? moving_average(values, window)
                                   : sliding_average(values, window);
}

std::string series_csv(const std::string& x_name,
                       const std::vector<Series>& series) {
  std::ostringstream out;
  out << x_name;
  for (const Series& s : series) out << ',' << csv_field(s.label);
  out << '\n';
  if (series.empty()) return out.str();
  const std::size_t n = series.front().x.size();
  for (const Series& s : series) {
    if (s.x != series.front().x) {
      throw std::logic_error("series_csv: series do not share x values");
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    out << format_number(series.front().x[i], 0);
    for (const Series& s : series) out << ',' << format_number(s.y[i]);
    out << '\n';
  }
  return out.str();
}

std::vector<AgentParams> default_tune_grid(const AgentParams& base) {
  struct Triple {
    double alpha, lambda, epsilon;
  };
  constexpr Triple kGrid[] = {
      {0.1, 0.1, 0.01}, {0.5, 0.5, 0.01}, {0.1, 0.7, 0.05}, {0.3, 0.1, 0.1}};
  std::vector<AgentParams> grid;
  for (const Triple& t : kGrid) {
    AgentParams p = base;
    p.alpha = t.alpha;
    p.lambda = t.lambda;
    p.epsilon = t.epsilon;
    grid.push_back(p);
  }
  return grid;
}

std::vector<double> seat_deltas(const SessionLog& log, int seat) {
  std::vector<double> out;
  out.reserve(log.hands.size());
  for (const HandRecord& h : log.hands) {
    if (!h.void_hand()) out.push_back(h.settlement.deltas[seat]);
  }
  return out;
}

double final_total(const SessionLog& log, int seat, std::int64_t last_n) {
  const std::vector<double> d = seat_deltas(log, seat);
  const std::size_t n = std::min<std::size_t>(d.size(), last_n);
  return std::accumulate(d.end() - static_cast<std::ptrdiff_t>(n), d.end(), 0.0);
}

double final_mean(const SessionLog& log, int seat, std::int64_t last_n) {
  const std::size_t n =
      std::min<std::size_t>(seat_deltas(log, seat).size(), last_n);
  return n == 0 ? 0.0 : final_total(log, seat, last_n) / static_cast<double>(n);
}

std::vector<double> fold_indicators(const SessionLog& log, int seat) {
  std::vector<double> out;
  for (const HandRecord& h : log.hands) {
    if (!h.void_hand()) out.push_back(h.knocks[seat].knocked ? 0.0 : 1.0);
  }
  return out;
}

SessionLog run_learn(const ExperimentConfig& config) {
  Table table(learn_table(config, config.params));
  return run_session(table, or_default(config.hands, kDefaultLearnHands));
}

SessionLog run_coward(const ExperimentConfig& config) {
  AgentParams p = config.params;
  if (!config.courage_set) p.courage_hands = 0;
  Table table(learn_table(config, p));
  return run_session(table, or_default(config.hands, kDefaultCowardHands));
}

SessionLog run_tune(const ExperimentConfig& config,
                    std::vector<AgentParams>* grid_used) {
  std::vector<AgentParams> grid =
      config.grid.empty() ? default_tune_grid(config.params) : config.grid;
  if (grid.size() != kNumSeats) {
    throw std::invalid_argument("tune needs exactly 4 parameter sets");
  }
  TableConfig t;
  t.seed = config.seed;
  for (int s = 0; s < kNumSeats; ++s) {
    t.seats[s] = td_seat("TD" + std::to_string(s + 1), grid[s]);
  }
  Table table(t);
  if (grid_used) *grid_used = grid;
  return run_session(table, or_default(config.hands, kDefaultTuneHands));
}

MasResult run_mas(const ExperimentConfig& config) {
  const std::int64_t hands = or_default(config.hands, kDefaultMasHands);
  TableConfig mixed;
  mixed.seed = config.seed;
  mixed.seats = {td_seat("AI1", config.params), random_seat("R1"),
                 random_seat("R2"), random_seat("R3")};
  TableConfig all_td;
  all_td.seed = config.seed;
  all_td.seats = {td_seat("AI2", config.params), td_seat("AI3", config.params),
                  td_seat("AI4", config.params), td_seat("AI5", config.params)};
  MasResult r;
  Table a(mixed);
  r.vs_random = run_session(a, hands);
  Table b(all_td);
  r.vs_td = run_session(b, hands);
  return r;
}

Table make_predealt_table(const ExperimentConfig& config) {
  TableConfig t;
  t.seed = derive_seed(config.seed, 1);
  t.seats = {td_seat("Randy", config.params), td_seat("Ronald", config.params),
             td_seat("Roderick", config.params), td_seat("Alden", config.params)};
  Table warm(t);
  const std::int64_t warmup =
      config.warmup < 0 ? kDefaultWarmupHands : config.warmup;
  if (warmup > 0) run_session(warm, warmup);
  const auto ids = warm.ids();
  return Table(warm.release_agents(), ids, derive_seed(config.seed, 2),
               kPredealtDealer);
}

SessionLog run_predealt_experiment(const ExperimentConfig& config,
                                   const PredealtSpec& spec) {
  Table table = make_predealt_table(config);
  return run_predealt(table, spec,
                      config.hands > 0 ? config.hands : kDefaultPredealtRepeats);
}

CommandOutput cmd_learn(const ExperimentConfig& config) {
  const std::int64_t hands = or_default(config.hands, kDefaultLearnHands);
  const int window = config.window > 0 ? config.window : kLearnWindow;
  check_window(window, hands);
  ExperimentConfig c = config;
  c.hands = hands;
  const SessionLog log = run_learn(c);
  CommandOutput out;
  out.csv = series_csv(x_name(config.smoothing),
                       per_seat_series(log, window, config.smoothing));
  out.extras.emplace_back(".session.csv", session_csv(log));
  const std::int64_t quarter = std::max<std::int64_t>(1, hands / 4);
  std::ostringstream summary;
  summary << "mean chips/hand over the final " << quarter << " hands:";
  for (int s = 0; s < kNumSeats; ++s) {
    summary << ' ' << log.agent_ids[s] << '=' << format_number(final_mean(log, s, quarter), 4);
  }
  out.summary = summary.str();
  return out;
}

CommandOutput cmd_coward(const ExperimentConfig& config) {
  const std::int64_t hands = or_default(config.hands, kDefaultCowardHands);
  const int window = config.window > 0 ? config.window : kCowardWindow;
  check_window(window, hands);
  ExperimentConfig c = config;
  c.hands = hands;
  const SessionLog log = run_coward(c);
  Series fold = smooth(fold_indicators(log, 0), window, config.smoothing);
  fold.label = "fold_rate";
  CommandOutput out;
  out.csv = series_csv(x_name(config.smoothing), {fold});
  out.extras.emplace_back(".session.csv", session_csv(log));
  const std::vector<double> folds = fold_indicators(log, 0);
  const std::size_t half = folds.size() / 2;
  const double late =
      std::accumulate(folds.begin() + static_cast<std::ptrdiff_t>(half),
                      folds.end(), 0.0) /
      static_cast<double>(folds.size() - half);
  out.summary = "fold rate over the second half: " + format_number(late, 4);
  return out;
}

CommandOutput cmd_tune(const ExperimentConfig& config) {
  const std::int64_t hands = or_default(config.hands, kDefaultTuneHands);
  const int window = config.window > 0 ? config.window : kTuneWindow;
  check_window(window, hands);
  ExperimentConfig c = config;
  c.hands = hands;
  std::vector<AgentParams> grid;
  const SessionLog log = run_tune(c, &grid);

  CommandOutput out;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    for (std::size_t j = i + 1; j < grid.size(); ++j) {
      if (grid[i] == grid[j]) {
        out.summary += "warning: seats " + std::to_string(i) + " and " +
                       std::to_string(j) + " share parameters\n";
      }
    }
  }
  const auto totals = log.totals();
  std::vector<int> order(kNumSeats);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return totals[a] > totals[b]; });
  std::ostringstream csv;
  csv << "rank,seat,agent_id,alpha,lambda,epsilon,cumulative,mean_per_hand\n";
  const auto n = static_cast<double>(seat_deltas(log, 0).size());
  for (int r = 0; r < kNumSeats; ++r) {
    const int s = order[r];
    csv << r + 1 << ',' << s << ',' << log.agent_ids[s] << ','
        << format_number(grid[s].alpha, 4) << ','
        << format_number(grid[s].lambda, 4) << ','
        << format_number(grid[s].epsilon, 4) << ',' << totals[s] << ','
        << format_number(totals[s] / n) << '\n';
  }
  out.csv = csv.str();
  out.extras.emplace_back(".series.csv",
                          series_csv(x_name(config.smoothing),
                                     per_seat_series(log, window, config.smoothing)));
  out.summary += "winner: " + log.agent_ids[order[0]] + " (" +
                 params_label(grid[order[0]]) + ")";
  return out;
}

CommandOutput cmd_mas(const ExperimentConfig& config) {
  const MasResult r = run_mas(config);
  const std::int64_t window = config.window > 0 ? config.window : kMasFinalWindow;
  std::ostringstream csv;
  csv << "agent_id,setting,final_hands,final_return,mean_per_hand\n";
  auto row = [&](const SessionLog& log, int seat, const char* setting) {
    const std::size_t n =
        std::min<std::size_t>(seat_deltas(log, seat).size(), window);
    csv << log.agent_ids[seat] << ',' << setting << ',' << n << ','
        << format_number(final_total(log, seat, window), 0) << ','
        << format_number(final_mean(log, seat, window)) << '\n';
  };
  for (int s : {1, 2, 3, 0}) row(r.vs_random, s, "td_vs_random");
  for (int s = 0; s < kNumSeats; ++s) row(r.vs_td, s, "td_vs_td");
  CommandOutput out;
  out.csv = csv.str();
  out.extras.emplace_back(".vs_random.session.csv", session_csv(r.vs_random));
  out.extras.emplace_back(".vs_td.session.csv", session_csv(r.vs_td));
  double td_mean = 0.0;
  for (int s = 0; s < kNumSeats; ++s) td_mean += final_total(r.vs_td, s, window);
  out.summary = "final-window return: AI1=" +
                format_number(final_total(r.vs_random, 0, window), 0) +
                " mean(AI2..AI5)=" + format_number(td_mean / kNumSeats, 2);
  return out;
}

CommandOutput cmd_adapt(const ExperimentConfig& config) {
  const PredealtSpec spec = predealt_from(config);
  const SessionLog log = run_predealt_experiment(config, spec);
  std::ostringstream csv;
  csv << "repeat,seat,agent_id,stage1,forced,explored,stay_prediction,"
         "tricks_won,delta\n";
  for (std::size_t i = 0; i < log.hands.size(); ++i) {
    const HandRecord& h = log.hands[i];
    for (int s = 0; s < kNumSeats; ++s) {
      const KnockRecord& k = h.knocks[s];
      csv << i << ',' << s << ',' << log.agent_ids[s] << ','
          << (k.knocked ? 'K' : 'F') << ',' << (k.forced ? 1 : 0) << ','
          << (k.exploratory ? 1 : 0) << ','
          << (k.y ? format_number(scalar_prediction(*k.y)) : std::string()) << ','
          << h.tricks_won[s] << ',' << h.settlement.deltas[s] << '\n';
    }
  }
  CommandOutput out;
  out.csv = csv.str();
  out.extras.emplace_back(".session.csv", session_csv(log));
  return out;
}

CommandOutput cmd_solve(const ExperimentConfig& config) {
  const PredealtSpec spec = predealt_from(config);
  const int window = config.window > 0 ? config.window : kDefaultEquilibriumWindow;
  const SessionLog log = run_predealt_experiment(config, spec);
  const auto eq = detect_equilibrium(log, window);
  std::ostringstream csv;
  csv << "equilibrium_index,window,repeats";
  for (int s = 0; s < kNumSeats; ++s) csv << ",delta_" << log.agent_ids[s];
  csv << '\n';
  csv << (eq ? std::to_string(*eq) : std::string()) << ',' << window << ','
      << log.hands.size();
  for (int s = 0; s < kNumSeats; ++s) {
    csv << ',';
    if (eq) csv << log.hands[*eq].settlement.deltas[s];
  }
  csv << '\n';
  CommandOutput out;
  out.csv = csv.str();
  out.extras.emplace_back(".session.csv", session_csv(log));
  out.summary = eq ? "equilibrium from repeat " + std::to_string(*eq)
                   : std::string("no equilibrium");
  return out;
}

CommandOutput cmd_bluff(const ExperimentConfig& config) {
  const PredealtSpec spec = predealt_from(config);
  const SessionLog log = run_predealt_experiment(config, spec);
  const auto events = detect_bluffs(log, config.k);
  std::ostringstream csv;
  csv << "bluffer_seat,bluffer,victim_seat,victim,epoch_start,switch_index,"
         "reentry_index\n";
  for (const BluffEvent& e : events) {
    csv << e.bluffer << ',' << log.agent_ids[e.bluffer] << ',' << e.victim
        << ',' << log.agent_ids[e.victim] << ',' << e.epoch_start << ','
        << e.switch_index << ',' << e.reentry_index << '\n';
  }
  CommandOutput out;
  out.csv = csv.str();
  out.extras.emplace_back(".session.csv", session_csv(log));
  out.summary = std::to_string(events.size()) + " bluff event(s)";
  return out;
}

CommandOutput cmd_layout() {
  std::ostringstream table;
  table << "field,offset,width\n";
  for (const LayoutField& f : encoding_layout()) {
    table << f.name << ',' << f.offset << ',' << f.width << '\n';
  }
  CommandOutput out;
  out.csv = table.str();
  return out;
}

}  // namespace lerpa
