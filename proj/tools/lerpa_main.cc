// lerpa: experiment runner for TD(lambda) agents playing Lerpa.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "lerpa/experiments.h"
#include "lerpa/selftest.h"
#include "lerpa/session_csv.h"

namespace {

using lerpa::CommandOutput;
using lerpa::ExperimentConfig;

std::vector<lerpa::AgentParams> parse_grid(const std::string& text,
                                           const lerpa::AgentParams& base) {
  // "alpha:lambda:epsilon,alpha:lambda:epsilon,..."
  std::vector<lerpa::AgentParams> grid;
  std::stringstream entries(text);
  std::string entry;
  while (std::getline(entries, entry, ',')) {
    std::stringstream fields(entry);
    std::string a, l, e;
    if (!std::getline(fields, a, ':') || !std::getline(fields, l, ':') ||
        !std::getline(fields, e, ':')) {
      throw std::invalid_argument("bad --grid entry '" + entry + "'");
    }
    lerpa::AgentParams p = base;
    p.alpha = std::stod(a);
    p.lambda = std::stod(l);
    p.epsilon = std::stod(e);
    p.validate();
    grid.push_back(p);
  }
  return grid;
}

std::string sibling_path(const std::string& out, const std::string& suffix) {
  std::string stem = out;
  if (stem.size() > 4 && stem.compare(stem.size() - 4, 4, ".csv") == 0) {
    stem.resize(stem.size() - 4);
  }
  return stem + suffix;
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write " + path);
  f << content;
}

int emit(const CommandOutput& out, const std::string& path) {
  if (path.empty()) {
    std::cout << out.csv;
  } else {
    write_file(path, out.csv);
    for (const auto& [suffix, content] : out.extras) {
      write_file(sibling_path(path, suffix), content);
    }
  }
  if (!out.summary.empty()) std::cerr << out.summary << '\n';
  return 0;
}

int run_selftest(std::uint64_t seed, bool corrupt) {
  lerpa::SelftestOptions opt;
  opt.seed = seed;
  opt.corrupt_gradient = corrupt;
  bool ok = true;
  for (const auto& r : lerpa::run_selftest(opt)) {
    std::cout << r.name << ' ' << (r.passed ? "PASS" : "FAIL")
              << " max_error=" << r.max_error;
    if (!r.detail.empty()) std::cout << " (" << r.detail << ')';
    std::cout << '\n';
    ok = ok && r.passed;
  }
  return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Lerpa multi-agent TD(lambda) laboratory"};
  app.set_config("--config", "", "key=value file mirroring the flags");

  std::string command;
  ExperimentConfig cfg;
  std::string fold_update = "on";
  std::string explore_knock = "on";
  std::string clamp = "off";
  std::string smoothing = "block";
  std::string grid;
  int courage = cfg.params.courage_hands;
  bool corrupt_gradient = false;
  const std::map<std::string, bool> on_off{{"on", true}, {"off", false}};

  app.add_option("command", command, "experiment to run")
      ->required()
      ->check(CLI::IsMember({"learn", "coward", "tune", "mas", "adapt", "solve",
                             "bluff", "layout", "selftest"}));
  app.add_option("--hands", cfg.hands, "hands (or predealt repeats) to play");
  app.add_option("--seed", cfg.seed, "random seed");
  app.add_option("--alpha", cfg.params.alpha, "learning rate");
  app.add_option("--lambda", cfg.params.lambda, "trace decay");
  app.add_option("--epsilon", cfg.params.epsilon, "exploration probability");
  auto* courage_opt =
      app.add_option("--courage", courage, "hands of forced knocking");
  app.add_option("--window", cfg.window, "averaging window");
  app.add_option("--predealt", cfg.predealt_path, "predealt deal file");
  app.add_option("--k", cfg.k, "bluff re-entry window");
  app.add_option("--out", cfg.out, "output CSV path (default stdout)");
  app.add_option("--fold-update", fold_update, "train on folded hands")
      ->check(CLI::IsMember({"on", "off"}));
  app.add_option("--smoothing", smoothing, "block or sliding averages")
      ->check(CLI::IsMember({"block", "sliding"}));
  app.add_option("--warmup", cfg.warmup,
                 "free-play training hands before predealt repeats");
  app.add_option("--grid", grid, "tune grid: a:l:e,a:l:e,a:l:e,a:l:e");
  app.add_option("--explore-knock", explore_knock,
                 "apply epsilon to the knock decision")
      ->check(CLI::IsMember({"on", "off"}));
  app.add_option("--clamp-outputs", clamp,
                 "clamp outputs to [0,1] before expected chips")
      ->check(CLI::IsMember({"on", "off"}));
  app.add_flag("--corrupt-gradient", corrupt_gradient)->group("");

  CLI11_PARSE(app, argc, argv);

  try {
    cfg.name = command;
    cfg.params.courage_hands = courage;
    cfg.courage_set = courage_opt->count() > 0;
    cfg.params.fold_update = on_off.at(fold_update);
    cfg.params.explore_knock = on_off.at(explore_knock);
    cfg.params.clamp_outputs = on_off.at(clamp);
    cfg.smoothing = smoothing == "block" ? lerpa::Smoothing::kBlock
                                         : lerpa::Smoothing::kSliding;
    cfg.params.validate();
    if (!grid.empty()) cfg.grid = parse_grid(grid, cfg.params);

    if (command == "selftest") return run_selftest(cfg.seed, corrupt_gradient);
    if (command == "layout") return emit(lerpa::cmd_layout(), cfg.out);
    if (command == "learn") return emit(lerpa::cmd_learn(cfg), cfg.out);
    if (command == "coward") return emit(lerpa::cmd_coward(cfg), cfg.out);
    if (command == "tune") return emit(lerpa::cmd_tune(cfg), cfg.out);
    if (command == "mas") return emit(lerpa::cmd_mas(cfg), cfg.out);
    if (command == "adapt") return emit(lerpa::cmd_adapt(cfg), cfg.out);
    if (command == "solve") return emit(lerpa::cmd_solve(cfg), cfg.out);
    if (command == "bluff") return emit(lerpa::cmd_bluff(cfg), cfg.out);
  } catch (const std::invalid_argument& e) {
    std::cerr << "lerpa: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "lerpa: error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
