// Command line front end: run, scale, oracle, coin-game.
#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "osort/harness.hpp"
#include "osort/oracles.hpp"
#include "osort/trace.hpp"
#include "osort/tsp.hpp"
#include "osort/uniform.hpp"

namespace {

struct Flags {
  std::string config;
  std::string algo, adversary, metric, n, out, trace;
  std::size_t trials = 0, k_types = 0, dim = 0, depth = 0;
  std::uint64_t seed = 0;
  double gamma = 0.0, c = 0.0;
};

void add_experiment_flags(CLI::App* cmd, Flags& f) {
  cmd->add_option("--config", f.config, "key=value file; flags given on the command line win");
  cmd->add_option("--algo", f.algo, "algorithm id");
  cmd->add_option("--adversary", f.adversary, "adversary id");
  cmd->add_option("--metric", f.metric, "abs1d | euclidean | uniform");
  cmd->add_option("--n", f.n, "sizes, e.g. 1024,2^12 or 2^10..2^14");
  cmd->add_option("--trials", f.trials, "trials per n");
  cmd->add_option("--seed", f.seed, "base seed");
  cmd->add_option("--gamma", f.gamma, "array size factor");
  cmd->add_option("--k-types", f.k_types, "number of labels K");
  cmd->add_option("--dim", f.dim, "point dimension");
  cmd->add_option("--c", f.c, "failure exponent of the bucket algorithms");
  cmd->add_option("--depth", f.depth, "sortunifk depth, 0 = k0(n)");
  cmd->add_option("--out", f.out, "CSV output path (default stdout)");
  cmd->add_option("--trace", f.trace, "write each input as <prefix>-n<N>-t<T>.trace");
}

osort::ExperimentConfig build_config(CLI::App* cmd, const Flags& f) {
  osort::ExperimentConfig config = f.config.empty() ? osort::ExperimentConfig{}
                                                    : osort::parse_config_file(f.config);
  auto given = [&](const char* name) { return cmd->count(name) > 0; };
  if (given("--algo")) config.algorithm = f.algo;
  if (given("--adversary")) config.adversary = f.adversary;
  if (given("--metric")) config.metric = f.metric;
  if (given("--n")) config.ns = osort::parse_n_list(f.n);
  if (given("--trials")) config.trials = f.trials;
  if (given("--seed")) config.seed = f.seed;
  if (given("--gamma")) config.gamma = f.gamma;
  if (given("--k-types")) config.k_types = f.k_types;
  if (given("--dim")) config.dim = f.dim;
  if (given("--c")) config.c = f.c;
  if (given("--depth")) config.depth = f.depth;
  if (given("--out")) config.out = f.out;
  osort::validate(config);
  return config;
}

std::vector<osort::MatchReport> run_all(const osort::ExperimentConfig& config, const std::string& trace) {
  std::ofstream file;
  if (!config.out.empty()) {
    file.open(config.out);
    if (!file) throw osort::Error(osort::ErrorCode::InvalidConfig, "cannot write " + config.out);
  }
  std::ostream& out = config.out.empty() ? std::cout : file;
  out << osort::kCsvHeader << '\n';
  std::vector<osort::MatchReport> reports;
  for (std::size_t n : config.ns) {
    for (std::size_t t = 0; t < config.trials; ++t) {
      osort::InputSequence input;
      auto report = osort::run_match(config, n, t, trace.empty() ? nullptr : &input);
      if (!report.error.empty()) {
        std::cerr << "n=" << n << " trial=" << t << ": " << report.error << '\n';
      } else if (!trace.empty()) {
        osort::write_trace_file(trace + "-n" + std::to_string(n) + "-t" + std::to_string(t) + ".trace",
                                input);
      }
      out << osort::csv_row(report) << '\n';
      reports.push_back(std::move(report));
    }
  }
  return reports;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Online sorting experiments"};
  app.require_subcommand(1);

  Flags run_flags;
  auto* run = app.add_subcommand("run", "play matches and write one CSV row per match");
  add_experiment_flags(run, run_flags);

  Flags scale_flags;
  auto* scale = app.add_subcommand("scale", "n sweep plus a log-log fit of the median cost");
  add_experiment_flags(scale, scale_flags);

  std::string trace_path;
  std::size_t grid_t = 0;
  auto* oracle = app.add_subcommand("oracle", "offline optimum of a trace file");
  oracle->add_option("trace", trace_path, "trace file")->required();
  oracle->add_option("--grid-t", grid_t, "also print the grid lower bound at this resolution");

  std::size_t coins = 8, piles = 2;
  auto* coin = app.add_subcommand("coin-game", "exhaustive maximum number of splits");
  coin->add_option("--n", coins, "coins (<= 32)");
  coin->add_option("--k-types", piles, "maximum number of piles K (<= 4)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run) {
      const auto config = build_config(run, run_flags);
      const auto reports = run_all(config, run_flags.trace);
      for (const auto& r : reports) {
        if (!r.error.empty()) return 1;
      }
    } else if (*scale) {
      const auto config = build_config(scale, scale_flags);
      const auto reports = run_all(config, scale_flags.trace);
      const auto fit = osort::fit_scaling(reports);
      for (const auto& [n, m] : fit.medians) std::cerr << "n=" << n << " median=" << m << '\n';
      std::fprintf(stderr, "slope=%.6f intercept=%.6f r2=%.6f\n", fit.slope, fit.intercept, fit.r2);
    } else if (*oracle) {
      const auto seq = osort::read_trace_file(trace_path);
      const auto opt = osort::compute_opt(seq);
      std::printf("opt=%.17g opt_kind=%s\n", opt.value, opt.kind.c_str());
      if (grid_t > 0 && seq.kind == osort::ItemKind::Point) {
        std::printf("grid_lower_bound=%.17g\n", osort::opt_lower_bound_grid(seq.items, seq.dim, grid_t));
      }
    } else if (*coin) {
      std::printf("%zu\n", osort::coin_game_max_splits(coins, piles));
    }
  } catch (const osort::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
