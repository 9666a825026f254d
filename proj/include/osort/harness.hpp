#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "osort/game.hpp"

namespace osort {

struct ExperimentConfig {
  std::string algorithm = "uniform";
  std::string adversary = "uniform-labels";
  std::string metric;  // empty: the algorithm's natural metric
  std::vector<std::size_t> ns{1024};
  std::size_t trials = 1;
  std::uint64_t seed = 1;
  double gamma = 1.0;
  std::size_t k_types = 4;
  std::size_t dim = 2;
  double c = 1.0;          // failure exponent of the bucket algorithms
  std::size_t depth = 0;   // sortunifk recursion depth, 0 = k0(n)
  std::string out;         // CSV path, empty = stdout
};

// Item kind each registered algorithm / adversary works on.
ItemKind algorithm_kind(const std::string& id);
ItemKind adversary_kind(const std::string& id, ItemKind algorithm);
std::vector<std::string> algorithm_ids();
std::vector<std::string> adversary_ids();

// Throws InvalidConfig for unknown ids or inconsistent combinations.
void validate(const ExperimentConfig& config);
Metric metric_for(const ExperimentConfig& config);

// "1024", "2^10", "2^10..2^14" (every power), comma separated.
std::vector<std::size_t> parse_n_list(const std::string& text);

// Flat key=value lines; keys mirror the CLI flags (algo, adversary, metric,
// n, trials, seed, gamma, k-types, dim, c, depth, out). `#` starts a comment.
void apply_config_entry(ExperimentConfig& config, const std::string& key, const std::string& value);
ExperimentConfig parse_config(std::istream& in);
ExperimentConfig parse_config_file(const std::string& path);

std::uint64_t trial_seed(std::uint64_t seed, std::size_t n, std::size_t trial);

std::unique_ptr<OnlineAlgorithm> make_algorithm(const ExperimentConfig& config, std::size_t n);

// Either a fixed stream or an adaptive adversary.
struct AdversarySource {
  std::optional<InputSequence> stream;
  std::unique_ptr<Adversary> adaptive;
  ItemKind kind = ItemKind::Real;
  std::size_t dim = 1;
};
AdversarySource make_adversary(const ExperimentConfig& config, std::size_t n, std::uint64_t seed);

struct MatchReport {
  std::size_t n = 0;
  std::size_t trial = 0;
  std::uint64_t seed = 0;
  std::optional<double> cost;
  std::optional<double> opt;
  std::string opt_kind;  // exact | formula | heuristic | grid-lower-bound
  std::optional<double> ratio;
  bool failed = false;
  bool wraparound = false;
  std::optional<std::size_t> switches;
  std::uint64_t steps = 0;
  double ms = 0.0;
  std::string error;
};

struct OptValue {
  double value = 0.0;
  std::string kind;
};
// OPT for a finished input: formula for reals and labels, Held-Karp for up to
// 15 distinct points, the 2-opt heuristic above that.
OptValue compute_opt(const InputSequence& seq);

// One full game; module errors end up in report.error.
MatchReport run_match(const ExperimentConfig& config, std::size_t n, std::size_t trial,
                      InputSequence* input_out = nullptr);

inline constexpr const char* kCsvHeader =
    "n,trial,seed,cost,opt,opt_kind,ratio,failed,wraparound,switches,steps,ms";
std::string csv_row(const MatchReport& report);

struct ScalingFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r2 = 0.0;
  std::vector<std::pair<std::size_t, double>> medians;  // (n, median cost)
};

// Least squares of log(median cost) on log n. Groups whose median is not
// positive are left out; fewer than 4 distinct n left throws InsufficientData.
ScalingFit fit_scaling(const std::vector<MatchReport>& reports);
ScalingFit fit_scaling(const std::vector<std::pair<std::size_t, double>>& medians);

double median(std::vector<double> values);

}  // namespace osort
