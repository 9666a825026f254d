#include "osort/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "osort/adversaries.hpp"
#include "osort/oracles.hpp"
#include "osort/sort1d.hpp"
#include "osort/stochastic.hpp"
#include "osort/tsp.hpp"
#include "osort/uniform.hpp"

namespace osort {

namespace {

const std::map<std::string, ItemKind>& algorithm_table() {
  static const std::map<std::string, ItemKind> table{
      {"sort1d", ItemKind::Real},          {"sort1d-fixed", ItemKind::Real},
      {"uniform", ItemKind::Label},        {"uniform-blocks", ItemKind::Label},
      {"uniform-large", ItemKind::Label},  {"tsp-absolute", ItemKind::Point},
      {"tsp-competitive", ItemKind::Point}, {"sortunif1", ItemKind::Real},
      {"sortunifk", ItemKind::Real},       {"linprobe", ItemKind::Real},
  };
  return table;
}

// Adversaries without a fixed kind follow the algorithm.
const std::map<std::string, std::optional<ItemKind>>& adversary_table() {
  static const std::map<std::string, std::optional<ItemKind>> table{
      {"sort1d-distribution", ItemKind::Real},
      {"uniform", ItemKind::Real},
      {"uniform-epochs", ItemKind::Label},
      {"uniform-labels", ItemKind::Label},
      {"friendly-cell", ItemKind::Label},
      {"grid2d", ItemKind::Point},
      {"uniform-points", ItemKind::Point},
      {"constant", std::nullopt},
  };
  return table;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

template <class T>
T parse_number(const std::string& key, const std::string& value) {
  std::istringstream in(value);
  T out{};
  in >> out;
  if (!in || !(in >> std::ws).eof()) {
    throw Error(ErrorCode::InvalidConfig, key + ": cannot parse '" + value + "'");
  }
  return out;
}

std::size_t parse_power(const std::string& token) {
  const std::string t = trim(token);
  if (t.rfind("2^", 0) == 0) {
    const auto e = parse_number<unsigned>("n", t.substr(2));
    if (e >= 63) throw Error(ErrorCode::InvalidConfig, "n too large: " + t);
    return std::size_t{1} << e;
  }
  return parse_number<std::size_t>("n", t);
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

Item constant_item(ItemKind kind, std::size_t dim) {
  switch (kind) {
    case ItemKind::Real: return Item{0.5};
    case ItemKind::Label: return Item{Label{0}};
    case ItemKind::Point: return Item{Point{std::vector<double>(dim, 0.5)}};
  }
  return Item{0.5};
}

}  // namespace

ItemKind algorithm_kind(const std::string& id) {
  const auto it = algorithm_table().find(id);
  if (it == algorithm_table().end()) throw Error(ErrorCode::InvalidConfig, "unknown algorithm " + id);
  return it->second;
}

ItemKind adversary_kind(const std::string& id, ItemKind algorithm) {
  const auto it = adversary_table().find(id);
  if (it == adversary_table().end()) throw Error(ErrorCode::InvalidConfig, "unknown adversary " + id);
  return it->second.value_or(algorithm);
}

std::vector<std::string> algorithm_ids() {
  std::vector<std::string> out;
  for (const auto& [id, kind] : algorithm_table()) out.push_back(id);
  return out;
}

std::vector<std::string> adversary_ids() {
  std::vector<std::string> out;
  for (const auto& [id, kind] : adversary_table()) out.push_back(id);
  return out;
}

Metric metric_for(const ExperimentConfig& config) {
  const ItemKind kind = algorithm_kind(config.algorithm);
  std::string m = config.metric;
  if (m.empty()) {
    m = kind == ItemKind::Real ? "abs1d" : kind == ItemKind::Label ? "uniform" : "euclidean";
  }
  if (m == "abs1d") return Abs1d{};
  if (m == "uniform") return Uniform{};
  if (m == "euclidean") return Euclidean{config.dim};
  throw Error(ErrorCode::InvalidConfig, "unknown metric " + m);
}

void validate(const ExperimentConfig& config) {
  const ItemKind kind = algorithm_kind(config.algorithm);
  if (adversary_kind(config.adversary, kind) != kind) {
    throw Error(ErrorCode::InvalidConfig,
                config.adversary + " does not produce the items " + config.algorithm + " sorts");
  }
  const Metric metric = metric_for(config);
  const bool metric_ok = (kind == ItemKind::Real && std::holds_alternative<Abs1d>(metric)) ||
                         (kind == ItemKind::Label && std::holds_alternative<Uniform>(metric)) ||
                         (kind == ItemKind::Point && std::holds_alternative<Euclidean>(metric));
  if (!metric_ok) {
    throw Error(ErrorCode::InvalidConfig, metric_name(metric) + " metric does not fit " + config.algorithm);
  }
  if (config.ns.empty()) throw Error(ErrorCode::InvalidConfig, "empty n list");
  if (config.trials == 0) throw Error(ErrorCode::InvalidConfig, "trials must be >= 1");
  if (config.dim == 0) throw Error(ErrorCode::InvalidConfig, "dim must be >= 1");
  if (!(config.gamma >= 1.0)) throw Error(ErrorCode::InvalidConfig, "gamma must be >= 1");
  if (config.algorithm == "linprobe" && !(config.gamma > 1.0)) {
    throw Error(ErrorCode::InvalidConfig, "linprobe needs gamma > 1");
  }
  if (config.adversary == "grid2d" && config.dim != 2) {
    throw Error(ErrorCode::InvalidConfig, "grid2d needs dim = 2");
  }
}

std::vector<std::size_t> parse_n_list(const std::string& text) {
  std::vector<std::size_t> out;
  std::istringstream in(text);
  std::string token;
  while (std::getline(in, token, ',')) {
    token = trim(token);
    if (token.empty()) continue;
    const auto dots = token.find("..");
    if (dots == std::string::npos) {
      out.push_back(parse_power(token));
      continue;
    }
    const std::string a = trim(token.substr(0, dots));
    const std::string b = trim(token.substr(dots + 2));
    if (a.rfind("2^", 0) != 0 || b.rfind("2^", 0) != 0) {
      throw Error(ErrorCode::InvalidConfig, "ranges must be powers of two: " + token);
    }
    const auto lo = parse_number<unsigned>("n", a.substr(2));
    const auto hi = parse_number<unsigned>("n", b.substr(2));
    if (lo > hi || hi >= 63) throw Error(ErrorCode::InvalidConfig, "bad range " + token);
    for (unsigned e = lo; e <= hi; ++e) out.push_back(std::size_t{1} << e);
  }
  if (out.empty()) throw Error(ErrorCode::InvalidConfig, "empty n list");
  return out;
}

void apply_config_entry(ExperimentConfig& config, const std::string& key, const std::string& value) {
  if (key == "algo") config.algorithm = value;
  else if (key == "adversary") config.adversary = value;
  else if (key == "metric") config.metric = value;
  else if (key == "n") config.ns = parse_n_list(value);
  else if (key == "trials") config.trials = parse_number<std::size_t>(key, value);
  else if (key == "seed") config.seed = parse_number<std::uint64_t>(key, value);
  else if (key == "gamma") config.gamma = parse_number<double>(key, value);
  else if (key == "k-types") config.k_types = parse_number<std::size_t>(key, value);
  else if (key == "dim") config.dim = parse_number<std::size_t>(key, value);
  else if (key == "c") config.c = parse_number<double>(key, value);
  else if (key == "depth") config.depth = parse_number<std::size_t>(key, value);
  else if (key == "out") config.out = value;
  else throw Error(ErrorCode::InvalidConfig, "unknown key " + key);
}

ExperimentConfig parse_config(std::istream& in) {
  ExperimentConfig config;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw Error(ErrorCode::InvalidConfig, "line " + std::to_string(lineno) + ": expected key=value");
    }
    apply_config_entry(config, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
  }
  return config;
}

ExperimentConfig parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::InvalidConfig, "cannot open " + path);
  return parse_config(in);
}

std::uint64_t trial_seed(std::uint64_t seed, std::size_t n, std::size_t trial) {
  return seed ^ splitmix64(splitmix64(static_cast<std::uint64_t>(n)) ^ static_cast<std::uint64_t>(trial));
}

std::unique_ptr<OnlineAlgorithm> make_algorithm(const ExperimentConfig& config, std::size_t n) {
  const std::string& id = config.algorithm;
  if (id == "sort1d") return std::make_unique<Sort1d>(n);
  if (id == "sort1d-fixed") return std::make_unique<Sort1dFixed>(n, 0.0, 1.0);
  if (id == "uniform") return std::make_unique<UniformCursor>(n);
  if (id == "uniform-blocks") return std::make_unique<UniformBlocks>(n);
  if (id == "uniform-large") return std::make_unique<UniformLarge>(n, config.gamma);
  if (id == "tsp-absolute") return std::make_unique<TspAbsolute>(n, config.dim);
  if (id == "tsp-competitive") return std::make_unique<TspCompetitive>(n, config.dim);
  if (id == "sortunif1") return std::make_unique<SortUnif>(n, 1, config.c);
  if (id == "sortunifk") {
    const std::size_t k = config.depth > 0 ? config.depth : (n >= 16 ? recursion_depth_k0(n) : 1);
    return std::make_unique<SortUnif>(n, k, config.c);
  }
  if (id == "linprobe") return std::make_unique<LinearProbing>(n, config.gamma);
  throw Error(ErrorCode::InvalidConfig, "unknown algorithm " + id);
}

AdversarySource make_adversary(const ExperimentConfig& config, std::size_t n, std::uint64_t seed) {
  AdversarySource src;
  const ItemKind kind = adversary_kind(config.adversary, algorithm_kind(config.algorithm));
  src.kind = kind;
  src.dim = kind == ItemKind::Point ? config.dim : 1;
  const std::string& id = config.adversary;
  if (id == "sort1d-distribution") src.stream = adv_sort1d_distribution(n, seed);
  else if (id == "uniform") src.stream = sample_uniform(n, seed);
  else if (id == "uniform-epochs") src.stream = adv_uniform_epochs(n, config.k_types, config.gamma, seed);
  else if (id == "uniform-labels") src.stream = sample_labels(n, config.k_types, seed);
  else if (id == "uniform-points") src.stream = sample_uniform_points(n, config.dim, seed);
  else if (id == "friendly-cell") src.adaptive = std::make_unique<FriendlyCellAdversary>(config.k_types);
  else if (id == "grid2d") src.adaptive = std::make_unique<Grid2dAdversary>(n);
  else if (id == "constant") {
    InputSequence seq;
    seq.kind = kind;
    seq.dim = src.dim;
    seq.adversary = id;
    seq.seed = seed;
    seq.items.assign(n, constant_item(kind, src.dim));
    src.stream = std::move(seq);
  } else {
    throw Error(ErrorCode::InvalidConfig, "unknown adversary " + id);
  }
  return src;
}

OptValue compute_opt(const InputSequence& seq) {
  switch (seq.kind) {
    case ItemKind::Real: return {opt_1d(seq.items), "formula"};
    case ItemKind::Label: return {static_cast<double>(opt_uniform(seq.items)), "formula"};
    case ItemKind::Point: {
      std::set<std::vector<double>> distinct;
      for (const auto& item : seq.items) {
        distinct.insert(std::get<Point>(item).coords);
        if (distinct.size() > kHeldKarpLimit) break;
      }
      if (distinct.size() <= kHeldKarpLimit) return {opt_tsp_exact(seq.items), "exact"};
      return {opt_tsp_heuristic(seq.items), "heuristic"};
    }
  }
  return {};
}

MatchReport run_match(const ExperimentConfig& config, std::size_t n, std::size_t trial,
                      InputSequence* input_out) {
  MatchReport report;
  report.n = n;
  report.trial = trial;
  report.seed = trial_seed(config.seed, n, trial);
  const auto start = std::chrono::steady_clock::now();
  try {
    validate(config);
    auto algorithm = make_algorithm(config, n);
    AdversarySource src = make_adversary(config, n, report.seed);
    GameRecord record = src.stream ? play(*algorithm, *src.stream)
                                   : play(*algorithm, *src.adaptive, n, src.kind, src.dim);
    record.input.seed = report.seed;
    if (record.input.adversary.empty()) record.input.adversary = config.adversary;
    report.cost = cost(record.array, metric_for(config));
    const AlgorithmCounters counters = algorithm->counters(record.array);
    report.failed = counters.failed;
    report.wraparound = counters.wraparound;
    report.steps = counters.steps;
    report.switches = counters.switches ? counters.switches : std::optional(switch_count(record.array));
    if (n > 0) {
      const OptValue opt = compute_opt(record.input);
      report.opt = opt.value;
      report.opt_kind = opt.kind;
      if (opt.value > 0.0) report.ratio = *report.cost / opt.value;
    }
    if (input_out) *input_out = std::move(record.input);
  } catch (const Error& e) {
    report.cost.reset();
    report.opt.reset();
    report.ratio.reset();
    report.error = e.what();
  }
  report.ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return report;
}

std::string csv_row(const MatchReport& r) {
  std::ostringstream out;
  auto opt_num = [&](const std::optional<double>& v) {
    if (v) out << format_double(*v);
  };
  out << r.n << ',' << r.trial << ',' << r.seed << ',';
  opt_num(r.cost);
  out << ',';
  opt_num(r.opt);
  out << ',' << r.opt_kind << ',';
  opt_num(r.ratio);
  out << ',' << (r.failed ? 1 : 0) << ',' << (r.wraparound ? 1 : 0) << ',';
  if (r.switches) out << *r.switches;
  char ms[32];
  std::snprintf(ms, sizeof ms, "%.3f", r.ms);
  out << ',' << r.steps << ',' << ms;
  return out.str();
}

double median(std::vector<double> values) {
  if (values.empty()) throw Error(ErrorCode::InsufficientData, "median of nothing");
  const std::size_t mid = values.size() / 2;
  std::nth_element(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(mid), values.end());
  const double upper = values[mid];
  if (values.size() % 2 == 1) return upper;
  const double lower = *std::max_element(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(mid));
  return (lower + upper) / 2.0;
}

ScalingFit fit_scaling(const std::vector<MatchReport>& reports) {
  std::map<std::size_t, std::vector<double>> groups;
  for (const auto& r : reports) {
    if (r.cost && r.error.empty() && !r.failed) groups[r.n].push_back(*r.cost);
  }
  std::vector<std::pair<std::size_t, double>> medians;
  for (auto& [n, costs] : groups) medians.emplace_back(n, median(std::move(costs)));
  return fit_scaling(medians);
}

ScalingFit fit_scaling(const std::vector<std::pair<std::size_t, double>>& medians) {
  ScalingFit fit;
  std::map<std::size_t, double> by_n;
  for (const auto& [n, m] : medians) {
    if (n > 0 && m > 0.0) by_n[n] = m;
  }
  if (by_n.size() < 4) {
    throw Error(ErrorCode::InsufficientData,
                std::to_string(by_n.size()) + " usable n values, need 4");
  }
  std::vector<double> xs, ys;
  for (const auto& [n, m] : by_n) {
    fit.medians.emplace_back(n, m);
    xs.push_back(std::log(static_cast<double>(n)));
    ys.push_back(std::log(m));
  }
  const double k = static_cast<double>(xs.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= k;
  my /= k;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
    syy += (ys[i] - my) * (ys[i] - my);
  }
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  fit.r2 = syy > 0.0 ? (sxy * sxy) / (sxx * syy) : 1.0;
  return fit;
}

}  // namespace osort
