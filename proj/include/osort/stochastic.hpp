#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

#include "osort/game.hpp"
#include "osort/sort1d.hpp"

namespace osort {

// ceil(x * M) for 0 < x <= 1, in {1..M}. Throws DomainViolation.
std::size_t bucket_hash(double x, std::size_t buckets);
// x * M - h + 1 for h = bucket_hash(x, M), kept inside (0, 1].
double bucket_child_value(double x, std::size_t buckets);

// Cells [0, M*C) are M buckets of C cells each, the rest is the backyard.
struct BucketLayout {
  std::size_t n = 0;
  double c = 1.0;
  double alpha = 0.0;
  double beta = 1.0;
  std::size_t buckets = 1;           // M
  std::size_t bucket_capacity = 0;   // C
  std::size_t backyard = 0;

  std::size_t bucket_begin(std::size_t bucket) const { return (bucket - 1) * bucket_capacity; }
  std::size_t backyard_begin() const { return buckets * bucket_capacity; }
};

// alpha/beta of the one-level algorithm.
BucketLayout sortunif1_layout(std::size_t n, double c = 1.0);
// alpha/beta of a level that recurses `k - 1` more times (k >= 2).
BucketLayout sortunifk_layout(std::size_t n, std::size_t k, double c = 1.0);
// Turns (alpha, beta) into integer sizes.
BucketLayout make_layout(std::size_t n, double c, double alpha, double beta);

struct RecursionPlan {
  std::size_t depth = 1;
  std::size_t cutoff = 64;
  std::vector<BucketLayout> levels;  // outermost first
};

inline constexpr std::size_t kRecursionCutoff = 64;

RecursionPlan recursion_plan(std::size_t n, std::size_t k, double c = 1.0);

// x0 = 4 + ln n - sqrt(ln^2 n + 8 ln n), k0 = round(log2(2 / x0)), at least 1.
double recursion_x0(double n);
std::size_t recursion_depth_k0(std::size_t n);

// Bucket + backyard algorithm for i.i.d. uniform values on (0,1]. With k = 1
// every bucket and the backyard run the fixed-range block sorter; with k >= 2
// buckets recurse on the rescaled value x*M - h + 1 while they are at least
// kRecursionCutoff cells large.
class SortUnif final : public OnlineAlgorithm {
 public:
  SortUnif(std::size_t n, std::size_t k, double c = 1.0);
  ~SortUnif() override;
  SortUnif(const SortUnif&) = delete;
  SortUnif& operator=(const SortUnif&) = delete;

  std::string_view name() const override { return k_ == 1 ? "sortunif1" : "sortunifk"; }
  std::size_t capacity() const override { return n_; }
  std::size_t place(const Item& item) override;
  std::size_t place_value(double x);

  std::size_t depth() const { return k_; }
  const BucketLayout& layout() const;
  bool failed() const;
  AlgorithmCounters counters(const PlacementArray& final_array) const override;

  class Node;

 private:
  std::size_t n_;
  std::size_t k_;
  std::size_t placed_ = 0;
  std::vector<char> occupied_;
  std::unique_ptr<Node> root_;
};

// Linear probing into ceil(gamma n) cells with the hashed region
// [0, floor(beta n)), beta = gamma - (gamma - 1) / 10.
class LinearProbing final : public OnlineAlgorithm {
 public:
  LinearProbing(std::size_t n, double gamma);

  std::string_view name() const override { return "linprobe"; }
  std::size_t capacity() const override { return size_; }
  std::size_t place(const Item& item) override;
  // x in [0, 1]; throws DomainViolation otherwise and ArrayFull after n items.
  std::size_t place_value(double x);

  double gamma() const { return gamma_; }
  double alpha() const { return (gamma_ - 1.0) / 10.0; }
  double beta() const { return gamma_ - alpha(); }
  std::size_t hashed_size() const { return hashed_; }
  std::size_t home(double x) const;
  std::size_t items() const { return n_; }

  const std::vector<std::uint64_t>& steps() const { return steps_; }
  std::uint64_t total_steps() const;
  bool wraparound() const { return wraparound_; }
  const std::vector<std::size_t>& placements() const { return cells_; }
  const std::vector<double>& values() const { return values_; }
  AlgorithmCounters counters(const PlacementArray& final_array) const override;

 private:
  std::size_t find_free(std::size_t from);

  std::size_t n_;
  double gamma_;
  std::size_t size_;
  std::size_t hashed_;
  std::vector<std::size_t> next_;  // union-find "next free cell", size_ = none
  std::vector<std::uint64_t> steps_;
  std::vector<std::size_t> cells_;
  std::vector<double> values_;
  bool wraparound_ = false;
};

struct CostDecomposition {
  double merge = 0.0;
  double extend = 0.0;
  double separation = 0.0;
  double total() const { return merge + extend + separation; }
};

// Attributes every adjacency of the final array: a pair of physically adjacent
// cells goes to `merge` if the later of the two was placed left of the other,
// to `extend` if right of it; pairs across an empty gap go to `separation`.
// Throws IncompleteRun if the run has not placed all n items.
CostDecomposition linprobe_cost_decomposition(const LinearProbing& run);

}  // namespace osort
