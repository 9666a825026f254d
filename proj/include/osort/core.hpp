#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "osort/error.hpp"

namespace osort {

using Label = std::uint64_t;

struct Point {
  std::vector<double> coords;

  std::size_t dim() const { return coords.size(); }
  friend bool operator==(const Point&, const Point&) = default;
};

// A single input item: a real, a point in R^d, or a type label.
using Item = std::variant<double, Point, Label>;

enum class ItemKind { Real, Point, Label };

ItemKind kind_of(const Item& item);
std::string to_string(const Item& item);

struct Abs1d {};
struct Euclidean {
  std::size_t dim = 2;
};
struct Uniform {};

using Metric = std::variant<Abs1d, Euclidean, Uniform>;

std::string metric_name(const Metric& metric);

// Distance under `metric`. Throws MixedItemKinds when the items do not fit it.
double distance(const Metric& metric, const Item& a, const Item& b);

// Sums with pairwise (cascade) summation.
double pairwise_sum(std::span<const double> values);

// ceil(factor * n) without picking up rounding noise from the product.
std::size_t ceil_scaled(double factor, std::size_t n);
// floor(factor * n), same treatment.
std::size_t floor_scaled(double factor, std::size_t n);

// The array that every game writes into. Cells are write-once.
class PlacementArray {
 public:
  explicit PlacementArray(std::size_t capacity);

  std::size_t capacity() const { return cells_.size(); }
  std::size_t filled_count() const { return filled_; }
  bool complete() const { return filled_ == cells_.size(); }

  bool occupied(std::size_t index) const;
  const std::optional<Item>& at(std::size_t index) const;
  const std::vector<std::optional<Item>>& cells() const { return cells_; }

  // Throws IndexOutOfRange or OccupiedCell; the array is unchanged on error.
  void place(std::size_t index, Item item);

 private:
  std::vector<std::optional<Item>> cells_;
  std::size_t filled_ = 0;
};

// Sum of distances between each occupied cell and the next occupied cell to
// its right; empty cells are skipped.
double cost(const PlacementArray& array, const Metric& metric);

// Change in `cost` caused by writing `item` into the empty cell `index`.
double marginal_cost(const PlacementArray& array, std::size_t index,
                     const Item& item, const Metric& metric);

// Number of consecutive occupied pairs (skipping empties) holding unequal items.
std::size_t switch_count(const PlacementArray& array);

struct Gap {
  std::size_t start = 0;
  std::size_t length = 0;
  friend bool operator==(const Gap&, const Gap&) = default;
};

struct GapSummary {
  std::size_t gap_count = 0;
  std::vector<std::size_t> gap_lengths;  // left to right
  std::optional<Gap> largest_gap;        // leftmost among ties
};

GapSummary gap_summary(const PlacementArray& array);

// Maximal empty runs of a range of cells, maintained under single-cell
// occupation in O(log m).
class GapIndex {
 public:
  explicit GapIndex(std::size_t capacity);

  std::size_t capacity() const { return capacity_; }
  std::size_t gap_count() const { return by_start_.size(); }
  bool is_free(std::size_t index) const;
  std::optional<Gap> gap_containing(std::size_t index) const;

  // Largest gap, leftmost among ties.
  std::optional<Gap> largest() const;
  // Cell start + floor(length / 2) of the largest gap.
  std::optional<std::size_t> largest_midpoint() const;

  void occupy(std::size_t index);

  std::vector<Gap> gaps() const;

 private:
  struct BySizeThenStart {
    bool operator()(const Gap& a, const Gap& b) const {
      if (a.length != b.length) return a.length > b.length;
      return a.start < b.start;
    }
  };

  std::size_t capacity_;
  std::map<std::size_t, std::size_t> by_start_;  // start -> length
  std::set<Gap, BySizeThenStart> by_size_;
};

}  // namespace osort
