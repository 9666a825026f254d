#pragma once

#include <cstddef>
#include <cstdint>
#include <set>
#include <vector>

#include "osort/game.hpp"
#include "osort/rng.hpp"

namespace osort {

// Three-way coin with m = floor(sqrt n): with probability 1/(2m) the rest is
// all 0s, with 1/(2m) all 1s, otherwise an epoch 0, 1/m, ..., (m-1)/m follows.
// Requires n >= 4.
struct Sort1dInstance {
  InputSequence sequence;
  std::size_t epochs = 0;  // epochs started, the last one may be cut off
};
Sort1dInstance adv_sort1d_instance(std::size_t n, std::uint64_t seed);
InputSequence adv_sort1d_distribution(std::size_t n, std::uint64_t seed);
// Exact expected number of epochs started.
double expected_sort1d_epochs(std::size_t n);

// Epoch length for K labels and `free_cells` unoccupied cells, at least 1.
std::size_t uniform_epoch_length(std::size_t free_cells, std::size_t k);

// Epochs of one label each, labels uniform on {0..K-1}. With gamma > 1 the
// array has ceil(gamma n) cells and a prefix 0, 1, ..., K-1 comes first.
// Throws KTooSmall for K < 3.
InputSequence adv_uniform_epochs(std::size_t n, std::size_t k, double gamma, std::uint64_t seed);

// i.i.d. uniform on (0,1].
InputSequence sample_uniform(std::size_t n, std::uint64_t seed);
// i.i.d. uniform points of [0,1)^d.
InputSequence sample_uniform_points(std::size_t n, std::size_t dim, std::uint64_t seed);
// i.i.d. uniform labels on {0..K-1}.
InputSequence sample_labels(std::size_t n, std::size_t k, std::uint64_t seed);

// Adaptive: always asks for the label (of 0..K-1) that currently has the
// fewest friendly cells, i.e. free cells whose nearest occupied neighbours
// include it. Ties go to the smallest label.
class FriendlyCellAdversary final : public Adversary {
 public:
  explicit FriendlyCellAdversary(std::size_t k) : k_(k) {}
  Item next(const ArrayView& view) override;

  // Friendly cell counts per label for the given array.
  static std::vector<std::size_t> friendly_counts(const PlacementArray& array, std::size_t k);

 private:
  std::size_t k_;
};

// Adaptive 2-D adversary on the t x t grid {0, 1/t, ..., (t-1)/t}^2 with
// t = max(2, round(n^(1/3))). Phase one emits the lexicographically smallest
// grid point that has no copy next to an empty cell; once every grid point
// has one, phase two emits (0,0) until the end.
class Grid2dAdversary final : public Adversary {
 public:
  explicit Grid2dAdversary(std::size_t n);
  Item next(const ArrayView& view) override;

  std::size_t resolution() const { return t_; }
  bool in_phase_two() const { return phase_two_; }
  // Number of items emitted in phase one.
  std::size_t phase_one_count() const { return phase_one_; }

 private:
  std::size_t point_id(const Item& item) const;
  bool has_empty_neighbour(const PlacementArray& array, std::size_t cell) const;
  void refresh(const PlacementArray& array, std::size_t cell);
  void observe(const PlacementArray& array, std::size_t cell);

  std::size_t n_;
  std::size_t t_;
  bool phase_two_ = false;
  std::size_t phase_one_ = 0;
  std::vector<char> good_cell_;        // holds a grid point and has an empty neighbour
  std::vector<std::size_t> good_count_;  // per grid point
  std::set<std::size_t> unsatisfied_;
};

}  // namespace osort
