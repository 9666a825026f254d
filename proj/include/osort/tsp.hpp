#pragma once

#include <cstddef>
#include <span>

#include "osort/block_scheme.hpp"
#include "osort/game.hpp"
#include "osort/uniform.hpp"

namespace osort {

// Flattened box id of a point of [0,1]^d on a t^d grid. Coordinates equal to
// 1 fall into the last box along their axis.
class GridIndexer {
 public:
  GridIndexer(std::size_t dim, std::size_t resolution);

  std::size_t dim() const { return dim_; }
  std::size_t resolution() const { return t_; }
  std::size_t box_count() const;

  // Throws OutOfUnitBox (or MixedItemKinds for a wrong dimension).
  std::size_t box(const Point& p) const;
  std::size_t box(std::span<const double> coords) const;

 private:
  std::size_t dim_;
  std::size_t t_;
};

void require_unit_box(const Point& p, std::size_t dim);

// Grid version of the block sorter: boxes are cells of a t^d grid with
// t = ceil(n'^(1/(d+1))), and the level has 2 t^d blocks.
class TspAbsolute final : public OnlineAlgorithm {
 public:
  TspAbsolute(std::size_t n, std::size_t dim);

  std::string_view name() const override { return "tsp-absolute"; }
  std::size_t capacity() const override { return n_; }
  std::size_t place(const Item& item) override;

  static BlockShape shape_for(std::size_t level_size, std::size_t dim);

 private:
  std::size_t n_;
  std::size_t dim_;
  BlockScheme scheme_;
};

// Resolution round(sqrt(n / ln n)), at least 1.
std::size_t competitive_resolution(std::size_t n);

// Points in the same grid box are treated as equal and handed to the
// uniform-metric cursor algorithm.
class TspCompetitive final : public OnlineAlgorithm {
 public:
  TspCompetitive(std::size_t n, std::size_t dim);
  TspCompetitive(std::size_t n, std::size_t dim, std::size_t resolution);

  std::string_view name() const override { return "tsp-competitive"; }
  std::size_t capacity() const override { return uniform_.capacity(); }
  std::size_t place(const Item& item) override;

  const GridIndexer& grid() const { return grid_; }
  // Switches between adjacent items from different boxes.
  AlgorithmCounters counters(const PlacementArray& final_array) const override;
  std::size_t box_switches(const PlacementArray& final_array) const;

 private:
  GridIndexer grid_;
  UniformCursor uniform_;
};

// Certified OPT lower bound max(floor, K / (2^d t)), with K the number of
// touched boxes at resolution t. `floor` is the assumed minimum optimum.
double opt_lower_bound_grid(std::span<const Item> points, std::size_t dim,
                            std::size_t resolution, double floor = 1.0);
std::size_t touched_boxes(std::span<const Item> points, const GridIndexer& grid);

}  // namespace osort
