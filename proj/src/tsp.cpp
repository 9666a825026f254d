#include "osort/tsp.hpp"

#include <algorithm>
#include <cmath>
#include <unordered_set>

namespace osort {

namespace {

const Point& as_point(const Item& item) {
  const auto* p = std::get_if<Point>(&item);
  if (!p) throw Error(ErrorCode::MixedItemKinds, "expected a point item");
  return *p;
}

std::size_t checked_pow(std::size_t base, std::size_t exp) {
  std::size_t out = 1;
  for (std::size_t i = 0; i < exp; ++i) {
    if (base != 0 && out > SIZE_MAX / base) {
      throw Error(ErrorCode::InvalidConfig, "grid too large");
    }
    out *= base;
  }
  return out;
}

}  // namespace

void require_unit_box(const Point& p, std::size_t dim) {
  if (p.dim() != dim) throw Error(ErrorCode::MixedItemKinds, "point dimension mismatch");
  for (double c : p.coords) {
    if (!(c >= 0.0 && c <= 1.0)) throw Error(ErrorCode::OutOfUnitBox, to_string(Item{p}));
  }
}

GridIndexer::GridIndexer(std::size_t dim, std::size_t resolution)
    : dim_(dim), t_(resolution) {
  if (dim == 0 || resolution == 0) {
    throw Error(ErrorCode::InvalidConfig, "grid needs dim >= 1 and resolution >= 1");
  }
  checked_pow(t_, dim_);
}

std::size_t GridIndexer::box_count() const { return checked_pow(t_, dim_); }

std::size_t GridIndexer::box(const Point& p) const {
  require_unit_box(p, dim_);
  return box(p.coords);
}

std::size_t GridIndexer::box(std::span<const double> coords) const {
  std::size_t id = 0;
  std::size_t stride = 1;
  for (std::size_t i = 0; i < dim_; ++i) {
    const double c = coords[i];
    if (!(c >= 0.0 && c <= 1.0)) throw Error(ErrorCode::OutOfUnitBox, "coordinate outside [0,1]");
    const auto cell = std::min(static_cast<std::size_t>(c * static_cast<double>(t_)), t_ - 1);
    id += cell * stride;
    stride *= t_;
  }
  return id;
}

BlockShape TspAbsolute::shape_for(std::size_t level_size, std::size_t dim) {
  const std::size_t t = integer_root_ceil(level_size, static_cast<unsigned>(dim + 1));
  const std::size_t boxes = checked_pow(std::max<std::size_t>(t, 1), dim);
  return BlockShape{boxes, 2 * boxes, std::max<std::size_t>(t, 1)};
}

TspAbsolute::TspAbsolute(std::size_t n, std::size_t dim)
    : n_(n),
      dim_(dim),
      scheme_(0, n, [dim](std::size_t size) { return shape_for(size, dim); }) {
  if (dim == 0) throw Error(ErrorCode::InvalidConfig, "dim must be >= 1");
}

std::size_t TspAbsolute::place(const Item& item) {
  const Point& p = as_point(item);
  require_unit_box(p, dim_);
  return scheme_.place([&](const BlockShape& shape) {
    return GridIndexer(dim_, shape.resolution).box(p.coords);
  });
}

std::size_t competitive_resolution(std::size_t n) {
  if (n < 3) return 1;
  const double nd = static_cast<double>(n);
  return std::max<std::size_t>(1, static_cast<std::size_t>(std::llround(std::sqrt(nd / std::log(nd)))));
}

TspCompetitive::TspCompetitive(std::size_t n, std::size_t dim)
    : TspCompetitive(n, dim, competitive_resolution(n)) {}

TspCompetitive::TspCompetitive(std::size_t n, std::size_t dim, std::size_t resolution)
    : grid_(dim, resolution), uniform_(n) {}

std::size_t TspCompetitive::place(const Item& item) {
  return uniform_.place_label(grid_.box(as_point(item)));
}

std::size_t TspCompetitive::box_switches(const PlacementArray& final_array) const {
  std::size_t switches = 0;
  std::optional<std::size_t> prev;
  for (const auto& cell : final_array.cells()) {
    if (!cell) continue;
    const std::size_t b = grid_.box(as_point(*cell));
    if (prev && *prev != b) ++switches;
    prev = b;
  }
  return switches;
}

AlgorithmCounters TspCompetitive::counters(const PlacementArray& final_array) const {
  AlgorithmCounters c;
  c.switches = box_switches(final_array);
  return c;
}

std::size_t touched_boxes(std::span<const Item> points, const GridIndexer& grid) {
  std::unordered_set<std::size_t> boxes;
  for (const auto& item : points) boxes.insert(grid.box(as_point(item)));
  return boxes.size();
}

double opt_lower_bound_grid(std::span<const Item> points, std::size_t dim,
                            std::size_t resolution, double floor) {
  const GridIndexer grid(dim, resolution);
  const double k = static_cast<double>(touched_boxes(points, grid));
  const double denom = std::ldexp(static_cast<double>(resolution), static_cast<int>(dim));
  return std::max(floor, k / denom);
}

}  // namespace osort
