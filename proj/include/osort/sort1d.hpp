#pragma once

#include <optional>

#include "osort/block_scheme.hpp"
#include "osort/game.hpp"

namespace osort {

// Deterministic block sorter for reals from a known interval [lo, hi], on a
// contiguous cell range. This is the SortDet building block of the bucketed
// algorithms as well as a standalone algorithm.
class Sort1dFixed final : public OnlineAlgorithm {
 public:
  Sort1dFixed(std::size_t size, double lo, double hi, ShapePolicy policy = sqrt_floor_shape);
  Sort1dFixed(std::size_t offset, std::size_t size, double lo, double hi,
              ShapePolicy policy = sqrt_floor_shape);

  std::string_view name() const override { return "sort1d-fixed"; }
  std::size_t capacity() const override { return offset_ + size_; }
  std::size_t remaining() const { return scheme_.remaining(); }

  // Throws RangeViolation for x outside [lo, hi].
  std::size_t place(const Item& item) override;
  std::size_t place_value(double x);

 private:
  std::size_t offset_;
  std::size_t size_;
  double lo_;
  double hi_;
  BlockScheme scheme_;
};

// Online sorting of arbitrary reals. The value range is estimated on the
// fly: values are shifted by the first item and kept inside [-2^q, 2^q],
// with q raised as needed while box-to-block assignments are kept by index.
class Sort1d final : public OnlineAlgorithm {
 public:
  explicit Sort1d(std::size_t n);

  std::string_view name() const override { return "sort1d"; }
  std::size_t capacity() const override { return n_; }
  std::size_t place(const Item& item) override;
  std::size_t place_value(double x);

  // Current exponent q, unset until two distinct values have been seen.
  std::optional<int> exponent() const { return q_; }
  std::size_t recursion_depth() const { return scheme_ ? scheme_->depth() : 0; }

 private:
  std::size_t box_of(double shifted, std::size_t boxes) const;

  std::size_t n_;
  std::size_t placed_ = 0;
  double origin_ = 0.0;
  double min_seen_ = 0.0;
  double max_seen_ = 0.0;
  std::optional<int> q_;
  std::optional<BlockScheme> scheme_;
};

// ceil(log2(r)) for r > 0, exact at powers of two.
int ceil_log2(double r);

}  // namespace osort
