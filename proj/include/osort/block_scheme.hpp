#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "osort/error.hpp"

namespace osort {

// Box/block counts chosen for a (sub)problem of a given size.
struct BlockShape {
  std::size_t boxes = 1;
  std::size_t blocks = 2;
  std::size_t resolution = 1;  // grid side for multi-dimensional boxes
};

using ShapePolicy = std::function<BlockShape(std::size_t level_size)>;

// floor(sqrt(n)) boxes, twice as many blocks.
BlockShape sqrt_floor_shape(std::size_t n);
// ceil(sqrt(n)) boxes, twice as many blocks.
BlockShape sqrt_ceil_shape(std::size_t n);
// Smallest integer t with t^exponent >= n.
std::size_t integer_root_ceil(std::size_t n, unsigned exponent);

// Box-to-block placement over a set of free cells. Each box owns at most one
// non-full block, filled left to right. When no empty block is left, the
// remaining free cells become a new virtual contiguous array (a translation
// table of physical indices) and the scheme restarts on it.
class BlockScheme {
 public:
  BlockScheme(std::vector<std::size_t> cells, ShapePolicy policy);
  // The contiguous physical range [offset, offset + size).
  BlockScheme(std::size_t offset, std::size_t size, ShapePolicy policy);

  std::size_t remaining() const { return remaining_; }
  std::size_t depth() const { return depth_; }
  const BlockShape& shape() const { return shape_; }
  std::size_t level_size() const { return cells_.size(); }

  // `box_of(shape)` maps the current item to a box in [0, shape.boxes). It is
  // called again if the scheme has to descend a level first.
  template <class BoxOf>
  std::size_t place(BoxOf&& box_of) {
    if (remaining_ == 0) throw Error(ErrorCode::ArrayFull, "block scheme exhausted");
    while (true) {
      if (base_case_) {
        --remaining_;
        return cells_[base_cursor_++];
      }
      const std::size_t box = box_of(static_cast<const BlockShape&>(shape_));
      if (box >= shape_.boxes) throw Error(ErrorCode::RangeViolation, "box out of range");
      if (auto cell = try_place(box)) {
        --remaining_;
        return *cell;
      }
      descend();
    }
  }

 private:
  static constexpr std::size_t kNone = SIZE_MAX;
  static constexpr std::size_t kBaseCaseBelow = 4;

  void start_level();
  std::size_t block_begin(std::size_t b) const { return b * block_size_; }
  std::size_t block_end(std::size_t b) const {
    return b + 1 == num_blocks_ ? cells_.size() : (b + 1) * block_size_;
  }
  std::optional<std::size_t> try_place(std::size_t box);
  void descend();

  std::vector<std::size_t> cells_;  // virtual index -> physical cell
  ShapePolicy policy_;
  BlockShape shape_;
  std::size_t remaining_ = 0;
  std::size_t depth_ = 0;

  bool base_case_ = false;
  std::size_t base_cursor_ = 0;

  std::size_t num_blocks_ = 0;
  std::size_t block_size_ = 0;
  std::size_t next_block_ = 0;
  std::vector<std::size_t> box_block_;   // box -> current block or kNone
  std::vector<std::size_t> block_fill_;  // cells used per block
};

}  // namespace osort
