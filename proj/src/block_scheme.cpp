#include "osort/block_scheme.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace osort {

std::size_t integer_root_ceil(std::size_t n, unsigned exponent) {
  if (n <= 1) return n;
  auto pow_at_least = [&](std::size_t t) {
    // t^exponent >= n, without overflow
    std::size_t acc = 1;
    for (unsigned i = 0; i < exponent; ++i) {
      if (acc > n / t) return true;
      acc *= t;
    }
    return acc >= n;
  };
  auto t = static_cast<std::size_t>(
      std::pow(static_cast<double>(n), 1.0 / static_cast<double>(exponent)));
  t = std::max<std::size_t>(t, 1);
  while (t > 1 && pow_at_least(t - 1)) --t;
  while (!pow_at_least(t)) ++t;
  return t;
}

BlockShape sqrt_floor_shape(std::size_t n) {
  std::size_t r = integer_root_ceil(n, 2);
  if (r * r > n) --r;
  r = std::max<std::size_t>(r, 1);
  return BlockShape{r, 2 * r, r};
}

BlockShape sqrt_ceil_shape(std::size_t n) {
  const std::size_t r = std::max<std::size_t>(integer_root_ceil(n, 2), 1);
  return BlockShape{r, 2 * r, r};
}

BlockScheme::BlockScheme(std::vector<std::size_t> cells, ShapePolicy policy)
    : cells_(std::move(cells)), policy_(std::move(policy)), remaining_(cells_.size()) {
  start_level();
}

BlockScheme::BlockScheme(std::size_t offset, std::size_t size, ShapePolicy policy)
    : cells_(size), policy_(std::move(policy)), remaining_(size) {
  std::iota(cells_.begin(), cells_.end(), offset);
  start_level();
}

void BlockScheme::start_level() {
  const std::size_t n = cells_.size();
  base_case_ = n < kBaseCaseBelow;
  base_cursor_ = 0;
  if (base_case_) {
    shape_ = BlockShape{1, 1, 1};
    return;
  }
  shape_ = policy_(n);
  num_blocks_ = std::clamp<std::size_t>(shape_.blocks, 1, n);
  block_size_ = n / num_blocks_;  // the last block absorbs the remainder
  next_block_ = 0;
  box_block_.assign(shape_.boxes, kNone);
  block_fill_.assign(num_blocks_, 0);
}

std::optional<std::size_t> BlockScheme::try_place(std::size_t box) {
  std::size_t b = box_block_[box];
  if (b == kNone || block_begin(b) + block_fill_[b] == block_end(b)) {
    if (next_block_ == num_blocks_) return std::nullopt;
    b = next_block_++;
    box_block_[box] = b;
  }
  return cells_[block_begin(b) + block_fill_[b]++];
}

void BlockScheme::descend() {
  std::vector<std::size_t> next;
  next.reserve(remaining_);
  for (std::size_t b = 0; b < num_blocks_; ++b) {
    for (std::size_t v = block_begin(b) + block_fill_[b]; v < block_end(b); ++v) {
      next.push_back(cells_[v]);
    }
  }
  cells_ = std::move(next);
  ++depth_;
  start_level();
}

}  // namespace osort
