#include "osort/uniform.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <numeric>

namespace osort {

namespace {

Label as_label(const Item& item) {
  const auto* label = std::get_if<Label>(&item);
  if (!label) throw Error(ErrorCode::MixedItemKinds, "expected a label item");
  return *label;
}

}  // namespace

// --- UniformCursor ---------------------------------------------------------

UniformCursor::UniformCursor(std::size_t capacity, std::size_t limit)
    : gaps_(capacity), limit_(limit) {
  if (limit > capacity) throw Error(ErrorCode::InvalidConfig, "limit exceeds capacity");
}

std::size_t UniformCursor::place(const Item& item) { return place_label(as_label(item)); }

std::size_t UniformCursor::place_label(Label label) {
  if (placed_ >= limit_) throw Error(ErrorCode::ArrayFull, "item limit reached");
  auto& cursor = cursors_[label];
  if (!cursor || !gaps_.is_free(*cursor)) {
    cursor = gaps_.largest_midpoint();
    ++reseats_;
  }
  const std::size_t cell = *cursor;
  gaps_.occupy(cell);
  ++placed_;
  // Past the right edge the cursor is stale and gets re-seated on next use.
  cursor = cell + 1 < gaps_.capacity() ? std::optional<std::size_t>(cell + 1) : std::nullopt;
  return cell;
}

std::optional<std::size_t> UniformCursor::peek(Label label) const {
  if (placed_ >= limit_) return std::nullopt;
  const auto it = cursors_.find(label);
  if (it != cursors_.end() && it->second && gaps_.is_free(*it->second)) return it->second;
  return gaps_.largest_midpoint();
}

UniformLarge::UniformLarge(std::size_t n, double gamma)
    : UniformCursor(ceil_scaled(gamma, n), n), gamma_(gamma) {
  if (!(gamma >= 1.0)) throw Error(ErrorCode::InvalidConfig, "gamma must be >= 1");
}

double uniform_large_bound(std::size_t distinct_labels, double gamma) {
  return static_cast<double>(distinct_labels) * (2.0 + std::log2(gamma / (gamma - 1.0)));
}

// --- UniformBlocks ---------------------------------------------------------

UniformBlocks::UniformBlocks(std::size_t n) : n_(n) {
  std::vector<std::size_t> cells(n);
  std::iota(cells.begin(), cells.end(), std::size_t{0});
  start_level(std::move(cells));
}

std::size_t UniformBlocks::place(const Item& item) { return place_label(as_label(item)); }

void UniformBlocks::start_level(std::vector<std::size_t> cells) {
  cells_ = std::move(cells);
  current_.clear();
  blocks_.clear();
  const std::size_t size = cells_.size();
  if (size == 0) return;
  const std::size_t count = std::min(2 * k_, size);
  const std::size_t width = size / count;
  for (std::size_t b = 0; b < count; ++b) {
    const std::size_t begin = b * width;
    const std::size_t end = b + 1 == count ? size : begin + width;
    blocks_.push_back(Block{begin, end - begin, 0, false});
  }
}

void UniformBlocks::split_blocks() {
  std::vector<Block> next;
  next.reserve(2 * blocks_.size());
  std::vector<std::size_t> remap(blocks_.size());
  for (std::size_t i = 0; i < blocks_.size(); ++i) {
    const Block& b = blocks_[i];
    const std::size_t half = b.size / 2;
    Block first{b.begin, half, std::min(b.fill, half), false};
    Block second{b.begin + half, b.size - half, b.fill > half ? b.fill - half : 0, false};
    first.assigned = first.fill > 0;
    second.assigned = second.fill > 0;
    const std::size_t first_index = next.size();
    if (first.size > 0) next.push_back(first);
    const std::size_t second_index = next.size();
    if (second.size > 0) next.push_back(second);
    // A label keeps filling whichever half holds its frontier.
    remap[i] = (second.fill > 0 || first.size == 0) ? second_index : first_index;
  }
  for (auto& [label, block] : current_) block = remap[block];
  blocks_ = std::move(next);
}

std::optional<std::size_t> UniformBlocks::take_empty_block() {
  for (std::size_t b = 0; b < blocks_.size(); ++b) {
    if (!blocks_[b].assigned && blocks_[b].fill == 0) {
      blocks_[b].assigned = true;
      return b;
    }
  }
  return std::nullopt;
}

std::size_t UniformBlocks::place_label(Label label) {
  if (placed_ >= n_) throw Error(ErrorCode::ArrayFull, "more than n items");
  if (std::find(seen_.begin(), seen_.end(), label) == seen_.end()) {
    seen_.push_back(label);
    if (seen_.size() > k_) {
      while (seen_.size() > k_) k_ *= 2;
      split_blocks();
    }
  }
  while (true) {
    if (auto it = current_.find(label); it != current_.end()) {
      Block& b = blocks_[it->second];
      if (b.fill < b.size) {
        ++placed_;
        return cells_[b.begin + b.fill++];
      }
    }
    if (auto b = take_empty_block()) {
      current_[label] = *b;
      Block& block = blocks_[*b];
      ++placed_;
      return cells_[block.begin + block.fill++];
    }
    std::vector<std::size_t> free_cells;
    for (const Block& b : blocks_) {
      for (std::size_t v = b.begin + b.fill; v < b.begin + b.size; ++v) {
        free_cells.push_back(cells_[v]);
      }
    }
    ++depth_;
    start_level(std::move(free_cells));
  }
}

// --- Coin game -------------------------------------------------------------

CoinGame::CoinGame(std::size_t coins, std::size_t max_piles) : max_piles_(max_piles) {
  if (coins > 0) piles_.push_back(coins);
}

bool CoinGame::can_split() const {
  return !piles_.empty() && piles_.size() < max_piles_ && piles_.front() >= 2;
}

void CoinGame::normalize() {
  std::erase(piles_, std::size_t{0});
  std::sort(piles_.begin(), piles_.end(), std::greater<>());
}

void CoinGame::step(const CoinMove& move) {
  if (const auto* remove = std::get_if<RemoveCoin>(&move)) {
    if (remove->pile >= piles_.size()) {
      throw Error(ErrorCode::IllegalMove, "no pile " + std::to_string(remove->pile));
    }
    --piles_[remove->pile];
    ++removals_;
  } else {
    if (!can_split()) {
      throw Error(ErrorCode::IllegalMove,
                  "split with " + std::to_string(piles_.size()) + " piles, K = " +
                      std::to_string(max_piles_));
    }
    const std::size_t largest = piles_.front();
    piles_.front() = largest / 2;
    piles_.push_back(largest - largest / 2);
    ++splits_;
  }
  normalize();
}

RemoveCoin CoinGame::remove_from_size(std::size_t size) {
  const auto it = std::find(piles_.begin(), piles_.end(), size);
  if (it == piles_.end()) {
    throw Error(ErrorCode::IllegalMove, "no pile of size " + std::to_string(size));
  }
  const RemoveCoin move{static_cast<std::size_t>(it - piles_.begin())};
  step(move);
  return move;
}

namespace {

using PileState = std::vector<std::uint8_t>;  // nonincreasing

class MaxSplitSearch {
 public:
  explicit MaxSplitSearch(std::size_t k) : k_(k) {}

  std::size_t best(const PileState& state) {
    if (state.empty()) return 0;
    if (auto it = memo_.find(state); it != memo_.end()) return it->second;
    std::size_t result = 0;
    // Removing from either of two equal piles leads to the same state.
    for (std::size_t i = 0; i < state.size(); ++i) {
      if (i > 0 && state[i] == state[i - 1]) continue;
      PileState next = state;
      if (--next[i] == 0) next.erase(next.begin() + static_cast<std::ptrdiff_t>(i));
      std::sort(next.begin(), next.end(), std::greater<>());
      result = std::max(result, best(next));
    }
    if (state.size() < k_ && state.front() >= 2) {
      PileState next = state;
      const std::uint8_t largest = next.front();
      next.front() = static_cast<std::uint8_t>(largest / 2);
      next.push_back(static_cast<std::uint8_t>(largest - largest / 2));
      std::sort(next.begin(), next.end(), std::greater<>());
      result = std::max(result, 1 + best(next));
    }
    memo_.emplace(state, result);
    return result;
  }

 private:
  std::size_t k_;
  std::map<PileState, std::size_t> memo_;
};

}  // namespace

std::size_t coin_game_max_splits(std::size_t n, std::size_t k) {
  if (n > 32 || k > 4) {
    throw Error(ErrorCode::StateSpaceTooLarge,
                "n = " + std::to_string(n) + ", K = " + std::to_string(k));
  }
  if (n == 0 || k == 0) return 0;
  MaxSplitSearch search(k);
  return search.best(PileState{static_cast<std::uint8_t>(n)});
}

CoinTranscript coin_transcript(const std::vector<Label>& labels, std::size_t capacity,
                               std::size_t max_piles) {
  CoinTranscript out;
  UniformCursor algo(capacity, std::min(capacity, labels.size()));
  GapIndex mirror(capacity);
  CoinGame game(capacity, max_piles);
  PlacementArray array(capacity);
  for (Label label : labels) {
    const std::size_t cell = algo.place_label(label);
    const auto gap = mirror.gap_containing(cell);
    if (!gap) throw Error(ErrorCode::OccupiedCell, "cell " + std::to_string(cell));
    if (cell == gap->start) {
      out.moves.emplace_back(game.remove_from_size(gap->length));
    } else {
      if (cell != gap->start + gap->length / 2 || game.piles().front() != gap->length) {
        throw Error(ErrorCode::IllegalMove, "placement is neither a removal nor a split");
      }
      out.moves.emplace_back(SplitLargest{});
      game.step(SplitLargest{});
      out.moves.emplace_back(game.remove_from_size(gap->length - gap->length / 2));
    }
    mirror.occupy(cell);
    array.place(cell, label);

    std::vector<std::size_t> lengths;
    for (const Gap& g : mirror.gaps()) lengths.push_back(g.length);
    std::sort(lengths.begin(), lengths.end(), std::greater<>());
    if (lengths != game.piles()) out.piles_matched_gaps = false;
  }
  out.splits = game.split_count();
  out.cost = switch_count(array);
  return out;
}

}  // namespace osort
