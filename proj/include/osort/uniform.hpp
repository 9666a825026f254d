#pragma once

#include <cstddef>
#include <optional>
#include <unordered_map>
#include <variant>
#include <vector>

#include "osort/core.hpp"
#include "osort/game.hpp"

namespace osort {

// Greedy cursor algorithm for the uniform metric. Each label keeps a cursor
// into the array; an item goes to its label's cursor, which then moves one
// cell right. A new label, or a cursor that points at an occupied cell or has
// run off the right edge, is re-seated at the midpoint of the largest gap.
//
// With `limit` < capacity this is the large-array variant: the array has
// `capacity` cells but only `limit` items arrive.
class UniformCursor : public OnlineAlgorithm {
 public:
  explicit UniformCursor(std::size_t n) : UniformCursor(n, n) {}
  UniformCursor(std::size_t capacity, std::size_t limit);

  std::string_view name() const override { return "uniform"; }
  std::size_t capacity() const override { return gaps_.capacity(); }
  std::size_t place(const Item& item) override;
  std::size_t place_label(Label label);
  // Cell the next item with this label would go to.
  std::optional<std::size_t> peek(Label label) const;

  const GapIndex& gaps() const { return gaps_; }
  // Number of times a cursor was (re)seated at a gap midpoint.
  std::size_t reseat_count() const { return reseats_; }

 private:
  GapIndex gaps_;
  std::size_t limit_;
  std::size_t placed_ = 0;
  std::size_t reseats_ = 0;
  std::unordered_map<Label, std::optional<std::size_t>> cursors_;
};

// Array of ceil(gamma * n) cells, stopped after n items.
class UniformLarge final : public UniformCursor {
 public:
  UniformLarge(std::size_t n, double gamma);
  std::string_view name() const override { return "uniform-large"; }
  double gamma() const { return gamma_; }

 private:
  double gamma_;
};

// Cost bound K * (2 + log2(gamma / (gamma - 1))) for the large-array variant.
double uniform_large_bound(std::size_t distinct_labels, double gamma);

// Block-doubling alternative: the level is cut into 2K blocks, each label
// fills its own block, and when a (K+1)-th label shows up K doubles and every
// block of the current level is halved. Exhausted levels recurse on the free
// cells.
class UniformBlocks final : public OnlineAlgorithm {
 public:
  explicit UniformBlocks(std::size_t n);

  std::string_view name() const override { return "uniform-blocks"; }
  std::size_t capacity() const override { return n_; }
  std::size_t place(const Item& item) override;
  std::size_t place_label(Label label);

  std::size_t k_estimate() const { return k_; }
  std::size_t depth() const { return depth_; }

 private:
  struct Block {
    std::size_t begin = 0;  // virtual indices
    std::size_t size = 0;
    std::size_t fill = 0;
    bool assigned = false;
  };

  void start_level(std::vector<std::size_t> cells);
  void split_blocks();
  std::optional<std::size_t> take_empty_block();

  std::size_t n_;
  std::size_t placed_ = 0;
  std::size_t k_ = 2;
  std::size_t depth_ = 0;
  std::vector<Label> seen_;
  std::vector<std::size_t> cells_;  // virtual -> physical
  std::vector<Block> blocks_;       // in array order
  std::unordered_map<Label, std::size_t> current_;  // label -> block index
};

// --- Coin game -------------------------------------------------------------

struct RemoveCoin {
  std::size_t pile;  // index into CoinGame::piles()
};
struct SplitLargest {};
using CoinMove = std::variant<RemoveCoin, SplitLargest>;

// Piles of coins; the adversary removes single coins or splits the largest
// pile in halves (floor / ceil) while fewer than K piles exist.
class CoinGame {
 public:
  CoinGame(std::size_t coins, std::size_t max_piles);

  // Piles sorted in nonincreasing order.
  const std::vector<std::size_t>& piles() const { return piles_; }
  std::size_t max_piles() const { return max_piles_; }
  std::size_t split_count() const { return splits_; }
  std::size_t removal_count() const { return removals_; }
  bool finished() const { return piles_.empty(); }

  bool can_split() const;
  // Throws IllegalMove.
  void step(const CoinMove& move);
  // Removes a coin from some pile of the given size; returns the move made.
  RemoveCoin remove_from_size(std::size_t size);

 private:
  void normalize();

  std::vector<std::size_t> piles_;
  std::size_t max_piles_;
  std::size_t splits_ = 0;
  std::size_t removals_ = 0;
};

// Exact maximum number of splits over all adversary plays starting from one
// pile of n coins. Limited to n <= 32, K <= 4 (StateSpaceTooLarge).
std::size_t coin_game_max_splits(std::size_t n, std::size_t k);

// Replays the cursor algorithm on `labels` in an array of `capacity` cells and
// mirrors every placement as coin-game moves on a game with `max_piles`
// piles. Throws IllegalMove if the mirror is not a legal game.
struct CoinTranscript {
  std::vector<CoinMove> moves;
  std::size_t splits = 0;
  std::size_t cost = 0;                      // switches of the final array
  bool piles_matched_gaps = true;            // after every placement
};
CoinTranscript coin_transcript(const std::vector<Label>& labels, std::size_t capacity,
                               std::size_t max_piles);

}  // namespace osort
