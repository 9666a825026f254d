#pragma once

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "osort/core.hpp"
#include "osort/trace.hpp"

namespace osort {

// Instrumentation an algorithm may report after a run.
struct AlgorithmCounters {
  std::optional<std::size_t> switches;  // algorithm-specific switch notion
  std::uint64_t steps = 0;              // probe steps (linear probing)
  bool failed = false;
  bool wraparound = false;
};

// An online placement rule. `place` is told each item once and answers with
// the cell that receives it; it never sees future items.
class OnlineAlgorithm {
 public:
  virtual ~OnlineAlgorithm() = default;

  virtual std::string_view name() const = 0;
  // Number of cells of the array this instance fills.
  virtual std::size_t capacity() const = 0;
  virtual std::size_t place(const Item& item) = 0;
  virtual AlgorithmCounters counters(const PlacementArray& final_array) const;
};

// What an adversary may observe: occupancy and values, never algorithm state.
struct ArrayView {
  const PlacementArray& array;
  std::optional<std::size_t> last_index;
};

class Adversary {
 public:
  virtual ~Adversary() = default;
  virtual Item next(const ArrayView& view) = 0;
};

// Replays a fixed sequence; ignores the view.
class StreamAdversary final : public Adversary {
 public:
  explicit StreamAdversary(const InputSequence& seq) : seq_(seq) {}
  Item next(const ArrayView& view) override;

 private:
  const InputSequence& seq_;
  std::size_t pos_ = 0;
};

struct GameRecord {
  PlacementArray array;
  InputSequence input;             // realized stream, in arrival order
  std::vector<std::size_t> cells;  // cells[i] received input.items[i]
};

// Runs `n` rounds: adversary proposes, algorithm places. Any algorithm bug
// surfaces as OccupiedCell / IndexOutOfRange from the array.
GameRecord play(OnlineAlgorithm& algorithm, Adversary& adversary, std::size_t n,
                ItemKind kind, std::size_t dim = 1);
GameRecord play(OnlineAlgorithm& algorithm, const InputSequence& seq);

}  // namespace osort
