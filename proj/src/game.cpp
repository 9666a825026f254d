#include "osort/game.hpp"

namespace osort {

AlgorithmCounters OnlineAlgorithm::counters(const PlacementArray&) const { return {}; }

Item StreamAdversary::next(const ArrayView&) {
  if (pos_ >= seq_.items.size()) {
    throw Error(ErrorCode::IndexOutOfRange, "stream exhausted");
  }
  return seq_.items[pos_++];
}

GameRecord play(OnlineAlgorithm& algorithm, Adversary& adversary, std::size_t n,
                ItemKind kind, std::size_t dim) {
  GameRecord record{PlacementArray(algorithm.capacity()), InputSequence{}, {}};
  record.input.kind = kind;
  record.input.dim = dim;
  record.input.items.reserve(n);
  record.cells.reserve(n);
  std::optional<std::size_t> last;
  for (std::size_t i = 0; i < n; ++i) {
    Item item = adversary.next(ArrayView{record.array, last});
    const std::size_t cell = algorithm.place(item);
    record.array.place(cell, item);
    record.input.items.push_back(std::move(item));
    record.cells.push_back(cell);
    last = cell;
  }
  return record;
}

GameRecord play(OnlineAlgorithm& algorithm, const InputSequence& seq) {
  StreamAdversary adversary(seq);
  GameRecord record = play(algorithm, adversary, seq.size(), seq.kind, seq.dim);
  record.input.adversary = seq.adversary;
  record.input.seed = seq.seed;
  return record;
}

}  // namespace osort
