#include <cmath>
#include <set>
#include <string>

#include "doctest.h"
#include "osort/rng.hpp"
#include "osort/uniform.hpp"

using namespace osort;

namespace {

InputSequence labels_of(const std::string& text) {
  InputSequence seq;
  seq.kind = ItemKind::Label;
  for (char ch : text) seq.items.emplace_back(Label(ch));
  return seq;
}

std::string repeat(const std::string& s, int times) {
  std::string out;
  for (int i = 0; i < times; ++i) out += s;
  return out;
}

std::size_t distinct(const std::vector<Label>& labels) {
  return std::set<Label>(labels.begin(), labels.end()).size();
}

ErrorCode code_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error thrown");
  return ErrorCode::ParseError;
}

}  // namespace

TEST_CASE("cursor examples") {
  UniformCursor first(8);
  CHECK(first.place_label(7) == 4);

  UniformCursor same(4);
  CHECK(cost(play(same, labels_of("aaaa")).array, Uniform{}) == 0.0);

  UniformCursor alt(8);
  const auto run = play(alt, labels_of("abababab"));
  CHECK(cost(run.array, Uniform{}) == 1.0);
  CHECK(cost(run.array, Uniform{}) <= 2.0 * 3.0);
}

TEST_CASE("cursor advances and reseats") {
  UniformCursor alg(8);
  CHECK(alg.place_label('a') == 4);
  CHECK(alg.peek('a') == 5);
  CHECK(alg.place_label('a') == 5);
  CHECK(alg.peek('b') == 2);  // midpoint of the largest gap [0,4)
  CHECK(alg.place_label('b') == 2);
  CHECK(alg.reseat_count() == 2);
}

TEST_CASE("cursor at the right edge goes stale") {
  UniformCursor alg(4);
  CHECK(alg.place_label('a') == 2);
  CHECK(alg.place_label('a') == 3);
  // the cursor ran off the end; the next item is re-seated
  CHECK(alg.place_label('a') == 1);
}

TEST_CASE("peek predicts place") {
  Rng rng(12);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = 1 + uniform_below(rng, 200);
    UniformCursor alg(n);
    for (std::size_t i = 0; i < n; ++i) {
      const Label y = uniform_below(rng, 5);
      const auto predicted = alg.peek(y);
      REQUIRE(predicted);
      CHECK(alg.place_label(y) == *predicted);
    }
    CHECK_FALSE(alg.peek(0));
  }
}

TEST_CASE("large array examples") {
  UniformLarge same(10, 2.0);
  CHECK(same.capacity() == 20);
  CHECK(cost(play(same, labels_of("aaaaaaaaaa")).array, Uniform{}) == 0.0);

  UniformLarge abc(12, 1.5);
  CHECK(abc.capacity() == 18);
  const auto run = play(abc, labels_of(repeat("abc", 4)));
  CHECK(run.array.filled_count() == 12);
  CHECK(cost(run.array, Uniform{}) == 2.0);
  CHECK(cost(run.array, Uniform{}) <= 3.0 * (2.0 + std::log2(3.0)));

  CHECK(uniform_large_bound(3, 2.0) == doctest::Approx(9.0));
  CHECK(UniformLarge(7, 1.25).capacity() == 9);
  CHECK(UniformLarge(8, 1.0).capacity() == 8);
  CHECK_THROWS_AS(UniformLarge(8, 0.9), Error);
}

TEST_CASE("hard bounds on random inputs") {
  Rng rng(77);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 2 + uniform_below(rng, 500);
    const std::size_t k = 1 + uniform_below(rng, 12);
    std::vector<Label> labels(n);
    for (auto& y : labels) y = uniform_below(rng, k);
    const double kk = static_cast<double>(distinct(labels));
    InputSequence seq;
    seq.kind = ItemKind::Label;
    for (Label y : labels) seq.items.emplace_back(y);

    UniformCursor alg(n);
    CHECK(cost(play(alg, seq).array, Uniform{}) <= kk * std::log2(static_cast<double>(n)));
    for (double gamma : {1.25, 2.0, 4.0}) {
      UniformLarge large(n, gamma);
      CHECK(cost(play(large, seq).array, Uniform{}) <= uniform_large_bound(distinct(labels), gamma));
    }
  }
}

TEST_CASE("block doubling examples") {
  UniformBlocks one(8);
  CHECK(cost(play(one, labels_of("aaaaaaaa")).array, Uniform{}) == 0.0);

  UniformBlocks two(8);
  const auto run = play(two, labels_of("aabb"));
  CHECK(run.array.filled_count() == 4);
  CHECK(cost(run.array, Uniform{}) == 1.0);

  UniformBlocks three(3);
  CHECK(cost(play(three, labels_of("abc")).array, Uniform{}) == 2.0);
  CHECK(three.k_estimate() == 4);
}

TEST_CASE("block doubling fills every cell") {
  Rng rng(31);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 1 + uniform_below(rng, 300);
    const std::size_t k = 1 + uniform_below(rng, 20);
    InputSequence seq;
    seq.kind = ItemKind::Label;
    for (std::size_t i = 0; i < n; ++i) seq.items.emplace_back(Label{uniform_below(rng, k)});
    UniformBlocks alg(n);
    CHECK(play(alg, seq).array.complete());
  }
}

TEST_CASE("coin game moves") {
  CoinGame game(8, 2);
  game.step(SplitLargest{});
  CHECK(game.piles() == std::vector<std::size_t>{4, 4});
  CHECK(code_of([&] { game.step(SplitLargest{}); }) == ErrorCode::IllegalMove);
  CHECK(game.split_count() == 1);
  game.step(RemoveCoin{1});
  CHECK(game.piles() == std::vector<std::size_t>{4, 3});
  CHECK_FALSE(game.can_split());
  CHECK(code_of([&] { game.step(RemoveCoin{5}); }) == ErrorCode::IllegalMove);

  CoinGame odd(5, 3);
  odd.step(SplitLargest{});
  CHECK(odd.piles() == std::vector<std::size_t>{3, 2});
}

TEST_CASE("coin game exhaustive values") {
  CHECK(coin_game_max_splits(2, 2) == 1);
  for (std::size_t n : {2u, 5u, 8u, 32u}) CHECK(coin_game_max_splits(n, 1) == 0);
  CHECK(coin_game_max_splits(16, 3) == 7);
  CHECK(coin_game_max_splits(16, 3) <= 12);
  // exhaustive search gives 3 for (8, 2), below the 6 = K log2 n ceiling
  CHECK(coin_game_max_splits(8, 2) == 3);
  CHECK(coin_game_max_splits(8, 4) == 6);
  CHECK(coin_game_max_splits(32, 4) == 12);
  CHECK(code_of([] { coin_game_max_splits(33, 2); }) == ErrorCode::StateSpaceTooLarge);
  CHECK(code_of([] { coin_game_max_splits(8, 5); }) == ErrorCode::StateSpaceTooLarge);
}

TEST_CASE("coin game bound holds on every searched state") {
  for (std::size_t n = 1; n <= 32; ++n) {
    const auto lg = static_cast<std::size_t>(std::floor(std::log2(static_cast<double>(n))));
    for (std::size_t k = 1; k <= 4; ++k) CHECK(coin_game_max_splits(n, k) <= k * lg);
  }
}

TEST_CASE("coin transcript mirrors the gaps") {
  Rng rng(2);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = 2 + uniform_below(rng, 60);
    const std::size_t k = 1 + uniform_below(rng, 5);
    std::vector<Label> labels(n);
    for (auto& y : labels) y = uniform_below(rng, k);
    const auto t = coin_transcript(labels, n, distinct(labels) + 1);
    CHECK(t.piles_matched_gaps);
    UniformCursor alg(n);
    InputSequence seq;
    seq.kind = ItemKind::Label;
    for (Label y : labels) seq.items.emplace_back(y);
    CHECK(t.cost == cost(play(alg, seq).array, Uniform{}));
  }
}

TEST_CASE("a run can cost more than its transcript splits") {
  // A new label re-seated into a gap of length one fills it without a split.
  const auto t = coin_transcript({'b', 'a', 'a'}, 3, 3);
  CHECK(t.piles_matched_gaps);
  CHECK(t.cost == 2);
  CHECK(t.splits == 1);
}
