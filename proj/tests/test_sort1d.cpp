#include <cmath>

#include "doctest.h"
#include "osort/rng.hpp"
#include "osort/sort1d.hpp"

using namespace osort;

namespace {

InputSequence real_stream(const std::vector<double>& values) {
  InputSequence seq;
  seq.kind = ItemKind::Real;
  for (double v : values) seq.items.emplace_back(v);
  return seq;
}

std::vector<double> array_values(const PlacementArray& a) {
  std::vector<double> out;
  for (std::size_t i = 0; i < a.capacity(); ++i) out.push_back(std::get<double>(*a.at(i)));
  return out;
}

}  // namespace

TEST_CASE("block shapes") {
  CHECK(sqrt_floor_shape(16).boxes == 4);
  CHECK(sqrt_floor_shape(16).blocks == 8);
  CHECK(sqrt_floor_shape(15).boxes == 3);
  CHECK(sqrt_ceil_shape(15).boxes == 4);
  CHECK(integer_root_ceil(64, 3) == 4);
  CHECK(integer_root_ceil(65, 3) == 5);
  CHECK(integer_root_ceil(1, 2) == 1);
}

TEST_CASE("fixed range replay n=4") {
  Sort1dFixed alg(4, 0.0, 1.0);
  const auto run = play(alg, real_stream({0.1, 0.2, 0.9, 0.95}));
  CHECK(run.cells == std::vector<std::size_t>{0, 1, 2, 3});
  CHECK(array_values(run.array) == std::vector<double>{0.1, 0.2, 0.9, 0.95});
  CHECK(cost(run.array, Abs1d{}) == doctest::Approx(0.85));
}

TEST_CASE("fixed range sorted input n=9") {
  std::vector<double> values;
  for (int k = 1; k <= 9; ++k) values.push_back(k / 9.0);
  Sort1dFixed alg(9, 0.0, 1.0);
  const auto run = play(alg, real_stream(values));
  CHECK(array_values(run.array) == values);
  CHECK(cost(run.array, Abs1d{}) == doctest::Approx(8.0 / 9.0));
  CHECK(cost(run.array, Abs1d{}) <= 4.0);
}

TEST_CASE("fixed range edge cases") {
  Sort1dFixed one(1, 0.0, 1.0);
  CHECK(cost(play(one, real_stream({0.3})).array, Abs1d{}) == 0.0);

  Sort1dFixed alg(8, 0.0, 1.0);
  CHECK_THROWS_AS(alg.place_value(1.5), Error);
  CHECK_THROWS_AS(alg.place_value(-0.1), Error);
  CHECK(alg.remaining() == 8);

  Sort1dFixed shifted(10, 6, 0.5, 1.0);
  CHECK(shifted.capacity() == 16);
  CHECK(shifted.place_value(0.5) >= 10);
}

TEST_CASE("fixed range fills every cell and stays within c sqrt n") {
  // c = 2.378 measured over random inputs; 3 leaves margin.
  Rng rng(21);
  for (std::size_t n : {2u, 3u, 5u, 17u, 100u, 1000u, 4096u}) {
    for (int trial = 0; trial < 10; ++trial) {
      std::vector<double> values(n);
      for (auto& v : values) v = uniform_closed_open(rng);
      Sort1dFixed alg(n, 0.0, 1.0);
      const auto run = play(alg, real_stream(values));
      CHECK(run.array.complete());
      CHECK(cost(run.array, Abs1d{}) <= 3.0 * std::sqrt(static_cast<double>(n)));
    }
  }
}

TEST_CASE("block scheme descends onto the free cells") {
  // One item per box leaves every box holding a partial block.
  BlockScheme scheme(0, 100, sqrt_floor_shape);
  std::vector<bool> used(100, false);
  for (std::size_t i = 0; i < 100; ++i) {
    const std::size_t cell =
        scheme.place([&](const BlockShape& s) { return i < s.boxes ? i : std::size_t{0}; });
    REQUIRE(cell < 100);
    CHECK_FALSE(used[cell]);
    used[cell] = true;
  }
  CHECK(scheme.depth() > 0);
  CHECK(scheme.remaining() == 0);
  CHECK_THROWS_AS(scheme.place([](const BlockShape&) { return std::size_t{0}; }), Error);
}

TEST_CASE("ceil_log2") {
  CHECK(ceil_log2(1.0) == 0);
  CHECK(ceil_log2(1000.0) == 10);
  CHECK(ceil_log2(1024.0) == 10);
  CHECK(ceil_log2(0.5) == -1);
  CHECK(ceil_log2(0.3) == -1);
}

TEST_CASE("sort1d exponent examples") {
  Sort1d a(4);
  a.place_value(0.0);
  CHECK_FALSE(a.exponent());
  a.place_value(1.0);
  CHECK(a.exponent() == 0);

  Sort1d b(8);
  b.place_value(0.0);
  b.place_value(1.0);
  b.place_value(1000.0);
  CHECK(b.exponent() == 10);
}

TEST_CASE("sort1d first two items take cells 0 and 1") {
  Sort1d alg(16);
  CHECK(alg.place_value(3.0) == 0);
  CHECK(alg.place_value(-7.0) == 1);
}

TEST_CASE("sort1d constant input costs nothing") {
  Sort1d alg(4);
  const auto run = play(alg, real_stream({5, 5, 5, 5}));
  CHECK(cost(run.array, Abs1d{}) == 0.0);
}

TEST_CASE("sort1d bijective with monotone exponent") {
  Rng rng(4);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t n = 1 + uniform_below(rng, 600);
    const double scale = std::pow(10.0, static_cast<double>(uniform_below(rng, 12)) - 6.0);
    Sort1d alg(n);
    PlacementArray a(n);
    std::optional<int> last_q;
    for (std::size_t i = 0; i < n; ++i) {
      const double x = (uniform_closed_open(rng) - 0.5) * scale * static_cast<double>(i + 1);
      a.place(alg.place_value(x), x);
      if (last_q) {
        REQUIRE(alg.exponent());
        CHECK(*alg.exponent() >= *last_q);
      }
      last_q = alg.exponent();
    }
    CHECK(a.complete());
    CHECK_THROWS_AS(alg.place_value(0.0), Error);
  }
}

TEST_CASE("sort1d on uniform input stays near sqrt n") {
  Rng rng(9);
  for (std::size_t n : {256u, 4096u}) {
    std::vector<double> values(n);
    for (auto& v : values) v = uniform_closed_open(rng);
    Sort1d alg(n);
    const auto run = play(alg, real_stream(values));
    CHECK(cost(run.array, Abs1d{}) <= 6.0 * std::sqrt(static_cast<double>(n)));
  }
}
