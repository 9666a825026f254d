#include <cmath>
#include <sstream>

#include "doctest.h"
#include "osort/core.hpp"
#include "osort/rng.hpp"
#include "osort/trace.hpp"

using namespace osort;

namespace {

PlacementArray reals(std::initializer_list<std::optional<double>> values) {
  PlacementArray a(values.size());
  std::size_t i = 0;
  for (const auto& v : values) {
    if (v) a.place(i, *v);
    ++i;
  }
  return a;
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

TEST_CASE("place writes once") {
  PlacementArray a(4);
  a.place(2, 0.5);
  CHECK(a.occupied(2));
  CHECK_FALSE(a.occupied(0));
  CHECK(std::get<double>(*a.at(2)) == 0.5);
  CHECK(a.filled_count() == 1);
  CHECK(code_of([&] { a.place(2, 0.1); }) == ErrorCode::OccupiedCell);
  CHECK(std::get<double>(*a.at(2)) == 0.5);
  CHECK(code_of([&] { a.place(4, 0.1); }) == ErrorCode::IndexOutOfRange);
  CHECK(a.filled_count() == 1);
}

TEST_CASE("single cell array completes") {
  PlacementArray a(1);
  a.place(0, Label{3});
  CHECK(a.filled_count() == 1);
  CHECK(a.complete());
}

TEST_CASE("cost examples") {
  CHECK(cost(reals({0.0, 1.0, 0.0}), Abs1d{}) == doctest::Approx(2.0));
  CHECK(cost(reals({0.2, std::nullopt, 0.9, std::nullopt, 0.3}), Abs1d{}) == doctest::Approx(1.3));

  PlacementArray labels(4);
  const Label seq[] = {'a', 'b', 'a', 'c'};
  for (std::size_t i = 0; i < 4; ++i) labels.place(i, seq[i]);
  CHECK(cost(labels, Uniform{}) == 3.0);
  CHECK(switch_count(labels) == 3);

  CHECK(cost(PlacementArray(5), Abs1d{}) == 0.0);
}

TEST_CASE("cost rejects items the metric cannot measure") {
  PlacementArray a(2);
  a.place(0, Label{1});
  a.place(1, Label{2});
  CHECK(code_of([&] { cost(a, Abs1d{}); }) == ErrorCode::MixedItemKinds);
  PlacementArray p(2);
  p.place(0, Point{{0.0, 0.0}});
  p.place(1, Point{{1.0, 0.0, 0.0}});
  CHECK(code_of([&] { cost(p, Euclidean{2}); }) == ErrorCode::MixedItemKinds);
  CHECK(code_of([&] { distance(Uniform{}, Item{1.0}, Item{Label{1}}); }) == ErrorCode::MixedItemKinds);
}

TEST_CASE("euclidean distance") {
  CHECK(distance(Euclidean{2}, Point{{0.0, 0.0}}, Point{{3.0, 4.0}}) == doctest::Approx(5.0));
  CHECK(distance(Uniform{}, Point{{0.5, 0.5}}, Point{{0.5, 0.5}}) == 0.0);
}

TEST_CASE("gap summary examples") {
  PlacementArray a(6);
  a.place(0, 1.0);
  a.place(3, 1.0);
  auto g = gap_summary(a);
  CHECK(g.gap_count == 2);
  CHECK(g.gap_lengths == std::vector<std::size_t>{2, 2});
  REQUIRE(g.largest_gap);
  CHECK(*g.largest_gap == Gap{1, 2});

  auto full = reals({1.0, 2.0});
  CHECK(gap_summary(full).gap_count == 0);
  CHECK_FALSE(gap_summary(full).largest_gap);

  auto empty = gap_summary(PlacementArray(5));
  CHECK(empty.gap_count == 1);
  CHECK(*empty.largest_gap == Gap{0, 5});
}

TEST_CASE("gap index agrees with a rescan") {
  Rng rng(11);
  for (int round = 0; round < 50; ++round) {
    const std::size_t m = 1 + uniform_below(rng, 40);
    GapIndex index(m);
    PlacementArray a(m);
    std::vector<std::size_t> order(m);
    for (std::size_t i = 0; i < m; ++i) order[i] = i;
    for (std::size_t i = m; i > 1; --i) std::swap(order[i - 1], order[uniform_below(rng, i)]);
    for (std::size_t cell : order) {
      const std::size_t before = index.gap_count();
      index.occupy(cell);
      a.place(cell, 0.0);
      const auto summary = gap_summary(a);
      CHECK(index.gap_count() == summary.gap_count);
      const long delta = static_cast<long>(index.gap_count()) - static_cast<long>(before);
      CHECK(delta >= -1);
      CHECK(delta <= 1);
      CHECK(index.largest() == summary.largest_gap);
      std::vector<std::size_t> lengths;
      for (const auto& gap : index.gaps()) lengths.push_back(gap.length);
      CHECK(lengths == summary.gap_lengths);
    }
    CHECK(code_of([&] { index.occupy(order.front()); }) == ErrorCode::OccupiedCell);
  }
}

TEST_CASE("largest gap midpoint uses the leftmost tie") {
  GapIndex g(9);
  g.occupy(4);  // gaps [0,4) and [5,9)
  CHECK(*g.largest_midpoint() == 2);
  CHECK(g.gap_containing(7) == Gap{5, 4});
  CHECK_FALSE(g.gap_containing(4));
}

TEST_CASE("marginal costs add up to the final cost") {
  Rng rng(5);
  for (int round = 0; round < 40; ++round) {
    const std::size_t m = 2 + uniform_below(rng, 30);
    PlacementArray a(m);
    std::vector<std::size_t> order(m);
    for (std::size_t i = 0; i < m; ++i) order[i] = i;
    for (std::size_t i = m; i > 1; --i) std::swap(order[i - 1], order[uniform_below(rng, i)]);
    double total = 0.0;
    for (std::size_t cell : order) {
      const Item x = uniform_closed_open(rng);
      total += marginal_cost(a, cell, x, Abs1d{});
      a.place(cell, x);
      CHECK(total == doctest::Approx(cost(a, Abs1d{})).epsilon(1e-12));
    }
  }
}

TEST_CASE("full label arrays cost at least K - 1") {
  Rng rng(8);
  for (int round = 0; round < 100; ++round) {
    const std::size_t m = 1 + uniform_below(rng, 20);
    const std::size_t k = 1 + uniform_below(rng, 6);
    PlacementArray a(m);
    std::set<Label> distinct;
    for (std::size_t i = 0; i < m; ++i) {
      const Label y = uniform_below(rng, k);
      distinct.insert(y);
      a.place(i, y);
    }
    CHECK(cost(a, Uniform{}) >= static_cast<double>(distinct.size() - 1));
  }
}

TEST_CASE("pairwise sum") {
  std::vector<double> v(1000, 0.1);
  CHECK(pairwise_sum(v) == doctest::Approx(100.0).epsilon(1e-14));
  CHECK(pairwise_sum(std::vector<double>{}) == 0.0);
}

TEST_CASE("scaled rounding ignores product noise") {
  CHECK(ceil_scaled(1.1, 100) == 110);
  CHECK(floor_scaled(1.1 - 0.01, 100) == 109);
  CHECK(ceil_scaled(1.25, 7) == 9);
  CHECK(floor_scaled(1.5, 3) == 4);
}

TEST_CASE("rng golden values") {
  Rng rng;  // default seed
  std::uint64_t x = 0;
  for (int i = 0; i < 10000; ++i) x = rng();
  CHECK(x == 9981545732273789042ULL);
  Rng r(1);
  for (int i = 0; i < 1000; ++i) {
    const double u = uniform_open_closed(r);
    CHECK(u > 0.0);
    CHECK(u <= 1.0);
  }
}

TEST_CASE("trace round trip") {
  for (const ItemKind kind : {ItemKind::Real, ItemKind::Label, ItemKind::Point}) {
    InputSequence seq;
    seq.kind = kind;
    seq.dim = kind == ItemKind::Point ? 3 : 1;
    Rng rng(3);
    for (int i = 0; i < 20; ++i) {
      if (kind == ItemKind::Real) seq.items.emplace_back(uniform_closed_open(rng) * 1e6 - 3.0);
      if (kind == ItemKind::Label) seq.items.emplace_back(Label{rng()});
      if (kind == ItemKind::Point) {
        seq.items.emplace_back(Point{{uniform_closed_open(rng), 1.0 / 3.0, -0.0}});
      }
    }
    std::stringstream io;
    write_trace(io, seq);
    const auto back = read_trace(io);
    CHECK(back.kind == seq.kind);
    CHECK(back.dim == seq.dim);
    CHECK(back.items == seq.items);
  }
}

TEST_CASE("trace header and parse errors") {
  std::stringstream io("kind=point:2 n=2\n0.5,0.25\n1,0\n");
  const auto seq = read_trace(io);
  CHECK(seq.items.size() == 2);
  CHECK(std::get<Point>(seq.items[0]) == Point{{0.5, 0.25}});

  for (const char* bad : {"", "kind=tree n=1\n1\n", "kind=real n=x\n", "kind=real n=1\nabc\n",
                          "kind=label n=1\n-1\n", "kind=point:2 n=1\n0.5\n", "kind=real n=1\ninf\n"}) {
    std::stringstream in(bad);
    CHECK(code_of([&] { read_trace(in); }) == ErrorCode::ParseError);
  }
}

TEST_CASE("sequence validation") {
  InputSequence seq;
  seq.kind = ItemKind::Real;
  seq.items = {Item{0.5}, Item{Label{1}}};
  CHECK(code_of([&] { validate(seq); }) == ErrorCode::MixedItemKinds);
  seq.items = {Item{std::nan("")}};
  CHECK(code_of([&] { validate(seq); }) == ErrorCode::DomainViolation);
}
