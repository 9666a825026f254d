#include "osort/adversaries.hpp"

#include <algorithm>
#include <cmath>

namespace osort {

namespace {

std::size_t isqrt(std::size_t n) {
  auto r = static_cast<std::size_t>(std::sqrt(static_cast<double>(n)));
  while (r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r;
}

InputSequence make_sequence(ItemKind kind, std::size_t dim, const char* name, std::uint64_t seed) {
  InputSequence seq;
  seq.kind = kind;
  seq.dim = dim;
  seq.adversary = name;
  seq.seed = seed;
  return seq;
}

}  // namespace

Sort1dInstance adv_sort1d_instance(std::size_t n, std::uint64_t seed) {
  if (n < 4) throw Error(ErrorCode::InvalidConfig, "adv_sort1d_distribution needs n >= 4");
  const std::size_t m = isqrt(n);
  Sort1dInstance out{make_sequence(ItemKind::Real, 1, "sort1d-distribution", seed), 0};
  auto& items = out.sequence.items;
  items.reserve(n);
  Rng rng(seed);
  while (items.size() < n) {
    const std::uint64_t coin = uniform_below(rng, 2 * m);
    if (coin < 2) {
      const double value = coin == 0 ? 0.0 : 1.0;
      while (items.size() < n) items.emplace_back(value);
      break;
    }
    ++out.epochs;
    for (std::size_t k = 0; k < m && items.size() < n; ++k) {
      items.emplace_back(static_cast<double>(k) / static_cast<double>(m));
    }
  }
  return out;
}

InputSequence adv_sort1d_distribution(std::size_t n, std::uint64_t seed) {
  return adv_sort1d_instance(n, seed).sequence;
}

double expected_sort1d_epochs(std::size_t n) {
  const std::size_t m = isqrt(n);
  const std::size_t slots = (n + m - 1) / m;
  const double p = 1.0 - 1.0 / static_cast<double>(m);
  double total = 0.0;
  double pj = 1.0;
  for (std::size_t j = 1; j <= slots; ++j) {
    pj *= p;
    total += pj;
  }
  return total;
}

std::size_t uniform_epoch_length(std::size_t free_cells, std::size_t k) {
  const std::size_t factor = k <= 4 ? 2 : 4;
  return std::max<std::size_t>(1, factor * free_cells / k);
}

InputSequence adv_uniform_epochs(std::size_t n, std::size_t k, double gamma, std::uint64_t seed) {
  if (k < 3) throw Error(ErrorCode::KTooSmall, "K = " + std::to_string(k));
  if (!(gamma >= 1.0)) throw Error(ErrorCode::InvalidConfig, "gamma must be >= 1");
  const std::size_t cells = gamma == 1.0 ? n : ceil_scaled(gamma, n);
  InputSequence seq = make_sequence(ItemKind::Label, 1, "uniform-epochs", seed);
  auto& items = seq.items;
  items.reserve(n);
  if (gamma > 1.0) {
    for (Label y = 0; y < k && items.size() < n; ++y) items.emplace_back(y);
  }
  Rng rng(seed);
  while (items.size() < n) {
    const Label y = uniform_below(rng, k);
    const std::size_t len = uniform_epoch_length(cells - items.size(), k);
    for (std::size_t i = 0; i < len && items.size() < n; ++i) items.emplace_back(y);
  }
  return seq;
}

InputSequence sample_uniform(std::size_t n, std::uint64_t seed) {
  InputSequence seq = make_sequence(ItemKind::Real, 1, "uniform", seed);
  seq.items.reserve(n);
  Rng rng(seed);
  for (std::size_t i = 0; i < n; ++i) seq.items.emplace_back(uniform_open_closed(rng));
  return seq;
}

InputSequence sample_uniform_points(std::size_t n, std::size_t dim, std::uint64_t seed) {
  InputSequence seq = make_sequence(ItemKind::Point, dim, "uniform-points", seed);
  seq.items.reserve(n);
  Rng rng(seed);
  for (std::size_t i = 0; i < n; ++i) {
    Point p;
    p.coords.resize(dim);
    for (auto& c : p.coords) c = uniform_closed_open(rng);
    seq.items.emplace_back(std::move(p));
  }
  return seq;
}

InputSequence sample_labels(std::size_t n, std::size_t k, std::uint64_t seed) {
  if (k == 0) throw Error(ErrorCode::KTooSmall, "K = 0");
  InputSequence seq = make_sequence(ItemKind::Label, 1, "uniform-labels", seed);
  seq.items.reserve(n);
  Rng rng(seed);
  for (std::size_t i = 0; i < n; ++i) seq.items.emplace_back(Label{uniform_below(rng, k)});
  return seq;
}

// --- FriendlyCellAdversary -------------------------------------------------

std::vector<std::size_t> FriendlyCellAdversary::friendly_counts(const PlacementArray& array,
                                                                std::size_t k) {
  std::vector<std::size_t> counts(k, 0);
  const auto& cells = array.cells();
  auto credit = [&](const std::optional<Item>& item, std::size_t amount) {
    if (!item) return;
    const Label y = std::get<Label>(*item);
    if (y < k) counts[y] += amount;
  };
  std::optional<Item> left;
  std::size_t i = 0;
  while (i < cells.size()) {
    if (cells[i]) {
      left = cells[i];
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j < cells.size() && !cells[j]) ++j;
    const std::size_t length = j - i;
    const std::optional<Item> right = j < cells.size() ? cells[j] : std::nullopt;
    if (!left && !right) {
      for (auto& c : counts) c += length;
    } else {
      credit(left, length);
      if (!left || !right || *left != *right) credit(right, length);
    }
    i = j;
  }
  return counts;
}

Item FriendlyCellAdversary::next(const ArrayView& view) {
  const auto counts = friendly_counts(view.array, k_);
  const auto it = std::min_element(counts.begin(), counts.end());
  return Item{static_cast<Label>(it - counts.begin())};
}

// --- Grid2dAdversary -------------------------------------------------------

Grid2dAdversary::Grid2dAdversary(std::size_t n)
    : n_(n),
      t_(std::max<std::size_t>(2, static_cast<std::size_t>(std::llround(std::cbrt(static_cast<double>(n)))))),
      good_count_(t_ * t_, 0) {
  for (std::size_t id = 0; id < t_ * t_; ++id) unsatisfied_.insert(id);
}

std::size_t Grid2dAdversary::point_id(const Item& item) const {
  const auto& p = std::get<Point>(item);
  const double t = static_cast<double>(t_);
  const auto ix = static_cast<std::size_t>(std::llround(p.coords[0] * t));
  const auto iy = static_cast<std::size_t>(std::llround(p.coords[1] * t));
  return ix * t_ + iy;
}

bool Grid2dAdversary::has_empty_neighbour(const PlacementArray& array, std::size_t cell) const {
  return (cell > 0 && !array.occupied(cell - 1)) ||
         (cell + 1 < array.capacity() && !array.occupied(cell + 1));
}

void Grid2dAdversary::refresh(const PlacementArray& array, std::size_t cell) {
  if (!array.occupied(cell)) return;
  const bool good = has_empty_neighbour(array, cell);
  if (good == static_cast<bool>(good_cell_[cell])) return;
  good_cell_[cell] = good;
  const std::size_t id = point_id(*array.at(cell));
  if (good) {
    if (good_count_[id]++ == 0) unsatisfied_.erase(id);
  } else {
    if (--good_count_[id] == 0) unsatisfied_.insert(id);
  }
}

void Grid2dAdversary::observe(const PlacementArray& array, std::size_t cell) {
  if (cell > 0) refresh(array, cell - 1);
  refresh(array, cell);
  if (cell + 1 < array.capacity()) refresh(array, cell + 1);
}

Item Grid2dAdversary::next(const ArrayView& view) {
  if (good_cell_.empty()) good_cell_.assign(view.array.capacity(), 0);
  if (view.last_index) observe(view.array, *view.last_index);
  std::size_t id = 0;
  if (!phase_two_ && unsatisfied_.empty()) phase_two_ = true;
  if (!phase_two_) {
    id = *unsatisfied_.begin();
    ++phase_one_;
  }
  const double t = static_cast<double>(t_);
  Point p;
  p.coords = {static_cast<double>(id / t_) / t, static_cast<double>(id % t_) / t};
  return Item{std::move(p)};
}

}  // namespace osort
