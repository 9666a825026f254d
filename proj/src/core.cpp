#include "osort/core.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <iterator>

namespace osort {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::OccupiedCell: return "OccupiedCell";
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::MixedItemKinds: return "MixedItemKinds";
    case ErrorCode::RangeViolation: return "RangeViolation";
    case ErrorCode::ArrayFull: return "ArrayFull";
    case ErrorCode::IllegalMove: return "IllegalMove";
    case ErrorCode::StateSpaceTooLarge: return "StateSpaceTooLarge";
    case ErrorCode::DomainViolation: return "DomainViolation";
    case ErrorCode::IncompleteRun: return "IncompleteRun";
    case ErrorCode::KTooSmall: return "KTooSmall";
    case ErrorCode::EmptyInput: return "EmptyInput";
    case ErrorCode::TooManyPoints: return "TooManyPoints";
    case ErrorCode::InsufficientData: return "InsufficientData";
    case ErrorCode::OutOfUnitBox: return "OutOfUnitBox";
    case ErrorCode::InvalidConfig: return "InvalidConfig";
    case ErrorCode::ParseError: return "ParseError";
  }
  return "Unknown";
}

ItemKind kind_of(const Item& item) {
  switch (item.index()) {
    case 0: return ItemKind::Real;
    case 1: return ItemKind::Point;
    default: return ItemKind::Label;
  }
}

std::string to_string(const Item& item) {
  char buf[64];
  if (const auto* x = std::get_if<double>(&item)) {
    std::snprintf(buf, sizeof buf, "%.17g", *x);
    return buf;
  }
  if (const auto* p = std::get_if<Point>(&item)) {
    std::string out;
    for (std::size_t i = 0; i < p->coords.size(); ++i) {
      std::snprintf(buf, sizeof buf, "%.17g", p->coords[i]);
      if (i) out += ',';
      out += buf;
    }
    return out;
  }
  return std::to_string(std::get<Label>(item));
}

std::string metric_name(const Metric& metric) {
  if (std::holds_alternative<Abs1d>(metric)) return "abs1d";
  if (const auto* e = std::get_if<Euclidean>(&metric)) {
    return "euclidean(" + std::to_string(e->dim) + ")";
  }
  return "uniform";
}

double distance(const Metric& metric, const Item& a, const Item& b) {
  if (a.index() != b.index()) {
    throw Error(ErrorCode::MixedItemKinds, "items of different kinds");
  }
  if (std::holds_alternative<Uniform>(metric)) return a == b ? 0.0 : 1.0;
  if (std::holds_alternative<Abs1d>(metric)) {
    const auto* x = std::get_if<double>(&a);
    if (!x) throw Error(ErrorCode::MixedItemKinds, "abs1d needs real items");
    return std::fabs(*x - std::get<double>(b));
  }
  const auto dim = std::get<Euclidean>(metric).dim;
  const auto* p = std::get_if<Point>(&a);
  const auto* q = std::get_if<Point>(&b);
  if (!p || p->dim() != dim || q->dim() != dim) {
    throw Error(ErrorCode::MixedItemKinds,
                "euclidean(" + std::to_string(dim) + ") needs points of that dimension");
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < dim; ++i) {
    const double diff = p->coords[i] - q->coords[i];
    sum += diff * diff;
  }
  return std::sqrt(sum);
}

double pairwise_sum(std::span<const double> values) {
  constexpr std::size_t kLeaf = 32;
  if (values.size() <= kLeaf) {
    double sum = 0.0;
    for (double v : values) sum += v;
    return sum;
  }
  const std::size_t half = values.size() / 2;
  return pairwise_sum(values.first(half)) + pairwise_sum(values.subspan(half));
}

namespace {

// Product snapped to the nearest integer when it is within rounding noise.
double snapped_product(double factor, std::size_t n) {
  const double p = factor * static_cast<double>(n);
  const double r = std::round(p);
  return std::fabs(p - r) <= 1e-9 * std::max(1.0, std::fabs(p)) ? r : p;
}

}  // namespace

std::size_t ceil_scaled(double factor, std::size_t n) {
  return static_cast<std::size_t>(std::ceil(snapped_product(factor, n)));
}

std::size_t floor_scaled(double factor, std::size_t n) {
  return static_cast<std::size_t>(std::floor(snapped_product(factor, n)));
}

PlacementArray::PlacementArray(std::size_t capacity) : cells_(capacity) {}

bool PlacementArray::occupied(std::size_t index) const {
  return index < cells_.size() && cells_[index].has_value();
}

const std::optional<Item>& PlacementArray::at(std::size_t index) const {
  if (index >= cells_.size()) {
    throw Error(ErrorCode::IndexOutOfRange, "cell " + std::to_string(index));
  }
  return cells_[index];
}

void PlacementArray::place(std::size_t index, Item item) {
  if (index >= cells_.size()) {
    throw Error(ErrorCode::IndexOutOfRange,
                "cell " + std::to_string(index) + " of " + std::to_string(cells_.size()));
  }
  if (cells_[index]) {
    throw Error(ErrorCode::OccupiedCell, "cell " + std::to_string(index));
  }
  cells_[index] = std::move(item);
  ++filled_;
}

double cost(const PlacementArray& array, const Metric& metric) {
  std::vector<double> terms;
  terms.reserve(array.filled_count());
  const Item* prev = nullptr;
  for (const auto& cell : array.cells()) {
    if (!cell) continue;
    if (prev) terms.push_back(distance(metric, *prev, *cell));
    prev = &*cell;
  }
  return pairwise_sum(terms);
}

double marginal_cost(const PlacementArray& array, std::size_t index,
                     const Item& item, const Metric& metric) {
  const auto& cells = array.cells();
  const Item* left = nullptr;
  const Item* right = nullptr;
  for (std::size_t i = index; i-- > 0;) {
    if (cells[i]) { left = &*cells[i]; break; }
  }
  for (std::size_t i = index + 1; i < cells.size(); ++i) {
    if (cells[i]) { right = &*cells[i]; break; }
  }
  double delta = 0.0;
  if (left) delta += distance(metric, *left, item);
  if (right) delta += distance(metric, item, *right);
  if (left && right) delta -= distance(metric, *left, *right);
  return delta;
}

std::size_t switch_count(const PlacementArray& array) {
  std::size_t switches = 0;
  const Item* prev = nullptr;
  for (const auto& cell : array.cells()) {
    if (!cell) continue;
    if (prev && !(*prev == *cell)) ++switches;
    prev = &*cell;
  }
  return switches;
}

GapSummary gap_summary(const PlacementArray& array) {
  GapSummary out;
  const auto& cells = array.cells();
  std::size_t i = 0;
  while (i < cells.size()) {
    if (cells[i]) { ++i; continue; }
    const std::size_t start = i;
    while (i < cells.size() && !cells[i]) ++i;
    const Gap gap{start, i - start};
    out.gap_lengths.push_back(gap.length);
    if (!out.largest_gap || gap.length > out.largest_gap->length) out.largest_gap = gap;
  }
  out.gap_count = out.gap_lengths.size();
  return out;
}

GapIndex::GapIndex(std::size_t capacity) : capacity_(capacity) {
  if (capacity > 0) {
    by_start_.emplace(0, capacity);
    by_size_.insert(Gap{0, capacity});
  }
}

bool GapIndex::is_free(std::size_t index) const {
  auto it = by_start_.upper_bound(index);
  if (it == by_start_.begin()) return false;
  --it;
  return index < it->first + it->second;
}

std::optional<Gap> GapIndex::gap_containing(std::size_t index) const {
  auto it = by_start_.upper_bound(index);
  if (it == by_start_.begin()) return std::nullopt;
  --it;
  if (index >= it->first + it->second) return std::nullopt;
  return Gap{it->first, it->second};
}

std::optional<Gap> GapIndex::largest() const {
  if (by_size_.empty()) return std::nullopt;
  return *by_size_.begin();
}

std::optional<std::size_t> GapIndex::largest_midpoint() const {
  if (by_size_.empty()) return std::nullopt;
  const Gap& g = *by_size_.begin();
  return g.start + g.length / 2;
}

void GapIndex::occupy(std::size_t index) {
  auto it = by_start_.upper_bound(index);
  if (it == by_start_.begin()) {
    throw Error(ErrorCode::OccupiedCell, "cell " + std::to_string(index));
  }
  --it;
  const std::size_t start = it->first;
  const std::size_t length = it->second;
  if (index >= start + length) {
    throw Error(ErrorCode::OccupiedCell, "cell " + std::to_string(index));
  }
  by_size_.erase(Gap{start, length});
  by_start_.erase(it);
  if (index > start) {
    by_start_.emplace(start, index - start);
    by_size_.insert(Gap{start, index - start});
  }
  const std::size_t end = start + length;
  if (index + 1 < end) {
    by_start_.emplace(index + 1, end - index - 1);
    by_size_.insert(Gap{index + 1, end - index - 1});
  }
}

std::vector<Gap> GapIndex::gaps() const {
  std::vector<Gap> out;
  out.reserve(by_start_.size());
  for (const auto& [start, length] : by_start_) out.push_back(Gap{start, length});
  return out;
}

}  // namespace osort
