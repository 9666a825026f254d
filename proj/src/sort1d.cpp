#include "osort/sort1d.hpp"

#include <algorithm>
#include <cmath>

namespace osort {

namespace {

double as_real(const Item& item) {
  const auto* x = std::get_if<double>(&item);
  if (!x) throw Error(ErrorCode::MixedItemKinds, "expected a real item");
  return *x;
}

}  // namespace

int ceil_log2(double r) {
  int e = 0;
  const double m = std::frexp(r, &e);  // r = m * 2^e, m in [0.5, 1)
  return m == 0.5 ? e - 1 : e;
}

Sort1dFixed::Sort1dFixed(std::size_t size, double lo, double hi, ShapePolicy policy)
    : Sort1dFixed(0, size, lo, hi, std::move(policy)) {}

Sort1dFixed::Sort1dFixed(std::size_t offset, std::size_t size, double lo, double hi,
                         ShapePolicy policy)
    : offset_(offset), size_(size), lo_(lo), hi_(hi), scheme_(offset, size, std::move(policy)) {
  if (!(lo <= hi)) throw Error(ErrorCode::RangeViolation, "empty value range");
}

std::size_t Sort1dFixed::place(const Item& item) { return place_value(as_real(item)); }

std::size_t Sort1dFixed::place_value(double x) {
  if (!(x >= lo_ && x <= hi_)) {
    throw Error(ErrorCode::RangeViolation, "value outside [lo, hi]");
  }
  const double span = hi_ - lo_;
  return scheme_.place([&](const BlockShape& shape) -> std::size_t {
    if (span <= 0.0) return 0;
    const double pos = (x - lo_) / span * static_cast<double>(shape.boxes);
    return std::min(static_cast<std::size_t>(pos), shape.boxes - 1);
  });
}

Sort1d::Sort1d(std::size_t n) : n_(n) {}

std::size_t Sort1d::place(const Item& item) { return place_value(as_real(item)); }

std::size_t Sort1d::box_of(double shifted, std::size_t boxes) const {
  if (!q_) return std::min(boxes / 2, boxes - 1);  // every value so far equals the origin
  const double half = std::ldexp(1.0, *q_);
  const double pos = (shifted + half) / (2.0 * half) * static_cast<double>(boxes);
  if (pos <= 0.0) return 0;
  return std::min(static_cast<std::size_t>(pos), boxes - 1);
}

std::size_t Sort1d::place_value(double x) {
  if (placed_ >= n_) throw Error(ErrorCode::ArrayFull, "more than n items");
  if (!std::isfinite(x)) throw Error(ErrorCode::DomainViolation, "non-finite value");
  if (placed_ == 0) origin_ = x;
  const double y = x - origin_;
  min_seen_ = std::min(min_seen_, y);
  max_seen_ = std::max(max_seen_, y);
  if (y != 0.0 && (!q_ || std::fabs(y) > std::ldexp(1.0, *q_))) {
    q_ = ceil_log2(max_seen_ - min_seen_);
  }
  // The first two items go to the two lowest cells; the block scheme runs on
  // the rest of the array.
  if (placed_ < 2) return placed_++;
  if (!scheme_) scheme_.emplace(2, n_ - 2, sqrt_floor_shape);
  ++placed_;
  return scheme_->place([&](const BlockShape& shape) { return box_of(y, shape.boxes); });
}

}  // namespace osort
