#include "osort/stochastic.hpp"

#include <algorithm>
#include <cmath>

namespace osort {

namespace {

double as_real(const Item& item) {
  const auto* x = std::get_if<double>(&item);
  if (!x) throw Error(ErrorCode::MixedItemKinds, "expected a real item");
  return *x;
}

constexpr double kTiny = 0x1.0p-1074;

}  // namespace

std::size_t bucket_hash(double x, std::size_t buckets) {
  if (!(x > 0.0 && x <= 1.0)) {
    throw Error(ErrorCode::DomainViolation, "bucket_hash needs 0 < x <= 1");
  }
  const double v = std::ceil(x * static_cast<double>(buckets));
  return std::clamp<std::size_t>(static_cast<std::size_t>(v), 1, buckets);
}

double bucket_child_value(double x, std::size_t buckets) {
  const std::size_t h = bucket_hash(x, buckets);
  const double child = x * static_cast<double>(buckets) - static_cast<double>(h - 1);
  return std::clamp(child, kTiny, 1.0);
}

BucketLayout make_layout(std::size_t n, double c, double alpha, double beta) {
  BucketLayout l;
  l.n = n;
  l.c = c;
  l.alpha = std::clamp(alpha, 0.0, 1.0);
  l.beta = std::clamp(beta, 0.0, 1.0);
  const double nd = static_cast<double>(n);
  l.buckets = std::max<std::size_t>(1, static_cast<std::size_t>(std::llround(std::pow(nd, l.alpha))));
  const auto yard = std::min<std::size_t>(n, static_cast<std::size_t>(std::llround(std::pow(nd, l.beta))));
  l.bucket_capacity = (n - yard) / l.buckets;
  l.backyard = n - l.buckets * l.bucket_capacity;
  return l;
}

BucketLayout sortunif1_layout(std::size_t n, double c) {
  if (n < 3) return make_layout(n, c, 0.0, 1.0);
  const double ln = std::log(static_cast<double>(n));
  const double alpha = 1.0 / 3.0 - (std::log(ln) + std::log(2.0 * (c + 1.0))) / (3.0 * ln);
  return make_layout(n, c, alpha, 1.0 - alpha);
}

BucketLayout sortunifk_layout(std::size_t n, std::size_t k, double c) {
  if (k <= 1) return sortunif1_layout(n, c);
  if (n < 3) return make_layout(n, c, 0.0, 1.0);
  const double ln = std::log(static_cast<double>(n));
  const double f = 4.0 - std::ldexp(1.0, -static_cast<int>(k - 2));
  const double b = static_cast<double>(k - 1) / 4.0;
  const double alpha =
      (4.0 - f) / (4.0 + f) +
      f / (f + 4.0) * (4.0 * b * std::log(2.0 * c + 4.0) - std::log(2.0 * c + 2.0)) / ln;
  const double beta =
      2.0 * ((1.0 - alpha) / f + (0.25 * std::log(ln) + b * std::log(2.0 * c + 4.0)) / ln);
  return make_layout(n, c, alpha, beta);
}

RecursionPlan recursion_plan(std::size_t n, std::size_t k, double c) {
  if (k == 0) throw Error(ErrorCode::InvalidConfig, "recursion depth must be >= 1");
  RecursionPlan plan;
  plan.depth = k;
  plan.cutoff = kRecursionCutoff;
  std::size_t size = n;
  for (std::size_t level = k; level >= 1; --level) {
    if (level < k && size < kRecursionCutoff) break;
    plan.levels.push_back(sortunifk_layout(size, level, c));
    size = plan.levels.back().bucket_capacity;
    c += 1.0;
  }
  return plan;
}

double recursion_x0(double n) {
  const double ln = std::log(n);
  return 4.0 + ln - std::sqrt(ln * ln + 8.0 * ln);
}

std::size_t recursion_depth_k0(std::size_t n) {
  if (n < 16) throw Error(ErrorCode::DomainViolation, "k0 needs n >= 16");
  const double k = std::round(std::log2(2.0 / recursion_x0(static_cast<double>(n))));
  return k < 1.0 ? 1 : static_cast<std::size_t>(k);
}

// --- SortUnif --------------------------------------------------------------

class SortUnif::Node {
 public:
  Node(std::size_t offset, std::size_t size, std::size_t k, double c,
       const std::vector<char>& occupied)
      : offset_(offset), size_(size), occupied_(occupied) {
    if (size < 3 || (k >= 2 && size < kRecursionCutoff)) {
      direct_.emplace(offset, size, 0.0, 1.0);
      layout_ = make_layout(size, c, 0.0, 1.0);
      return;
    }
    layout_ = sortunifk_layout(size, k, c);
    const std::size_t m = layout_.buckets;
    const std::size_t cap = layout_.bucket_capacity;
    fill_.assign(m + 1, 0);
    for (std::size_t i = 1; i <= m; ++i) {
      const std::size_t begin = offset + layout_.bucket_begin(i);
      if (k == 1) {
        const double lo = static_cast<double>(i - 1) / static_cast<double>(m);
        const double hi = static_cast<double>(i) / static_cast<double>(m);
        leaves_.emplace_back(begin, cap, lo, hi);
      } else {
        children_.push_back(std::make_unique<Node>(begin, cap, k - 1, c + 1.0, occupied));
      }
    }
    backyard_.emplace(offset + layout_.backyard_begin(), layout_.backyard, 0.0, 1.0);
  }

  std::size_t place(double v) {
    if (failed_) return fallback();
    if (direct_) return direct_->place_value(v);
    const std::size_t h = bucket_hash(v, layout_.buckets);
    if (fill_[h] < layout_.bucket_capacity) {
      ++fill_[h];
      if (!leaves_.empty()) {
        Sort1dFixed& leaf = leaves_[h - 1];
        const double m = static_cast<double>(layout_.buckets);
        const double lo = static_cast<double>(h - 1) / m;
        const double hi = static_cast<double>(h) / m;
        return leaf.place_value(std::clamp(v, lo, hi));
      }
      return children_[h - 1]->place(bucket_child_value(v, layout_.buckets));
    }
    if (backyard_->remaining() > 0) return backyard_->place_value(v);
    failed_ = true;
    return fallback();
  }

  bool failed() const {
    if (failed_) return true;
    return std::any_of(children_.begin(), children_.end(),
                       [](const auto& child) { return child->failed(); });
  }

  const BucketLayout& layout() const { return layout_; }

 private:
  // Lowest free cell of this node's range. Once a node has failed every later
  // item goes here, so the block sorters never see a stolen cell.
  std::size_t fallback() {
    while (cursor_ < size_ && occupied_[offset_ + cursor_]) ++cursor_;
    if (cursor_ == size_) throw Error(ErrorCode::ArrayFull, "no free cell left");
    return offset_ + cursor_;
  }

  std::size_t offset_;
  std::size_t size_;
  const std::vector<char>& occupied_;
  BucketLayout layout_;
  std::optional<Sort1dFixed> direct_;
  std::vector<Sort1dFixed> leaves_;
  std::vector<std::unique_ptr<Node>> children_;
  std::optional<Sort1dFixed> backyard_;
  std::vector<std::size_t> fill_;
  bool failed_ = false;
  std::size_t cursor_ = 0;
};

SortUnif::SortUnif(std::size_t n, std::size_t k, double c)
    : n_(n), k_(k), occupied_(n, 0) {
  if (k == 0) throw Error(ErrorCode::InvalidConfig, "recursion depth must be >= 1");
  root_ = std::make_unique<Node>(0, n, k, c, occupied_);
}

SortUnif::~SortUnif() = default;

std::size_t SortUnif::place(const Item& item) { return place_value(as_real(item)); }

std::size_t SortUnif::place_value(double x) {
  if (placed_ >= n_) throw Error(ErrorCode::ArrayFull, "more than n items");
  if (!(x > 0.0 && x <= 1.0)) throw Error(ErrorCode::DomainViolation, "value outside (0,1]");
  const std::size_t cell = root_->place(x);
  occupied_[cell] = 1;
  ++placed_;
  return cell;
}

const BucketLayout& SortUnif::layout() const { return root_->layout(); }
bool SortUnif::failed() const { return root_->failed(); }

AlgorithmCounters SortUnif::counters(const PlacementArray&) const {
  AlgorithmCounters c;
  c.failed = failed();
  return c;
}

// --- LinearProbing ---------------------------------------------------------

LinearProbing::LinearProbing(std::size_t n, double gamma) : n_(n), gamma_(gamma) {
  if (!(gamma > 1.0)) throw Error(ErrorCode::InvalidConfig, "linear probing needs gamma > 1");
  size_ = ceil_scaled(gamma, n);
  hashed_ = std::max<std::size_t>(1, floor_scaled(beta(), n));
  hashed_ = std::min(hashed_, size_);
  next_.resize(size_ + 1);
  for (std::size_t i = 0; i <= size_; ++i) next_[i] = i;
  steps_.reserve(n);
  cells_.reserve(n);
  values_.reserve(n);
}

std::size_t LinearProbing::home(double x) const {
  const auto h = static_cast<std::size_t>(x * static_cast<double>(hashed_));
  return std::min(h, hashed_ - 1);
}

std::size_t LinearProbing::find_free(std::size_t from) {
  std::size_t root = from;
  while (next_[root] != root) root = next_[root];
  while (next_[from] != root) {
    const std::size_t up = next_[from];
    next_[from] = root;
    from = up;
  }
  return root;
}

std::size_t LinearProbing::place(const Item& item) { return place_value(as_real(item)); }

std::size_t LinearProbing::place_value(double x) {
  if (cells_.size() >= n_) throw Error(ErrorCode::ArrayFull, "more than n items");
  if (!(x >= 0.0 && x <= 1.0)) throw Error(ErrorCode::DomainViolation, "value outside [0,1]");
  const std::size_t h = home(x);
  std::size_t cell = find_free(h);
  if (cell == size_) cell = find_free(0);
  if (cell == size_) throw Error(ErrorCode::ArrayFull, "table full");
  next_[cell] = cell + 1;
  if (cell < h) wraparound_ = true;
  steps_.push_back((cell + size_ - h) % size_ + 1);
  cells_.push_back(cell);
  values_.push_back(x);
  return cell;
}

std::uint64_t LinearProbing::total_steps() const {
  std::uint64_t total = 0;
  for (auto s : steps_) total += s;
  return total;
}

AlgorithmCounters LinearProbing::counters(const PlacementArray&) const {
  AlgorithmCounters c;
  c.steps = total_steps();
  c.wraparound = wraparound_;
  return c;
}

CostDecomposition linprobe_cost_decomposition(const LinearProbing& run) {
  const auto& cells = run.placements();
  if (cells.size() != run.items()) {
    throw Error(ErrorCode::IncompleteRun, std::to_string(cells.size()) + " of " +
                                              std::to_string(run.items()) + " items placed");
  }
  constexpr std::size_t kEmpty = SIZE_MAX;
  std::vector<std::size_t> order(run.capacity(), kEmpty);
  for (std::size_t t = 0; t < cells.size(); ++t) order[cells[t]] = t;
  const auto& values = run.values();

  std::vector<double> merge, extend, separation;
  std::size_t prev = kEmpty;
  for (std::size_t cell = 0; cell < order.size(); ++cell) {
    if (order[cell] == kEmpty) continue;
    if (prev != kEmpty) {
      const double d = std::abs(values[order[cell]] - values[order[prev]]);
      if (prev + 1 != cell) {
        separation.push_back(d);
      } else if (order[prev] > order[cell]) {
        merge.push_back(d);
      } else {
        extend.push_back(d);
      }
    }
    prev = cell;
  }
  return CostDecomposition{pairwise_sum(merge), pairwise_sum(extend), pairwise_sum(separation)};
}

}  // namespace osort
