#include "osort/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <map>
#include <numeric>
#include <set>

namespace osort {

namespace {

void require_nonempty(std::span<const Item> items) {
  if (items.empty()) throw Error(ErrorCode::EmptyInput, "no items");
}

// Flat coordinate storage for a point set.
struct Cloud {
  std::size_t dim = 0;
  std::vector<double> xs;

  std::size_t size() const { return dim == 0 ? 0 : xs.size() / dim; }
  const double* at(std::size_t i) const { return xs.data() + i * dim; }
  double dist(std::size_t a, std::size_t b) const {
    double s = 0.0;
    for (std::size_t k = 0; k < dim; ++k) {
      const double d = at(a)[k] - at(b)[k];
      s += d * d;
    }
    return std::sqrt(s);
  }
};

Cloud to_cloud(std::span<const Item> points) {
  Cloud cloud;
  if (points.empty()) return cloud;
  const auto* first = std::get_if<Point>(&points.front());
  if (!first) throw Error(ErrorCode::MixedItemKinds, "expected point items");
  cloud.dim = first->dim();
  cloud.xs.reserve(points.size() * cloud.dim);
  for (const auto& item : points) {
    const auto* p = std::get_if<Point>(&item);
    if (!p || p->dim() != cloud.dim) throw Error(ErrorCode::MixedItemKinds, "mixed point items");
    cloud.xs.insert(cloud.xs.end(), p->coords.begin(), p->coords.end());
  }
  return cloud;
}

// Uniform grid over the bounding box, used for nearest-neighbour queries.
class Grid {
 public:
  explicit Grid(const Cloud& cloud) : cloud_(cloud) {
    const std::size_t n = cloud.size();
    const std::size_t d = cloud.dim;
    lo_.assign(d, std::numeric_limits<double>::infinity());
    std::vector<double> hi(d, -std::numeric_limits<double>::infinity());
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t k = 0; k < d; ++k) {
        lo_[k] = std::min(lo_[k], cloud.at(i)[k]);
        hi[k] = std::max(hi[k], cloud.at(i)[k]);
      }
    }
    double extent = 0.0;
    for (std::size_t k = 0; k < d; ++k) extent = std::max(extent, hi[k] - lo_[k]);
    side_ = std::max<std::size_t>(
        1, static_cast<std::size_t>(std::pow(static_cast<double>(n) / 2.0, 1.0 / static_cast<double>(d))));
    width_ = extent > 0.0 ? extent / static_cast<double>(side_) : 1.0;
    std::size_t total = 1;
    for (std::size_t k = 0; k < d; ++k) total *= side_;
    cells_.resize(total);
    cell_of_.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
      cell_of_[i] = cell_index(coords_of(i));
      cells_[cell_of_[i]].push_back(i);
    }
  }

  std::size_t side() const { return side_; }
  double width() const { return width_; }
  std::vector<std::size_t>& bucket(std::size_t cell) { return cells_[cell]; }

  std::vector<std::size_t> coords_of(std::size_t point) const {
    std::vector<std::size_t> c(cloud_.dim);
    for (std::size_t k = 0; k < cloud_.dim; ++k) {
      const double v = (cloud_.at(point)[k] - lo_[k]) / width_;
      c[k] = std::min(static_cast<std::size_t>(std::max(v, 0.0)), side_ - 1);
    }
    return c;
  }
  std::size_t cell_index(const std::vector<std::size_t>& c) const {
    std::size_t id = 0;
    for (std::size_t k = cloud_.dim; k-- > 0;) id = id * side_ + c[k];
    return id;
  }
  std::size_t cell_of(std::size_t point) const { return cell_of_[point]; }

  // Calls f(cell) for every cell at Chebyshev distance exactly r from center.
  // Returns false if the ring lies entirely outside the grid.
  template <class F>
  bool ring(const std::vector<std::size_t>& center, std::size_t r, F&& f) const {
    const std::size_t d = cloud_.dim;
    const auto ir = static_cast<long long>(r);
    std::vector<long long> lo(d), hi(d);
    bool any = false;
    for (std::size_t k = 0; k < d; ++k) {
      const auto c = static_cast<long long>(center[k]);
      lo[k] = std::max<long long>(0, c - ir);
      hi[k] = std::min<long long>(static_cast<long long>(side_) - 1, c + ir);
      if (c - ir >= 0 || c + ir < static_cast<long long>(side_)) any = true;
    }
    if (!any) return false;
    std::vector<long long> cur(lo);
    std::vector<std::size_t> idx(d);
    while (true) {
      long long cheb = 0;
      for (std::size_t k = 0; k < d; ++k) {
        cheb = std::max(cheb, std::llabs(cur[k] - static_cast<long long>(center[k])));
      }
      if (cheb == ir) {
        for (std::size_t k = 0; k < d; ++k) idx[k] = static_cast<std::size_t>(cur[k]);
        f(cell_index(idx));
      }
      std::size_t k = 0;
      while (k < d && cur[k] == hi[k]) {
        cur[k] = lo[k];
        ++k;
      }
      if (k == d) break;
      ++cur[k];
    }
    return true;
  }

 private:
  const Cloud& cloud_;
  std::vector<double> lo_;
  std::size_t side_ = 1;
  double width_ = 1.0;
  std::vector<std::vector<std::size_t>> cells_;
  std::vector<std::size_t> cell_of_;
};

std::vector<std::vector<std::size_t>> neighbour_lists(const Cloud& cloud, Grid& grid,
                                                      std::size_t k) {
  const std::size_t n = cloud.size();
  std::vector<std::vector<std::size_t>> out(n);
  k = std::min(k, n - 1);
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<std::pair<double, std::size_t>> found;
    const auto center = grid.coords_of(i);
    for (std::size_t r = 0;; ++r) {
      const bool inside = grid.ring(center, r, [&](std::size_t cell) {
        for (std::size_t j : grid.bucket(cell)) {
          if (j != i) found.emplace_back(cloud.dist(i, j), j);
        }
      });
      if (found.size() >= k) {
        std::nth_element(found.begin(), found.begin() + static_cast<std::ptrdiff_t>(k - 1), found.end());
        if (found[k - 1].first <= static_cast<double>(r) * grid.width()) break;
      }
      if (!inside) break;
    }
    std::sort(found.begin(), found.end());
    found.resize(std::min(found.size(), k));
    for (const auto& [dist, j] : found) out[i].push_back(j);
  }
  return out;
}

std::vector<std::size_t> nearest_neighbour_path(const Cloud& cloud, Grid& grid, std::size_t start) {
  const std::size_t n = cloud.size();
  std::vector<std::size_t> path;
  path.reserve(n);
  std::vector<char> used(n, 0);
  // Unvisited points per cell and globally, both with swap-removal.
  std::vector<std::size_t> slot_in_cell(n);
  std::vector<std::vector<std::size_t>> live;
  std::vector<std::size_t> live_cell(n);
  {
    std::size_t cells = 1;
    for (std::size_t k = 0; k < cloud.dim; ++k) cells *= grid.side();
    live.resize(cells);
    for (std::size_t i = 0; i < n; ++i) {
      live_cell[i] = grid.cell_of(i);
      slot_in_cell[i] = live[live_cell[i]].size();
      live[live_cell[i]].push_back(i);
    }
  }
  std::vector<std::size_t> remaining(n), slot(n);
  std::iota(remaining.begin(), remaining.end(), std::size_t{0});
  std::iota(slot.begin(), slot.end(), std::size_t{0});
  auto remove = [&](std::size_t p) {
    used[p] = 1;
    auto& cell = live[live_cell[p]];
    const std::size_t s = slot_in_cell[p];
    slot_in_cell[cell.back()] = s;
    cell[s] = cell.back();
    cell.pop_back();
    const std::size_t g = slot[p];
    slot[remaining.back()] = g;
    remaining[g] = remaining.back();
    remaining.pop_back();
  };

  std::size_t cur = start;
  remove(cur);
  path.push_back(cur);
  while (!remaining.empty()) {
    double best = std::numeric_limits<double>::infinity();
    std::size_t best_j = remaining.front();
    const auto center = grid.coords_of(cur);
    std::size_t scanned = 0;
    bool brute = false;
    for (std::size_t r = 0;; ++r) {
      if (scanned > remaining.size()) {
        brute = true;
        break;
      }
      const bool inside = grid.ring(center, r, [&](std::size_t cell) {
        ++scanned;
        for (std::size_t j : live[cell]) {
          const double d = cloud.dist(cur, j);
          if (d < best || (d == best && j < best_j)) {
            best = d;
            best_j = j;
          }
        }
      });
      if (best <= static_cast<double>(r) * grid.width()) break;
      if (!inside) break;
    }
    if (brute) {
      best = std::numeric_limits<double>::infinity();
      for (std::size_t j : remaining) {
        const double d = cloud.dist(cur, j);
        if (d < best || (d == best && j < best_j)) {
          best = d;
          best_j = j;
        }
      }
    }
    cur = best_j;
    remove(cur);
    path.push_back(cur);
  }
  return path;
}

double path_length(const Cloud& cloud, const std::vector<std::size_t>& path) {
  std::vector<double> legs;
  legs.reserve(path.size());
  for (std::size_t i = 1; i < path.size(); ++i) legs.push_back(cloud.dist(path[i - 1], path[i]));
  return pairwise_sum(legs);
}

// 2-opt on an open path. A move removes edges e1 < e2 (edge e joins
// positions e and e+1; e = -1 and e = n-1 are free path ends) and reverses
// positions e1+1..e2.
std::size_t two_opt(const Cloud& cloud, std::vector<std::size_t>& path,
                    const std::vector<std::vector<std::size_t>>& neighbours, std::size_t budget) {
  const auto n = static_cast<long long>(path.size());
  std::vector<long long> pos(path.size());
  for (long long i = 0; i < n; ++i) pos[path[static_cast<std::size_t>(i)]] = i;
  auto city = [&](long long p) { return path[static_cast<std::size_t>(p)]; };
  auto d = [&](long long a, long long b) {
    if (a < 0 || b < 0 || a >= n || b >= n) return 0.0;
    return cloud.dist(city(a), city(b));
  };

  std::deque<std::size_t> queue(path.begin(), path.end());
  std::vector<char> queued(path.size(), 1);
  std::size_t moves = 0;
  while (!queue.empty() && moves < budget) {
    const std::size_t a = queue.front();
    queue.pop_front();
    queued[a] = 0;
    bool improved = false;
    for (std::size_t c : neighbours[a]) {
      const long long i = pos[a];
      const long long j = pos[c];
      const long long lo = std::min(i, j);
      const long long hi = std::max(i, j);
      for (const auto& [e1, e2] : {std::pair{lo, hi}, std::pair{lo - 1, hi - 1}}) {
        if (e1 >= e2) continue;
        const double gain = d(e1, e1 + 1) + d(e2, e2 + 1) - d(e1, e2) - d(e1 + 1, e2 + 1);
        if (gain <= 1e-12) continue;
        std::reverse(path.begin() + e1 + 1, path.begin() + e2 + 1);
        for (long long p = e1 + 1; p <= e2; ++p) pos[city(p)] = p;
        for (long long p : {e1, e1 + 1, e2, e2 + 1}) {
          if (p < 0 || p >= n) continue;
          const std::size_t q = city(p);
          if (!queued[q]) {
            queued[q] = 1;
            queue.push_back(q);
          }
        }
        ++moves;
        improved = true;
        break;
      }
      if (improved) break;
    }
    if (improved && !queued[a]) {
      queued[a] = 1;
      queue.push_back(a);
    }
  }
  return moves;
}

}  // namespace

double opt_1d(std::span<const Item> items) {
  require_nonempty(items);
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (const auto& item : items) {
    const auto* x = std::get_if<double>(&item);
    if (!x) throw Error(ErrorCode::MixedItemKinds, "expected real items");
    lo = std::min(lo, *x);
    hi = std::max(hi, *x);
  }
  return hi - lo;
}

std::size_t opt_uniform(std::span<const Item> items) {
  require_nonempty(items);
  std::set<Label> distinct;
  for (const auto& item : items) {
    const auto* y = std::get_if<Label>(&item);
    if (!y) throw Error(ErrorCode::MixedItemKinds, "expected label items");
    distinct.insert(*y);
  }
  return distinct.size() - 1;
}

double opt_tsp_exact(std::span<const Item> points) {
  require_nonempty(points);
  Cloud all = to_cloud(points);
  Cloud cloud;
  cloud.dim = all.dim;
  {
    std::set<std::vector<double>> seen;
    for (std::size_t i = 0; i < all.size(); ++i) {
      std::vector<double> p(all.at(i), all.at(i) + all.dim);
      if (seen.insert(p).second) cloud.xs.insert(cloud.xs.end(), p.begin(), p.end());
    }
  }
  const std::size_t n = cloud.size();
  if (n > kHeldKarpLimit) {
    throw Error(ErrorCode::TooManyPoints, std::to_string(n) + " distinct points");
  }
  if (n <= 1) return 0.0;
  const std::size_t full = std::size_t{1} << n;
  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> dp(full * n, inf);
  for (std::size_t j = 0; j < n; ++j) dp[(std::size_t{1} << j) * n + j] = 0.0;
  for (std::size_t mask = 1; mask < full; ++mask) {
    for (std::size_t j = 0; j < n; ++j) {
      const double here = dp[mask * n + j];
      if (here == inf) continue;
      for (std::size_t k = 0; k < n; ++k) {
        if (mask & (std::size_t{1} << k)) continue;
        double& next = dp[(mask | (std::size_t{1} << k)) * n + k];
        next = std::min(next, here + cloud.dist(j, k));
      }
    }
  }
  double best = inf;
  for (std::size_t j = 0; j < n; ++j) best = std::min(best, dp[(full - 1) * n + j]);
  return best;
}

HeuristicTour tsp_heuristic_tour(std::span<const Item> points) {
  HeuristicTour out;
  if (points.empty()) return out;
  const Cloud all = to_cloud(points);
  // Copies of a point are visited back to back, so the search runs on the
  // distinct points only.
  std::map<std::vector<double>, std::vector<std::size_t>> copies;
  for (std::size_t i = 0; i < all.size(); ++i) {
    copies[std::vector<double>(all.at(i), all.at(i) + all.dim)].push_back(i);
  }
  Cloud cloud;
  cloud.dim = all.dim;
  std::vector<const std::vector<std::size_t>*> members;
  for (const auto& [coords, idx] : copies) {
    cloud.xs.insert(cloud.xs.end(), coords.begin(), coords.end());
    members.push_back(&idx);
  }
  const std::size_t n = cloud.size();
  std::vector<std::size_t> best(1, 0);
  out.length = 0.0;
  if (n > 1) {
    Grid grid(cloud);
    const auto neighbours = neighbour_lists(cloud, grid, 8);
    const std::size_t starts = n <= 64 ? n : 1;
    out.length = std::numeric_limits<double>::infinity();
    for (std::size_t s = 0; s < starts; ++s) {
      auto path = nearest_neighbour_path(cloud, grid, s);
      const std::size_t moves = two_opt(cloud, path, neighbours, 50 * n);
      const double length = path_length(cloud, path);
      if (length < out.length) {
        out.length = length;
        best = std::move(path);
        out.moves = moves;
      }
    }
  }
  for (std::size_t p : best) {
    out.order.insert(out.order.end(), members[p]->begin(), members[p]->end());
  }
  return out;
}

double opt_tsp_heuristic(std::span<const Item> points) {
  return tsp_heuristic_tour(points).length;
}

double brute_force_opt(std::span<const Item> items, const Metric& metric) {
  require_nonempty(items);
  std::vector<std::size_t> order(items.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  double best = std::numeric_limits<double>::infinity();
  do {
    std::vector<double> legs;
    for (std::size_t i = 1; i < order.size(); ++i) {
      legs.push_back(distance(metric, items[order[i - 1]], items[order[i]]));
    }
    best = std::min(best, pairwise_sum(legs));
  } while (std::next_permutation(order.begin(), order.end()));
  return best;
}

}  // namespace osort
