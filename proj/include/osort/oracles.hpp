#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "osort/core.hpp"

namespace osort {

// max - min of real items. Throws EmptyInput.
double opt_1d(std::span<const Item> items);

// Distinct labels minus one. Throws EmptyInput.
std::size_t opt_uniform(std::span<const Item> items);

inline constexpr std::size_t kHeldKarpLimit = 15;

// Exact shortest open path through the distinct points (Held-Karp).
// Throws TooManyPoints above kHeldKarpLimit distinct points.
double opt_tsp_exact(std::span<const Item> points);

// Length of a feasible open path: nearest neighbour, then 2-opt with
// k-nearest candidate lists, at most 50 n improving moves. Small inputs try
// every start point.
double opt_tsp_heuristic(std::span<const Item> points);

struct HeuristicTour {
  std::vector<std::size_t> order;  // indices into the input
  double length = 0.0;
  std::size_t moves = 0;
};
HeuristicTour tsp_heuristic_tour(std::span<const Item> points);

// Minimum of `cost` over all arrangements of the items, by enumerating
// permutations. Intended for n <= 8.
double brute_force_opt(std::span<const Item> items, const Metric& metric);

}  // namespace osort
