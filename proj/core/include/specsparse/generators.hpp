#pragma once

#include <cstdint>

#include "specsparse/graph.hpp"

namespace specsparse {

// All generators produce unit weights; rescale afterwards if needed.

WeightedGraph gen_complete(int n);

WeightedGraph gen_cycle(int n);  // n >= 3

// dim-dimensional hypercube on 2^dim vertices (dim >= 1).
WeightedGraph gen_hypercube(int dim);

// Random simple d-regular graph with girth >= min_girth, deterministic in
// `seed`.  Starts from a configuration-model pairing and repairs defects
// (multi-edges, self-loops, short cycles) with validated edge switches; gives
// up after max_attempts switch attempts.  min_girth <= 2 means "no girth
// constraint".  Requires n > d >= 1 and n*d even.
WeightedGraph gen_random_regular(int n, int d, int min_girth,
                                 std::uint64_t seed,
                                 long long max_attempts = 100000);

}  // namespace specsparse
