#include "specsparse/generators.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "specsparse/rng.hpp"

namespace specsparse {

WeightedGraph gen_complete(int n) {
  if (n < 1) throw std::invalid_argument("gen_complete: n must be >= 1");
  std::vector<Edge> edges;
  edges.reserve(static_cast<std::size_t>(n) * (n - 1) / 2);
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) edges.push_back({u, v, 1.0});
  return WeightedGraph(n, std::move(edges));
}

WeightedGraph gen_cycle(int n) {
  if (n < 3) throw std::invalid_argument("gen_cycle: n must be >= 3");
  std::vector<Edge> edges;
  edges.reserve(n);
  for (int u = 0; u < n; ++u) edges.push_back({u, (u + 1) % n, 1.0});
  return WeightedGraph(n, std::move(edges));
}

WeightedGraph gen_hypercube(int dim) {
  if (dim < 0 || dim > 20) {
    throw std::invalid_argument("gen_hypercube: dim must be in [0, 20]");
  }
  const int n = 1 << dim;
  std::vector<Edge> edges;
  edges.reserve(static_cast<std::size_t>(n) * dim / 2);
  for (int x = 0; x < n; ++x) {
    for (int b = 0; b < dim; ++b) {
      const int y = x ^ (1 << b);
      if (x < y) edges.push_back({x, y, 1.0});
    }
  }
  return WeightedGraph(n, std::move(edges));
}

namespace {

// Depth-limited BFS distance between two vertices over set-based adjacency.
// Uses epoch-stamped visit marks so repeated calls do not reallocate.
struct LimitedBfs {
  std::vector<int> mark, dist, queue;
  int epoch = 0;

  explicit LimitedBfs(int n) : mark(n, 0), dist(n, 0) { queue.reserve(n); }

  // Distance from src to dst, or -1 if it exceeds `limit`.
  int run(const std::vector<std::set<int>>& adj, int src, int dst, int limit) {
    if (limit < 0) return -1;
    if (src == dst) return 0;
    ++epoch;
    queue.clear();
    queue.push_back(src);
    mark[src] = epoch;
    dist[src] = 0;
    for (std::size_t head = 0; head < queue.size(); ++head) {
      const int u = queue[head];
      if (dist[u] == limit) break;
      for (int v : adj[u]) {
        if (mark[v] == epoch) continue;
        if (v == dst) return dist[u] + 1;
        mark[v] = epoch;
        dist[v] = dist[u] + 1;
        queue.push_back(v);
      }
    }
    return -1;
  }
};

std::vector<int> component_labels(const std::vector<std::set<int>>& adj) {
  const int n = static_cast<int>(adj.size());
  std::vector<int> label(n, -1);
  int next = 0;
  std::vector<int> queue;
  for (int s = 0; s < n; ++s) {
    if (label[s] != -1) continue;
    label[s] = next;
    queue.assign(1, s);
    for (std::size_t head = 0; head < queue.size(); ++head) {
      for (int v : adj[queue[head]]) {
        if (label[v] == -1) {
          label[v] = next;
          queue.push_back(v);
        }
      }
    }
    ++next;
  }
  return label;
}

}  // namespace

// Configuration-model pairing followed by defect repair.  Whole-graph
// rejection is useless here: at interesting sizes the probability that a raw
// pairing is simple with large girth is astronomically small, while repairing
// defects one switch at a time converges in a few thousand attempts.  Each
// switch is validated before it is applied (the two replacement edges must
// not create self-loops, parallel edges, or cycles shorter than min_girth),
// so the number of defects strictly decreases and the loop terminates.
WeightedGraph gen_random_regular(int n, int d, int min_girth,
                                 std::uint64_t seed, long long max_attempts) {
  if (d < 1) throw std::invalid_argument("gen_random_regular: d must be >= 1");
  if (n <= d) throw std::invalid_argument("gen_random_regular: need n > d");
  if ((static_cast<long long>(n) * d) % 2 != 0) {
    throw std::invalid_argument("gen_random_regular: n*d must be even");
  }
  if (max_attempts < 1) {
    throw std::invalid_argument("gen_random_regular: max_attempts must be >= 1");
  }

  Rng rng(seed);
  long long attempts = 0;
  auto charge = [&]() {
    if (++attempts > max_attempts) {
      throw std::runtime_error(
          "gen_random_regular: gave up after " + std::to_string(attempts - 1) +
          " switch attempts (n=" + std::to_string(n) + ", d=" +
          std::to_string(d) + ", min_girth=" + std::to_string(min_girth) +
          "); the parameters may be infeasible");
    }
  };

  const std::size_t m = static_cast<std::size_t>(n) * d / 2;

  // Stub pairing.
  std::vector<int> stubs(static_cast<std::size_t>(n) * d);
  for (std::size_t i = 0; i < stubs.size(); ++i) stubs[i] = static_cast<int>(i) / d;
  rng.shuffle(stubs);
  std::vector<std::pair<int, int>> pairs(m);
  for (std::size_t i = 0; i < m; ++i) pairs[i] = {stubs[2 * i], stubs[2 * i + 1]};

  // Phase 1: repair self-loops and parallel edges.  Multiplicities live in an
  // ordered map while the multigraph is not yet simple.
  auto key = [](int a, int b) {
    return a < b ? std::make_pair(a, b) : std::make_pair(b, a);
  };
  std::map<std::pair<int, int>, int> mult;
  for (const auto& [a, b] : pairs) ++mult[key(a, b)];
  auto is_bad = [&](std::size_t i) {
    const auto& [a, b] = pairs[i];
    return a == b || mult[key(a, b)] > 1;
  };

  std::deque<std::size_t> bad;
  for (std::size_t i = 0; i < m; ++i)
    if (is_bad(i)) bad.push_back(i);

  while (!bad.empty()) {
    const std::size_t i = bad.front();
    if (!is_bad(i)) {
      bad.pop_front();
      continue;
    }
    charge();
    const std::size_t j = rng.below(m);
    if (j == i) continue;
    auto [a, b] = pairs[i];
    auto [c, e] = pairs[j];
    if (rng.next_u64() & 1) std::swap(c, e);
    // Replacement edges (a,c) and (b,e).
    if (a == c || b == e) continue;
    --mult[key(a, b)];
    --mult[key(c, e)];
    if (mult[key(a, c)] > 0 || mult[key(b, e)] > 0 || key(a, c) == key(b, e)) {
      ++mult[key(a, b)];
      ++mult[key(c, e)];
      continue;
    }
    pairs[i] = {a, c};
    pairs[j] = {b, e};
    ++mult[key(a, c)];
    ++mult[key(b, e)];
  }

  // The graph is now simple; move to set adjacency for the girth and
  // connectivity phases.
  std::vector<std::set<int>> adj(n);
  for (const auto& [a, b] : pairs) {
    adj[a].insert(b);
    adj[b].insert(a);
  }
  LimitedBfs bfs(n);

  // An edge (u,v) lies on a cycle shorter than g exactly when u and v stay
  // within distance g-2 after the edge is removed.
  auto on_short_cycle = [&](int u, int v) {
    adj[u].erase(v);
    adj[v].erase(u);
    const int dd = bfs.run(adj, u, v, min_girth - 2);
    adj[u].insert(v);
    adj[v].insert(u);
    return dd != -1;
  };

  // Try to replace edges (u,v) and (a,b) by (u,a) and (v,b); returns false
  // (leaving the graph untouched) if the replacements would create a loop,
  // a parallel edge, or a cycle shorter than min_girth.
  auto try_switch = [&](std::size_t i, std::size_t j) {
    auto [u, v] = pairs[i];
    auto [a, b] = pairs[j];
    if (rng.next_u64() & 1) std::swap(a, b);
    if (u == a || u == b || v == a || v == b) return false;
    if (adj[u].count(a) || adj[v].count(b)) return false;
    adj[u].erase(v);
    adj[v].erase(u);
    adj[a].erase(b);
    adj[b].erase(a);
    bool ok = bfs.run(adj, u, a, min_girth - 2) == -1;
    if (ok) {
      adj[u].insert(a);
      adj[a].insert(u);
      ok = bfs.run(adj, v, b, min_girth - 2) == -1;
      if (!ok) {
        adj[u].erase(a);
        adj[a].erase(u);
      }
    }
    if (!ok) {
      adj[u].insert(v);
      adj[v].insert(u);
      adj[a].insert(b);
      adj[b].insert(a);
      return false;
    }
    adj[v].insert(b);
    adj[b].insert(v);
    pairs[i] = {u, a};
    pairs[j] = {v, b};
    return true;
  };

  // Phase 2: break short cycles.  Validated switches never create new short
  // cycles, so one initial sweep finds every edge that will ever need work.
  if (min_girth >= 3 && d >= 2) {
    std::deque<std::size_t> defects;
    for (std::size_t i = 0; i < m; ++i) {
      if (on_short_cycle(pairs[i].first, pairs[i].second)) defects.push_back(i);
    }
    while (!defects.empty()) {
      const std::size_t i = defects.front();
      if (!on_short_cycle(pairs[i].first, pairs[i].second)) {
        defects.pop_front();
        continue;
      }
      charge();
      const std::size_t j = rng.below(m);
      if (j != i) try_switch(i, j);
    }
  }

  // Phase 3: connect the components (d == 1 stays a perfect matching; there
  // is nothing a degree-preserving switch could do for it).
  if (d >= 2) {
    for (;;) {
      const std::vector<int> label = component_labels(adj);
      const int comps = 1 + *std::max_element(label.begin(), label.end());
      if (comps == 1) break;
      // First edge outside the component of vertex 0...
      std::size_t i = m;
      for (std::size_t t = 0; t < m; ++t) {
        if (label[pairs[t].first] != label[0]) {
          i = t;
          break;
        }
      }
      // ...switched against a random edge of a different component.  This
      // merges components (or at worst reshuffles them when both edges are
      // bridges), and the validation keeps the girth intact.
      for (;;) {
        charge();
        const std::size_t j = rng.below(m);
        if (label[pairs[j].first] == label[pairs[i].first]) continue;
        if (try_switch(i, j)) break;
      }
    }
  }

  std::vector<Edge> edges;
  edges.reserve(m);
  for (const auto& [a, b] : pairs) edges.push_back({a, b, 1.0});
  WeightedGraph g(n, std::move(edges));

  // Paranoia: the repair loops above are supposed to guarantee all of this.
  const auto gg = g.girth();
  if (min_girth >= 3 && d >= 2 && gg && *gg < min_girth) {
    throw std::logic_error("gen_random_regular: girth repair failed");
  }
  if (d >= 2 && !g.connected()) {
    throw std::logic_error("gen_random_regular: connectivity repair failed");
  }
  return g;
}

}  // namespace specsparse
