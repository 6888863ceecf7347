#include "specsparse/graph.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <mutex>
#include <sstream>
#include <stdexcept>

namespace specsparse {

struct WeightedGraph::GirthCache {
  std::once_flag flag;
  std::optional<int> value;
};

namespace {

[[noreturn]] void fail(const std::string& msg) {
  throw std::invalid_argument("graph: " + msg);
}

}  // namespace

WeightedGraph::WeightedGraph(int n, std::vector<Edge> edges)
    : n_(n),
      edges_(std::move(edges)),
      girth_cache_(std::make_shared<GirthCache>()) {
  if (n_ <= 0) fail("vertex count must be positive, got " + std::to_string(n_));

  for (auto& e : edges_) {
    if (e.u < 0 || e.u >= n_ || e.v < 0 || e.v >= n_) {
      fail("edge (" + std::to_string(e.u) + "," + std::to_string(e.v) +
           ") out of range for n=" + std::to_string(n_));
    }
    if (e.u == e.v) fail("self-loop at vertex " + std::to_string(e.u));
    if (!(e.w > 0.0) || !std::isfinite(e.w)) {
      fail("edge (" + std::to_string(e.u) + "," + std::to_string(e.v) +
           ") has non-positive or non-finite weight");
    }
    if (e.u > e.v) std::swap(e.u, e.v);
  }
  std::sort(edges_.begin(), edges_.end(), [](const Edge& a, const Edge& b) {
    return a.u != b.u ? a.u < b.u : a.v < b.v;
  });
  for (std::size_t i = 1; i < edges_.size(); ++i) {
    if (edges_[i].u == edges_[i - 1].u && edges_[i].v == edges_[i - 1].v) {
      fail("duplicate edge (" + std::to_string(edges_[i].u) + "," +
           std::to_string(edges_[i].v) + ")");
    }
  }

  // CSR-style adjacency, sorted by neighbor id on both sides.
  std::vector<int> counts(n_, 0);
  for (const auto& e : edges_) {
    ++counts[e.u];
    ++counts[e.v];
  }
  adj_offsets_.assign(n_ + 1, 0);
  for (int v = 0; v < n_; ++v) adj_offsets_[v + 1] = adj_offsets_[v] + counts[v];
  adj_flat_.resize(adj_offsets_[n_]);
  std::vector<int> cursor(adj_offsets_.begin(), adj_offsets_.end() - 1);
  for (const auto& e : edges_) {
    adj_flat_[cursor[e.u]++] = {e.v, e.w};
    adj_flat_[cursor[e.v]++] = {e.u, e.w};
  }
  for (int v = 0; v < n_; ++v) {
    std::sort(adj_flat_.begin() + adj_offsets_[v],
              adj_flat_.begin() + adj_offsets_[v + 1]);
  }

  degrees_.combinatorial = std::move(counts);
  degrees_.weighted.assign(n_, 0.0);
  for (const auto& e : edges_) {
    degrees_.weighted[e.u] += e.w;
    degrees_.weighted[e.v] += e.w;
  }
  degrees_.min_combinatorial = *std::min_element(degrees_.combinatorial.begin(),
                                                 degrees_.combinatorial.end());
  degrees_.max_combinatorial = *std::max_element(degrees_.combinatorial.begin(),
                                                 degrees_.combinatorial.end());
  degrees_.min_weighted =
      *std::min_element(degrees_.weighted.begin(), degrees_.weighted.end());
  degrees_.max_weighted =
      *std::max_element(degrees_.weighted.begin(), degrees_.weighted.end());

  // Connectivity by BFS from vertex 0.
  std::vector<char> seen(n_, 0);
  std::vector<int> queue{0};
  seen[0] = 1;
  for (std::size_t head = 0; head < queue.size(); ++head) {
    for (auto [nb, w] : neighbors(queue[head])) {
      (void)w;
      if (!seen[nb]) {
        seen[nb] = 1;
        queue.push_back(nb);
      }
    }
  }
  connected_ = static_cast<int>(queue.size()) == n_;
}

std::span<const std::pair<int, double>> WeightedGraph::neighbors(int u) const {
  if (u < 0 || u >= n_) fail("vertex " + std::to_string(u) + " out of range");
  return {adj_flat_.data() + adj_offsets_[u],
          adj_flat_.data() + adj_offsets_[u + 1]};
}

bool WeightedGraph::has_edge(int u, int v) const {
  if (u < 0 || u >= n_ || v < 0 || v >= n_) return false;
  auto nb = neighbors(u);
  auto it = std::lower_bound(
      nb.begin(), nb.end(), v,
      [](const std::pair<int, double>& a, int b) { return a.first < b; });
  return it != nb.end() && it->first == v;
}

double WeightedGraph::weight(int u, int v) const {
  if (u < 0 || u >= n_ || v < 0 || v >= n_) return 0.0;
  auto nb = neighbors(u);
  auto it = std::lower_bound(
      nb.begin(), nb.end(), v,
      [](const std::pair<int, double>& a, int b) { return a.first < b; });
  return (it != nb.end() && it->first == v) ? it->second : 0.0;
}

namespace {

// Shortest cycle length by BFS from every vertex.  Standard trick: a non-tree
// edge (u,v) scanned while u is being expanded witnesses a cycle through the
// root of length dist[u] + dist[v] + 1.  The minimum of the witnesses over all
// roots is exactly the girth, and expansion can stop once 2*dist[u] + 1 would
// already reach the current best.
std::optional<int> compute_girth(const WeightedGraph& g) {
  const int n = g.vertex_count();
  int best = std::numeric_limits<int>::max();
  std::vector<int> dist(n), parent(n);
  std::vector<int> queue;
  queue.reserve(n);
  for (int root = 0; root < n; ++root) {
    std::fill(dist.begin(), dist.end(), -1);
    std::fill(parent.begin(), parent.end(), -1);
    queue.clear();
    queue.push_back(root);
    dist[root] = 0;
    for (std::size_t head = 0; head < queue.size(); ++head) {
      const int u = queue[head];
      if (best != std::numeric_limits<int>::max() && 2 * dist[u] + 1 >= best) {
        break;  // queue is ordered by distance; nothing better remains
      }
      for (auto [v, w] : g.neighbors(u)) {
        (void)w;
        if (dist[v] == -1) {
          dist[v] = dist[u] + 1;
          parent[v] = u;
          queue.push_back(v);
        } else if (v != parent[u]) {
          best = std::min(best, dist[u] + dist[v] + 1);
        }
      }
    }
    if (best == 3) return 3;  // can't do better, stop scanning roots
  }
  if (best == std::numeric_limits<int>::max()) return std::nullopt;
  return best;
}

}  // namespace

std::optional<int> WeightedGraph::girth() const {
  std::call_once(girth_cache_->flag,
                 [&] { girth_cache_->value = compute_girth(*this); });
  return girth_cache_->value;
}

DegreeSummary degrees(const WeightedGraph& g) { return g.degrees(); }
std::optional<int> girth(const WeightedGraph& g) { return g.girth(); }
bool connected(const WeightedGraph& g) { return g.connected(); }

WeightedGraph normalize_max_weighted_degree(const WeightedGraph& g) {
  if (g.edge_count() == 0) {
    throw std::invalid_argument(
        "normalize_max_weighted_degree: graph has no edges");
  }
  const double dmax = g.degrees().max_weighted;
  std::vector<Edge> scaled = g.edges();
  for (auto& e : scaled) e.w /= dmax;
  return WeightedGraph(g.vertex_count(), std::move(scaled));
}

BfsTree bfs_tree(const WeightedGraph& g, int root, int depth) {
  const int n = g.vertex_count();
  if (root < 0 || root >= n) {
    throw std::invalid_argument("bfs_tree: root out of range");
  }
  if (depth < 0) throw std::invalid_argument("bfs_tree: negative depth");

  BfsTree t;
  t.root = root;
  t.depth = depth;
  t.parent.assign(n, -1);
  t.dist.assign(n, -1);
  t.levels.assign(depth + 1, {});

  std::vector<int> queue{root};
  t.dist[root] = 0;
  t.levels[0].push_back(root);
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const int u = queue[head];
    if (t.dist[u] == depth) break;
    for (auto [v, w] : g.neighbors(u)) {
      (void)w;
      if (t.dist[v] == -1) {
        t.dist[v] = t.dist[u] + 1;
        t.parent[v] = u;
        t.levels[t.dist[v]].push_back(v);
        queue.push_back(v);
      }
    }
  }
  return t;
}

BallSizeReport ball_size_check(const WeightedGraph& g, int root, int radius,
                               int asserted_girth, double d) {
  if (d < 12.0) {
    throw std::invalid_argument("ball_size_check: requires d >= 12, got " +
                                std::to_string(d));
  }
  if (g.degrees().min_combinatorial < d / 4.0) {
    throw std::invalid_argument(
        "ball_size_check: minimum degree " +
        std::to_string(g.degrees().min_combinatorial) + " below d/4 = " +
        std::to_string(d / 4.0));
  }
  auto girth_opt = g.girth();
  if (!girth_opt || *girth_opt < asserted_girth) {
    throw std::invalid_argument(
        "ball_size_check: girth " +
        (girth_opt ? std::to_string(*girth_opt) : std::string("inf")) +
        " below asserted " + std::to_string(asserted_girth));
  }
  const double half = (asserted_girth - 1) / 2.0;
  if (radius < 0 || radius > half) {
    throw std::invalid_argument(
        "ball_size_check: radius must lie in [0, (g-1)/2]");
  }

  const BfsTree t = bfs_tree(g, root, radius);
  long long measured = 0;
  for (const auto& level : t.levels) measured += static_cast<long long>(level.size());

  BallSizeReport rep;
  rep.root = root;
  rep.radius = radius;
  rep.measured = measured;
  rep.bound =
      2.0 * g.vertex_count() / std::pow(d / 4.0 - 1.0, half - radius);
  rep.holds = static_cast<double>(measured) <= rep.bound;
  return rep;
}

// --- edge-list I/O ---------------------------------------------------------

namespace {

[[noreturn]] void parse_fail(const std::string& path, int line,
                             const std::string& msg) {
  throw std::runtime_error(path + ":" + std::to_string(line) + ": " + msg);
}

}  // namespace

WeightedGraph load_graph(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open graph file: " + path);

  int n = -1;
  long long m = -1;
  std::vector<Edge> edges;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) {
      line.erase(hash);
    }
    std::istringstream ss(line);
    if (n < 0) {
      if (!(ss >> n >> m)) {
        ss.clear();
        std::string tok;
        if (ss >> tok) parse_fail(path, lineno, "expected header 'n m'");
        n = -1;  // blank / comment-only line before the header
        continue;
      }
      if (n <= 0 || m < 0) parse_fail(path, lineno, "invalid header 'n m'");
    } else {
      Edge e;
      if (!(ss >> e.u >> e.v >> e.w)) {
        ss.clear();
        std::string tok;
        if (ss >> tok) parse_fail(path, lineno, "expected edge 'u v w'");
        continue;
      }
      edges.push_back(e);
    }
    std::string extra;
    if (ss >> extra) parse_fail(path, lineno, "trailing tokens: '" + extra + "'");
  }
  if (n < 0) throw std::runtime_error(path + ": missing header line");
  if (static_cast<long long>(edges.size()) != m) {
    throw std::runtime_error(path + ": header promises " + std::to_string(m) +
                             " edges, file contains " +
                             std::to_string(edges.size()));
  }
  try {
    return WeightedGraph(n, std::move(edges));
  } catch (const std::invalid_argument& e) {
    throw std::runtime_error(path + ": " + e.what());
  }
}

void save_graph(const WeightedGraph& g, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write graph file: " + path);
  out << g.vertex_count() << ' ' << g.edge_count() << '\n';
  char buf[64];
  for (const auto& e : g.edges()) {
    // %.17g round-trips doubles exactly.
    std::snprintf(buf, sizeof(buf), "%.17g", e.w);
    out << e.u << ' ' << e.v << ' ' << buf << '\n';
  }
  if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace specsparse
