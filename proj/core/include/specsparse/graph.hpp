#pragma once

#include <memory>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace specsparse {

// Undirected weighted edge, canonicalized to u < v inside WeightedGraph.
struct Edge {
  int u = 0;
  int v = 0;
  double w = 1.0;
};

struct DegreeSummary {
  std::vector<int> combinatorial;  // neighbor counts
  std::vector<double> weighted;    // sums of incident weights
  int min_combinatorial = 0;
  int max_combinatorial = 0;
  double min_weighted = 0.0;
  double max_weighted = 0.0;
};

// Truncated breadth-first tree rooted at `root`, depth-limited to `depth`.
// dist[v] == -1 means v was not reached within the radius.
struct BfsTree {
  int root = 0;
  int depth = 0;
  std::vector<int> parent;              // -1 for root and unreached vertices
  std::vector<int> dist;                // hop distance, -1 if unreached
  std::vector<std::vector<int>> levels; // levels[l] = vertices at distance l
};

struct BallSizeReport {
  int root = 0;
  int radius = 0;
  long long measured = 0;  // |{v : dist(root, v) <= radius}|
  double bound = 0.0;      // 2n / (d/4 - 1)^((g-1)/2 - radius)
  bool holds = false;
};

// Immutable undirected weighted graph with dense 0-based vertex ids.
// Parallel edges and self-loops are rejected at construction; the adjacency
// of every vertex is sorted by neighbor id, so iteration order (and hence
// everything downstream of it) is deterministic.  Instances are safe to share
// across threads.
class WeightedGraph {
 public:
  // Takes ownership of `edges`; orientation of each pair is irrelevant.
  // Throws std::invalid_argument on out-of-range ids, self-loops, duplicate
  // edges, or non-positive / non-finite weights.
  WeightedGraph(int n, std::vector<Edge> edges);

  int vertex_count() const { return n_; }
  int edge_count() const { return static_cast<int>(edges_.size()); }

  // Edges in canonical order: u < v, sorted lexicographically.
  const std::vector<Edge>& edges() const { return edges_; }

  // Neighbors of u as (vertex, weight), sorted by vertex id.  Each undirected
  // edge stores the identical weight value in both directions.
  std::span<const std::pair<int, double>> neighbors(int u) const;

  bool has_edge(int u, int v) const;
  // Weight of {u, v}, or 0 when the edge is absent.
  double weight(int u, int v) const;

  const DegreeSummary& degrees() const { return degrees_; }
  bool connected() const { return connected_; }

  // Length of a shortest cycle, or nullopt for forests.  Computed on first
  // use and cached; copies of the graph share the cache.
  std::optional<int> girth() const;

 private:
  struct GirthCache;

  int n_;
  std::vector<Edge> edges_;
  std::vector<std::pair<int, double>> adj_flat_;
  std::vector<int> adj_offsets_;
  DegreeSummary degrees_;
  bool connected_ = false;
  std::shared_ptr<GirthCache> girth_cache_;
};

// --- free functions -------------------------------------------------------

DegreeSummary degrees(const WeightedGraph& g);
std::optional<int> girth(const WeightedGraph& g);
bool connected(const WeightedGraph& g);

// Rescales all weights by one global constant so the maximum weighted degree
// becomes exactly 1.  Throws on graphs without edges.
WeightedGraph normalize_max_weighted_degree(const WeightedGraph& g);

BfsTree bfs_tree(const WeightedGraph& g, int root, int depth);

// Checks the ball-volume bound |B(root, radius)| <= 2n/(d/4-1)^((g-1)/2-radius)
// for a graph of girth >= asserted_girth and minimum degree >= d/4.
// Preconditions (d >= 12, min degree >= d/4, girth >= asserted_girth,
// radius <= (asserted_girth - 1)/2) are verified and violations throw.
BallSizeReport ball_size_check(const WeightedGraph& g, int root, int radius,
                               int asserted_girth, double d);

// Plain-text edge list.  Line 1: "n m"; then one "u v w" line per edge;
// '#' starts a comment, blank lines are skipped.
WeightedGraph load_graph(const std::string& path);
void save_graph(const WeightedGraph& g, const std::string& path);

}  // namespace specsparse
