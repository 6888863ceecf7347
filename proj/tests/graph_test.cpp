#include "specsparse/graph.hpp"

#include <cstdio>
#include <fstream>
#include <queue>
#include <string>
#include <vector>

#include "doctest.h"
#include "specsparse/generators.hpp"

using namespace specsparse;

namespace {

// Independent girth oracle: for every edge {u,v}, delete it and find the
// shortest remaining u-v path by BFS; the best closure is the girth.  This
// shares no code with the library's per-root BFS computation.
std::optional<int> girth_by_edge_deletion(const WeightedGraph& g) {
  const int n = g.vertex_count();
  int best = -1;
  for (const auto& e : g.edges()) {
    std::vector<int> dist(n, -1);
    std::queue<int> q;
    dist[e.u] = 0;
    q.push(e.u);
    while (!q.empty()) {
      const int x = q.front();
      q.pop();
      if (x == e.v) break;
      for (const auto& [y, w] : g.neighbors(x)) {
        (void)w;
        if (x == e.u && y == e.v) continue;  // the deleted edge
        if (x == e.v && y == e.u) continue;
        if (dist[y] < 0) {
          dist[y] = dist[x] + 1;
          q.push(y);
        }
      }
    }
    if (dist[e.v] > 0 && (best < 0 || dist[e.v] + 1 < best)) {
      best = dist[e.v] + 1;
    }
  }
  if (best < 0) return std::nullopt;
  return best;
}

std::string write_temp(const std::string& name, const std::string& body) {
  const std::string path = name;
  std::ofstream out(path);
  out << body;
  return path;
}

}  // namespace

TEST_CASE("construction validates ids, loops, duplicates, and weights") {
  CHECK_NOTHROW(WeightedGraph(3, {{0, 1, 1.0}, {1, 2, 0.5}}));
  CHECK_THROWS_AS(WeightedGraph(2, {{0, 2, 1.0}}), std::invalid_argument);
  CHECK_THROWS_AS(WeightedGraph(2, {{1, 1, 1.0}}), std::invalid_argument);
  CHECK_THROWS_AS(WeightedGraph(3, {{0, 1, 1.0}, {1, 0, 2.0}}),
                  std::invalid_argument);
  CHECK_THROWS_AS(WeightedGraph(2, {{0, 1, 0.0}}), std::invalid_argument);
  CHECK_THROWS_AS(WeightedGraph(2, {{0, 1, -1.0}}), std::invalid_argument);
}

TEST_CASE("edges are canonicalized and adjacency is sorted") {
  const WeightedGraph g(4, {{3, 1, 0.25}, {2, 0, 1.0}, {1, 0, 0.5}});
  REQUIRE(g.edge_count() == 3);
  CHECK(g.edges()[0].u == 0);
  CHECK(g.edges()[0].v == 1);
  CHECK(g.edges()[1].v == 2);
  CHECK(g.edges()[2].u == 1);
  CHECK(g.edges()[2].v == 3);
  CHECK(g.weight(1, 3) == 0.25);
  CHECK(g.weight(3, 1) == 0.25);
  CHECK(g.weight(0, 3) == 0.0);
  CHECK(g.has_edge(0, 2));
  CHECK_FALSE(g.has_edge(2, 3));

  const auto nbs = g.neighbors(1);
  REQUIRE(nbs.size() == 2);
  CHECK(nbs[0].first == 0);
  CHECK(nbs[1].first == 3);
}

TEST_CASE("degree summary matches hand computation") {
  const WeightedGraph g(3, {{0, 1, 0.3}, {1, 2, 0.5}});
  const DegreeSummary& d = g.degrees();
  CHECK(d.combinatorial == std::vector<int>{1, 2, 1});
  CHECK(d.weighted[0] == doctest::Approx(0.3));
  CHECK(d.weighted[1] == doctest::Approx(0.8));
  CHECK(d.weighted[2] == doctest::Approx(0.5));
  CHECK(d.min_combinatorial == 1);
  CHECK(d.max_combinatorial == 2);
  CHECK(d.min_weighted == doctest::Approx(0.3));
  CHECK(d.max_weighted == doctest::Approx(0.8));
}

TEST_CASE("connectivity") {
  CHECK(WeightedGraph(3, {{0, 1, 1}, {1, 2, 1}}).connected());
  CHECK_FALSE(WeightedGraph(4, {{0, 1, 1}, {2, 3, 1}}).connected());
  CHECK(WeightedGraph(1, {}).connected());
  CHECK_FALSE(WeightedGraph(2, {}).connected());
}

TEST_CASE("girth agrees with the edge-deletion oracle on small graphs") {
  std::vector<WeightedGraph> graphs;
  graphs.push_back(gen_complete(4));
  graphs.push_back(gen_complete(7));
  graphs.push_back(gen_cycle(5));
  graphs.push_back(gen_cycle(12));
  graphs.push_back(gen_hypercube(3));
  // Petersen graph: girth 5.
  graphs.push_back(WeightedGraph(
      10, {{0, 1, 1}, {1, 2, 1}, {2, 3, 1}, {3, 4, 1}, {4, 0, 1},
           {0, 5, 1}, {1, 6, 1}, {2, 7, 1}, {3, 8, 1}, {4, 9, 1},
           {5, 7, 1}, {7, 9, 1}, {9, 6, 1}, {6, 8, 1}, {8, 5, 1}}));
  // A tree has no cycle at all.
  graphs.push_back(WeightedGraph(5, {{0, 1, 1}, {0, 2, 1}, {2, 3, 1}, {2, 4, 1}}));

  for (const auto& g : graphs) {
    CAPTURE(g.vertex_count());
    CHECK(g.girth() == girth_by_edge_deletion(g));
  }
  CHECK(gen_cycle(12).girth() == std::optional<int>(12));
  CHECK(gen_hypercube(4).girth() == std::optional<int>(4));
}

TEST_CASE("bfs_tree levels, parents, and truncation") {
  // Path 0-1-2-3 explored from 0 with depth 2.
  const WeightedGraph g(4, {{0, 1, 1}, {1, 2, 1}, {2, 3, 1}});
  const BfsTree t = bfs_tree(g, 0, 2);
  CHECK(t.root == 0);
  CHECK(t.dist == std::vector<int>{0, 1, 2, -1});
  CHECK(t.parent[0] == -1);
  CHECK(t.parent[1] == 0);
  CHECK(t.parent[2] == 1);
  CHECK(t.parent[3] == -1);
  REQUIRE(t.levels.size() == 3);
  CHECK(t.levels[0] == std::vector<int>{0});
  CHECK(t.levels[2] == std::vector<int>{2});
}

TEST_CASE("normalize_max_weighted_degree rescales to unit max degree") {
  const WeightedGraph g(3, {{0, 1, 0.3}, {1, 2, 0.5}});
  const WeightedGraph h = normalize_max_weighted_degree(g);
  CHECK(h.degrees().max_weighted == doctest::Approx(1.0).epsilon(1e-14));
  // Ratios of weights survive.
  CHECK(h.weight(0, 1) / h.weight(1, 2) == doctest::Approx(0.6));
}

TEST_CASE("ball_size_check validates its hypotheses") {
  const WeightedGraph k13 = gen_complete(13);  // degree 12, girth 3
  // Radius must fit under (girth-1)/2.
  CHECK_THROWS_AS(ball_size_check(k13, 0, 2, 3, 12.0), std::invalid_argument);
  // d must be at least 12.
  CHECK_THROWS_AS(ball_size_check(k13, 0, 1, 3, 8.0), std::invalid_argument);
  // Asserted girth may not exceed the real girth.
  CHECK_THROWS_AS(ball_size_check(k13, 0, 1, 4, 12.0), std::invalid_argument);

  const BallSizeReport rep = ball_size_check(k13, 0, 1, 3, 12.0);
  CHECK(rep.measured == 13);
  CHECK(rep.bound == doctest::Approx(26.0));  // 2n / (d/4 - 1)^0
  CHECK(rep.holds);
}

TEST_CASE("ball bound is meaningful on a high-girth cubic graph") {
  // Heawood graph: 3-regular, girth 6, 14 vertices.  With d = 12 the degree
  // floor d/4 = 3 is met exactly.
  const WeightedGraph heawood(
      14, {{0, 1, 1},  {1, 2, 1},  {2, 3, 1},  {3, 4, 1},  {4, 5, 1},
           {5, 6, 1},  {6, 7, 1},  {7, 8, 1},  {8, 9, 1},  {9, 10, 1},
           {10, 11, 1}, {11, 12, 1}, {12, 13, 1}, {13, 0, 1}, {0, 5, 1},
           {1, 10, 1}, {2, 7, 1},  {3, 12, 1}, {4, 9, 1},  {6, 11, 1},
           {8, 13, 1}});
  REQUIRE(heawood.girth() == std::optional<int>(6));
  for (int radius = 0; radius <= 2; ++radius) {
    const BallSizeReport rep = ball_size_check(heawood, 0, radius, 6, 12.0);
    CAPTURE(radius);
    CHECK(rep.holds);
    CHECK(rep.measured <= rep.bound);
  }
}

TEST_CASE("edge-list save/load round trip") {
  const WeightedGraph g(5, {{0, 1, 0.125}, {1, 2, 1.0}, {2, 3, 0.7},
                            {3, 4, 1e-3}, {0, 4, 123456.75}});
  save_graph(g, "graph_roundtrip.el");
  const WeightedGraph h = load_graph("graph_roundtrip.el");
  REQUIRE(h.vertex_count() == 5);
  REQUIRE(h.edge_count() == 5);
  for (const auto& e : g.edges()) {
    CHECK(h.weight(e.u, e.v) == e.w);  // %.17g is lossless for doubles
  }
  std::remove("graph_roundtrip.el");
}

TEST_CASE("load_graph accepts comments and reports parse errors by line") {
  const auto path = write_temp("graph_ok.el",
                               "# a triangle\n3 3\n0 1 1.0\n# middle\n1 2 1.0\n0 2 0.5\n");
  const WeightedGraph g = load_graph(path);
  CHECK(g.vertex_count() == 3);
  CHECK(g.edge_count() == 3);
  std::remove(path.c_str());

  struct Bad {
    const char* name;
    const char* body;
  };
  const Bad bad[] = {
      {"graph_bad_header.el", "3\n"},
      {"graph_bad_count.el", "3 2\n0 1 1.0\n"},
      {"graph_bad_token.el", "3 1\n0 1 1.0 extra\n"},
      {"graph_bad_weight.el", "3 1\n0 1 -2\n"},
      {"graph_bad_loop.el", "3 1\n2 2 1.0\n"},
      {"graph_bad_dup.el", "3 2\n0 1 1.0\n1 0 1.0\n"},
  };
  for (const auto& b : bad) {
    const auto p = write_temp(b.name, b.body);
    CAPTURE(b.name);
    // File problems surface as runtime errors tagged with path and line.
    CHECK_THROWS_AS(load_graph(p), std::runtime_error);
    std::remove(p.c_str());
  }
  CHECK_THROWS_AS(load_graph("no_such_file.el"), std::runtime_error);
}
