#include "specsparse/certificates.hpp"

#include <cmath>
#include <functional>
#include <vector>

#include "doctest.h"
#include "specsparse/generators.hpp"
#include "specsparse/graph.hpp"
#include "specsparse/spectral.hpp"

using namespace specsparse;

namespace {

WeightedGraph weighted_cycle(int n, double w) {
  std::vector<Edge> edges;
  for (int i = 0; i < n; ++i) edges.push_back({i, (i + 1) % n, w});
  return WeightedGraph(n, edges);
}

WeightedGraph uniform_weight(const WeightedGraph& g, double w) {
  std::vector<Edge> edges = g.edges();
  for (auto& e : edges) e.w = w;
  return WeightedGraph(g.vertex_count(), edges);
}

// Independent route to f^T W f: over the build tree, each edge (parent, v)
// contributes 2 sqrt(w) f(v)^2, and no other edge touches the support when
// the radius is admissible.
double fwf_by_tree(const WeightedGraph& g, const TestFunction& tf) {
  double acc = 0.0;
  for (std::size_t l = 1; l < tf.tree.levels.size(); ++l) {
    for (int v : tf.tree.levels[l]) {
      const double w = g.weight(tf.tree.parent[v], v);
      acc += 2.0 * std::sqrt(w) * tf.values[v] * tf.values[v];
    }
  }
  return acc;
}

double fwf_by_edges(const WeightedGraph& g, const Eigen::VectorXd& f) {
  double acc = 0.0;
  for (const auto& e : g.edges()) acc += 2.0 * e.w * f[e.u] * f[e.v];
  return acc;
}

// Exhaustive stationary-walk enumeration; shares nothing with the library's
// directed-edge dynamic program.
struct WalkOracle {
  double expected_sum = 0.0;
  double backtrack_mass = 0.0;
  double total_prob = 0.0;
  std::vector<double> bt_prob;
};

WalkOracle enumerate_walks(const WeightedGraph& g, int k) {
  WalkOracle o;
  o.bt_prob.assign(k >= 2 ? k - 1 : 0, 0.0);
  const Eigen::VectorXd pi = stationary_distribution(g);
  const auto& wd = g.degrees().weighted;
  std::vector<int> path;
  const std::function<void(double, double, bool)> rec = [&](double prob,
                                                            double sum,
                                                            bool backtracked) {
    const int len = static_cast<int>(path.size()) - 1;
    if (len == k) {
      o.expected_sum += prob * sum;
      o.total_prob += prob;
      if (backtracked) o.backtrack_mass += prob * sum;
      return;
    }
    const int cur = path.back();
    for (const auto& [nxt, w] : g.neighbors(cur)) {
      const double trans = w / wd[cur];
      const bool bt = path.size() >= 2 && nxt == path[path.size() - 2];
      if (bt) o.bt_prob[len - 1] += prob * trans;
      path.push_back(nxt);
      rec(prob * trans, sum + std::sqrt(w), backtracked || bt);
      path.pop_back();
    }
  };
  for (int v = 0; v < g.vertex_count(); ++v) {
    path.assign(1, v);
    rec(pi[v], 0.0, false);
  }
  return o;
}

// Sum over non-backtracking paths of 2 pi(v0) sqrt(w_last) prod w_i, for all
// lengths 1..k; with 2k+1 < girth this reproduces the pi-average of f^T W f.
double pi_average_by_paths(const WeightedGraph& g, int k) {
  double acc = 0.0;
  const Eigen::VectorXd pi = stationary_distribution(g);
  std::vector<int> path;
  const std::function<void(double)> rec = [&](double wprod) {
    const int len = static_cast<int>(path.size()) - 1;
    if (len >= 1) {
      const double w_last =
          g.weight(path[path.size() - 2], path.back());
      acc += 2.0 * pi[path[0]] * std::sqrt(w_last) * wprod;
    }
    if (len == k) return;
    for (const auto& [nxt, w] : g.neighbors(path.back())) {
      if (path.size() >= 2 && nxt == path[path.size() - 2]) continue;
      path.push_back(nxt);
      rec(wprod * w);
      path.pop_back();
    }
  };
  for (int v = 0; v < g.vertex_count(); ++v) {
    path.assign(1, v);
    rec(1.0);
  }
  return acc;
}

}  // namespace

TEST_CASE("test_function values on a weighted path") {
  const WeightedGraph path(3, {{0, 1, 0.3}, {1, 2, 0.5}});
  const TestFunction tf = test_function(path, 0, 2);
  CHECK(tf.values[0] == 1.0);
  CHECK(tf.values[1] == doctest::Approx(std::sqrt(0.3)).epsilon(1e-15));
  CHECK(tf.values[2] == doctest::Approx(std::sqrt(0.15)).epsilon(1e-15));
  REQUIRE(tf.level_norm2.size() == 3);
  CHECK(tf.level_norm2[0] == 1.0);
  CHECK(tf.level_norm2[1] == doctest::Approx(0.3).epsilon(1e-15));
  CHECK(tf.level_norm2[2] == doctest::Approx(0.15).epsilon(1e-15));

  // From the middle with radius 1, both neighbors are scaled leaves.
  const TestFunction mid = test_function(path, 1, 1);
  CHECK(mid.values[0] == doctest::Approx(std::sqrt(0.3)));
  CHECK(mid.values[2] == doctest::Approx(std::sqrt(0.5)));
}

TEST_CASE("test_function needs 2k+1 < girth") {
  const WeightedGraph c5 = weighted_cycle(5, 0.5);
  CHECK_NOTHROW(test_function(c5, 0, 1));
  CHECK_THROWS_AS(test_function(c5, 0, 2), std::invalid_argument);
  // Trees have no cycle, so any radius is fine.
  const WeightedGraph tree(4, {{0, 1, 1}, {1, 2, 1}, {2, 3, 1}});
  CHECK_NOTHROW(test_function(tree, 0, 3));
}

TEST_CASE("level masses on the half-weight cycle") {
  const WeightedGraph c8 = weighted_cycle(8, 0.5);
  double norm2 = 0.0;
  for (double c : test_function(c8, 0, 2).level_norm2) norm2 += c;
  CHECK(norm2 == doctest::Approx(2.5).epsilon(1e-14));
  norm2 = 0.0;
  for (double c : test_function(c8, 0, 3).level_norm2) norm2 += c;
  CHECK(norm2 == doctest::Approx(2.75).epsilon(1e-14));
}

TEST_CASE("edge route and tree route to fWf agree; sign flip negates it") {
  const WeightedGraph g = uniform_weight(gen_random_regular(60, 3, 6, 11),
                                         1.0 / 3.0);
  const TestFunction tf = test_function(g, 5, 2);
  const double by_edges = fwf_by_edges(g, tf.values);
  CHECK(by_edges == doctest::Approx(fwf_by_tree(g, tf)).epsilon(1e-13));

  const Eigen::VectorXd fs = signed_test_function(tf);
  CHECK(fwf_by_edges(g, fs) == doctest::Approx(-by_edges).epsilon(1e-13));
}

TEST_CASE("uniform 1/d weights give the closed-form level masses") {
  const int d = 3;
  const WeightedGraph g =
      uniform_weight(gen_random_regular(80, d, 8, 3), 1.0 / d);
  const TestFunction tf = test_function(g, 0, 3);
  for (int l = 1; l <= 3; ++l) {
    CHECK(tf.level_norm2[l] ==
          doctest::Approx(std::pow((d - 1.0) / d, l - 1)).epsilon(1e-12));
  }
  double expect_fwf = 0.0;
  for (int l = 1; l <= 3; ++l) {
    expect_fwf += std::pow((d - 1.0) / d, l - 1);
  }
  expect_fwf *= 2.0 / std::sqrt(d);
  CHECK(fwf_by_edges(g, tf.values) ==
        doctest::Approx(expect_fwf).epsilon(1e-12));
}

TEST_CASE("ab_certificate is sound and needs a normalized graph") {
  const WeightedGraph c8 = weighted_cycle(8, 0.5);
  const LambdaRatio ratio = lambda_ratio(c8);
  for (int k = 0; k <= 3; ++k) {
    const AbCertificate cert = ab_certificate(c8, 0, k);
    CAPTURE(k);
    CHECK(cert.certified_lower_bound <= ratio.ratio + 1e-12);
    CHECK(cert.eigensolver_ratio == doctest::Approx(ratio.ratio));
    if (k >= 1) CHECK(cert.certified_lower_bound > 1.0);
    // The two Dirichlet forms decompose consistently.
    CHECK(cert.fs_W_fs == doctest::Approx(-cert.f_W_f).epsilon(1e-12));
    CHECK(cert.fs_D_fs == doctest::Approx(cert.f_D_f).epsilon(1e-12));
  }
  // Radius 3 uses the whole allowed ball and certifies most of the ratio.
  CHECK(ab_certificate(c8, 0, 3).certified_lower_bound >
        0.5 * ratio.ratio);

  const WeightedGraph skew(3, {{0, 1, 0.3}, {1, 2, 0.5}});
  CHECK_THROWS_AS(ab_certificate(skew, 0, 1), std::invalid_argument);
  CHECK_NOTHROW(ab_certificate(normalize_max_weighted_degree(skew), 0, 1));
  CHECK_THROWS_AS(ab_certificate(WeightedGraph(4, {{0, 1, 1}, {2, 3, 1}}), 0, 0),
                  std::invalid_argument);
}

TEST_CASE("fnorm bounds hold on admissible instances and reject bad inputs") {
  const WeightedGraph c8 = weighted_cycle(8, 0.5);
  const TestFunction tf = test_function(c8, 0, 3);
  // d = 64 makes the edge-weight hypothesis tight: 4/sqrt(64) = 1/2.
  const FnormBoundsReport rep = fnorm_bounds_check(c8, tf, 64.0);
  CHECK(rep.norm2 == doctest::Approx(2.75));
  CHECK(rep.upper == doctest::Approx(4.0));
  CHECK(rep.lower == doctest::Approx(0.0));
  CHECK(rep.lower_holds);
  CHECK(rep.upper_holds);
  CHECK(rep.level_ratios_hold);
  REQUIRE(rep.level_ratios.size() == 3);
  CHECK(rep.level_ratios[0] == doctest::Approx(1.0));
  CHECK(rep.level_ratios[1] == doctest::Approx(0.5));

  // With d = 100 the same edges violate the 4/sqrt(d) = 0.4 hypothesis.
  CHECK_THROWS_AS(fnorm_bounds_check(c8, tf, 100.0), std::invalid_argument);
}

TEST_CASE("projection lower bounds are met on a high-girth cubic graph") {
  const WeightedGraph g =
      uniform_weight(gen_random_regular(80, 3, 8, 3), 1.0 / 3.0);
  const TestFunction tf = test_function(g, 0, 3);
  const ProjectionBoundReport rep = projection_bound_check(g, tf, 12.0, 8);
  CHECK(rep.support == 22);  // 1 + 3 + 6 + 12
  CHECK(rep.support_bound == doctest::Approx(1.0 - 22.0 / 80.0));
  CHECK(rep.holds_support);
  CHECK(rep.holds_ball);
  CHECK(rep.measured_ratio <= 1.0 + 1e-12);
}

TEST_CASE("best_root_certificate sweeps all roots on small graphs") {
  const WeightedGraph c12 = weighted_cycle(12, 0.5);
  const BestRootCertificate best = best_root_certificate(c12, 2);
  CHECK(best.roots_evaluated == 12);
  // Vertex-transitive: every root ties, the sweep keeps the lowest id, and
  // the stationary average equals the common value.
  CHECK(best.best.root == 0);
  const AbCertificate direct = ab_certificate(c12, 0, 2);
  CHECK(best.pi_average_fWf == doctest::Approx(direct.f_W_f).epsilon(1e-12));
  CHECK(best.reference_2k_sqrt_d ==
        doctest::Approx(4.0 / std::sqrt(2.0)).epsilon(1e-12));
  CHECK(best.best.certified_lower_bound <=
        best.best.eigensolver_ratio + 1e-9);
}

TEST_CASE("stationary distribution is the weighted degree profile") {
  const WeightedGraph path(3, {{0, 1, 0.3}, {1, 2, 0.5}});
  const Eigen::VectorXd pi = stationary_distribution(path);
  CHECK(pi.sum() == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(pi[0] == doctest::Approx(0.3 / 1.6));
  CHECK(pi[1] == doctest::Approx(0.8 / 1.6));
  CHECK(pi[2] == doctest::Approx(0.5 / 1.6));
  CHECK_THROWS_AS(stationary_distribution(WeightedGraph(2, {})),
                  std::invalid_argument);
}

TEST_CASE("exact walk statistics match exhaustive enumeration") {
  const WeightedGraph path(3, {{0, 1, 0.3}, {1, 2, 0.5}});
  const WeightedGraph c5 = weighted_cycle(5, 0.4);
  for (const WeightedGraph* g : {&path, &c5}) {
    for (int k = 0; k <= 3; ++k) {
      CAPTURE(k);
      const WalkStats st = walk_stats_exact(*g, k);
      const WalkOracle oracle = enumerate_walks(*g, k);
      CHECK(st.total_probability ==
            doctest::Approx(k == 0 ? 1.0 : oracle.total_prob).epsilon(1e-13));
      if (k > 0) {
        CHECK(st.expected_sqrtw_sum ==
              doctest::Approx(oracle.expected_sum).epsilon(1e-13));
        CHECK(st.backtrack_mass ==
              doctest::Approx(oracle.backtrack_mass).epsilon(1e-13));
      }
      REQUIRE(st.backtrack_prob.size() == oracle.bt_prob.size());
      for (std::size_t i = 0; i < oracle.bt_prob.size(); ++i) {
        CHECK(st.backtrack_prob[i] ==
              doctest::Approx(oracle.bt_prob[i]).epsilon(1e-13));
      }
    }
  }
  CHECK_THROWS_AS(walk_stats_exact(path, 7), std::invalid_argument);
}

TEST_CASE("monte carlo walk statistics land near the exact values") {
  const WeightedGraph c6 = weighted_cycle(6, 0.5);
  const WalkStats exact = walk_stats_exact(c6, 3);
  const WalkStats mc = walk_stats_monte_carlo(c6, 3, 200000, 99);
  CHECK(std::abs(mc.expected_sqrtw_sum - exact.expected_sqrtw_sum) <=
        4.0 * mc.sqrtw_sum_stderr + 1e-9);
  CHECK(std::abs(mc.backtrack_mass - exact.backtrack_mass) <=
        4.0 * mc.backtrack_mass_stderr + 1e-9);
  // Determinism in the seed.
  const WalkStats again = walk_stats_monte_carlo(c6, 3, 1000, 123);
  const WalkStats again2 = walk_stats_monte_carlo(c6, 3, 1000, 123);
  CHECK(again.expected_sqrtw_sum == again2.expected_sqrtw_sum);
}

TEST_CASE("pi-averaged fWf equals the non-backtracking path sum") {
  std::vector<Edge> edges;
  for (int i = 0; i < 12; ++i) {
    edges.push_back({i, (i + 1) % 12, i % 2 == 0 ? 0.4 : 0.6});
  }
  const WeightedGraph c12(12, edges);
  for (int k = 1; k <= 3; ++k) {
    CAPTURE(k);
    const Eigen::VectorXd pi = stationary_distribution(c12);
    double lhs = 0.0;
    for (int r = 0; r < 12; ++r) {
      lhs += pi[r] * fwf_by_edges(c12, test_function(c12, r, k).values);
    }
    CHECK(lhs == doctest::Approx(pi_average_by_paths(c12, k)).epsilon(1e-12));
  }
}

TEST_CASE("walk statistics on uniform-weight regular graphs are exact") {
  const WeightedGraph k26 = uniform_weight(gen_complete(26), 1.0 / 25.0);
  const WalkStats st = walk_stats_exact(k26, 4);
  CHECK(st.avg_degree == doctest::Approx(25.0));
  CHECK(st.expected_sqrtw_sum == doctest::Approx(0.8).epsilon(1e-13));
  CHECK(st.expected_sum_lower_bound ==
        doctest::Approx(4.0 / 5.0 - 8.0 / 25.0).epsilon(1e-13));
  CHECK(st.expected_sqrtw_sum >= st.expected_sum_lower_bound);
  CHECK(st.expected_sqrtw_sum <= st.sqrtw_sum_max + 1e-13);
  for (double p : st.backtrack_prob) {
    CHECK(p == doctest::Approx(1.0 / 25.0).epsilon(1e-12));
    CHECK(p <= st.backtrack_prob_bound);
  }
  CHECK(st.per_step_edge_average == doctest::Approx(0.2).epsilon(1e-13));
}

TEST_CASE("low weighted degree certificate") {
  // Half-weight C8 with one edge lowered: two vertices dip to degree 3/4.
  std::vector<Edge> edges;
  for (int i = 0; i < 8; ++i) {
    edges.push_back({i, (i + 1) % 8, i == 0 ? 0.25 : 0.5});
  }
  const WeightedGraph g(8, edges);
  const double d = 400.0;  // threshold 1 - 4/sqrt(d) = 0.8

  const auto cert = low_weighted_degree_certificate(g, d);
  REQUIRE(cert.has_value());
  CHECK(cert->low_vertex == 0);  // ties to the lowest id
  CHECK(cert->threshold == doctest::Approx(0.8));
  CHECK(cert->lambda2_upper ==
        doctest::Approx(cert->lambda2_upper_closed_form).epsilon(1e-12));
  CHECK(cert->lambda2_upper_closed_form ==
        doctest::Approx(0.75 * 8.0 / 7.0).epsilon(1e-12));

  const LambdaRatio ratio = lambda_ratio(g);
  CHECK(ratio.lambda2 <= cert->lambda2_upper + 1e-12);
  CHECK(ratio.lambda_max >= cert->lambda_max_lower - 1e-12);
  CHECK(cert->lambda_max_lower == doctest::Approx(1.0));
  CHECK(cert->ratio_lower_bound <= ratio.ratio + 1e-12);

  // No violation, no certificate.
  CHECK_FALSE(low_weighted_degree_certificate(weighted_cycle(8, 0.5), d)
                  .has_value());
}

TEST_CASE("heavy edge certificate") {
  const WeightedGraph k2(2, {{0, 1, 0.9}});
  const auto cert = heavy_edge_certificate(k2, 25.0);
  REQUIRE(cert.has_value());
  CHECK(cert->edge_weight == 0.9);
  CHECK(cert->quotient == doctest::Approx(1.8).epsilon(1e-14));
  CHECK(cert->reference_bound == doctest::Approx(1.8).epsilon(1e-14));
  CHECK(cert->quotient >= cert->reference_bound - 1e-12);
  // The quotient is a Rayleigh value, so the eigensolver must dominate it.
  CHECK(lambda_ratio(k2).lambda_max >= cert->quotient - 1e-12);

  CHECK_FALSE(heavy_edge_certificate(weighted_cycle(8, 0.5), 25.0).has_value());

  // Pendant construction with a strict gap.
  const WeightedGraph pendant(4, {{0, 1, 0.9}, {0, 2, 0.1}, {1, 3, 0.1}});
  const auto strict = heavy_edge_certificate(pendant, 25.0);
  REQUIRE(strict.has_value());
  CHECK(strict->u == 0);
  CHECK(strict->v == 1);
  CHECK(strict->quotient == doctest::Approx(1.9).epsilon(1e-14));
  CHECK(lambda_ratio(pendant).lambda_max >= strict->quotient - 1e-12);
}

TEST_CASE("low combinatorial degree detection is detection only") {
  // Star: leaves have degree 1 < 8/4; the lowest leaf id wins.
  std::vector<Edge> edges;
  for (int leaf = 1; leaf < 10; ++leaf) edges.push_back({0, leaf, 0.1});
  CHECK(find_low_combinatorial_degree(WeightedGraph(10, edges), 8.0) ==
        std::optional<int>(1));
  CHECK_FALSE(find_low_combinatorial_degree(gen_complete(8), 8.0).has_value());
}
