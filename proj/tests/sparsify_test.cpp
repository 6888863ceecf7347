#include "specsparse/sparsify.hpp"

#include <cmath>
#include <set>
#include <utility>
#include <vector>

#include "doctest.h"
#include "specsparse/generators.hpp"
#include "specsparse/graph.hpp"
#include "specsparse/poly.hpp"
#include "specsparse/spectral.hpp"

using namespace specsparse;

TEST_CASE("ones_complement_basis is an orthonormal basis of 1-perp") {
  for (int n : {2, 3, 5, 8}) {
    CAPTURE(n);
    const Eigen::MatrixXd b = ones_complement_basis(n);
    REQUIRE(b.rows() == n - 1);
    REQUIRE(b.cols() == n);
    CHECK((b * b.transpose() - Eigen::MatrixXd::Identity(n - 1, n - 1))
              .norm() <= 1e-12);
    CHECK((b * Eigen::VectorXd::Ones(n)).norm() <= 1e-12);
  }
  CHECK_THROWS_AS(ones_complement_basis(1), std::invalid_argument);
}

TEST_CASE("edge vectors whiten the input graph") {
  const WeightedGraph k3 = gen_complete(3);
  const EdgeVectorSystem sys = edge_vector_system(k3);
  REQUIRE(sys.columns.cols() == 3);
  CHECK(sys.isotropy_error <= 1e-10);
  // K_n is symmetric under vertex relabeling, so every whitened edge vector
  // carries the same mass; isotropy in dimension 2 forces 2/3 each.
  for (int e = 0; e < 3; ++e) {
    CHECK(sys.columns.col(e).squaredNorm() ==
          doctest::Approx(2.0 / 3.0).epsilon(1e-12));
  }
  // The whitening map reproduces the identity on the complement of ones.
  const Eigen::MatrixXd white =
      sys.reducer * laplacian(k3).dense() * sys.reducer.transpose();
  CHECK((white - Eigen::MatrixXd::Identity(2, 2)).norm() <= 1e-10);

  CHECK_THROWS_AS(edge_vector_system(WeightedGraph(4, {{0, 1, 1}, {2, 3, 1}})),
                  std::invalid_argument);
  CHECK_THROWS_AS(edge_vector_system(WeightedGraph(2, {})),
                  std::invalid_argument);
}

TEST_CASE("verify_sparsifier is exact on scaled copies") {
  const WeightedGraph g = gen_cycle(6);
  std::vector<Edge> scaled = g.edges();
  for (auto& e : scaled) e.w *= 17.0;
  const WeightedGraph h(6, scaled);
  const VerifyReport rep = verify_sparsifier(g, h, 0.0);
  // A uniform rescale has pencil condition exactly 1 and passes epsilon = 0.
  CHECK(rep.condition == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(rep.lambda_min == doctest::Approx(17.0).epsilon(1e-10));
  CHECK(rep.lambda_max == doctest::Approx(17.0).epsilon(1e-10));
  CHECK(rep.holds);

  // Deleting an edge from a cycle disconnects nothing but blows up the
  // pencil on the complement: lambda_min drops well below lambda_max.
  std::vector<Edge> pruned(g.edges().begin(), g.edges().end() - 1);
  const VerifyReport worse = verify_sparsifier(g, WeightedGraph(6, pruned), 0.5);
  CHECK_FALSE(worse.holds);
  CHECK(worse.condition > 1.5);

  CHECK_THROWS_AS(verify_sparsifier(g, gen_cycle(7), 0.5),
                  std::invalid_argument);
  CHECK_THROWS_AS(verify_sparsifier(g, h, -1.0), std::invalid_argument);
}

TEST_CASE("sparsify keeps few edges and a bounded pencil") {
  const WeightedGraph g = gen_complete(8);
  const SparsifyOutcome out = sparsify(g, 8);
  const SparsifierReport& rep = out.report;

  CHECK(rep.vertex_count == 8);
  CHECK(rep.rounds == 32);  // ceil(8 * 8 / 2)
  CHECK(rep.beta == doctest::Approx(32.0 / 7.0));
  CHECK(rep.distinct_edges <= 28);
  CHECK(rep.distinct_edges == out.sparsifier.edge_count());
  CHECK(rep.isotropy_error <= 1e-10);

  // The guarantee chain: measured <= played-beta bound, and the d-only bound
  // is the n -> infinity limit of the same expression.
  CHECK(rep.verify.holds);
  CHECK(rep.verify.condition <= rep.barrier_bound + 1e-6);
  CHECK(rep.degree_bound == doctest::Approx(kappa(8)).epsilon(1e-12));
  const double rb = std::sqrt(rep.beta);
  CHECK(rep.barrier_bound ==
        doctest::Approx(std::pow((rb + 1.0) / (rb - 1.0), 2)).epsilon(1e-12));

  // The game and the verifier see the same matrix up to the canonical
  // rescale, which pins the whitened floor at exactly 1.
  CHECK(rep.verify.lambda_min == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(rep.verify.condition ==
        doctest::Approx(rep.game.condition).epsilon(1e-9));

  // Every surviving edge must come from the input with positive weight.
  for (const auto& e : out.sparsifier.edges()) {
    CHECK(g.has_edge(e.u, e.v));
    CHECK(e.w > 0.0);
  }

  // An independent verification pass agrees with the stored report.
  const VerifyReport again = verify_sparsifier(g, out.sparsifier, kappa(8) - 1.0);
  CHECK(again.holds);
  CHECK(again.condition == doctest::Approx(rep.verify.condition).epsilon(1e-12));
}

TEST_CASE("verify_sparsifier is scale free in the candidate") {
  const WeightedGraph g = gen_complete(8);
  const SparsifyOutcome out = sparsify(g, 8);
  std::vector<Edge> scaled = out.sparsifier.edges();
  for (auto& e : scaled) e.w *= 123.5;
  const VerifyReport rep =
      verify_sparsifier(g, WeightedGraph(8, scaled), kappa(8) - 1.0);
  CHECK(rep.condition ==
        doctest::Approx(out.report.verify.condition).epsilon(1e-10));
  CHECK(rep.holds);
}

TEST_CASE("sparsify of a sparse graph can keep every edge") {
  // A cycle has n edges and stays connected only if all survive; the game is
  // still required to keep the pencil bounded at beta = rounds/(n-1).
  const WeightedGraph g = gen_cycle(10);
  const SparsifyOutcome out = sparsify(g, 4);
  CHECK(out.report.rounds == 20);
  CHECK(out.report.distinct_edges <= 10);
  CHECK(out.report.verify.holds);
  CHECK(out.report.verify.condition <= out.report.barrier_bound + 1e-6);
}

TEST_CASE("sparsify rejects unusable inputs") {
  CHECK_THROWS_AS(sparsify(gen_complete(8), 2), std::invalid_argument);
  CHECK_THROWS_AS(sparsify(WeightedGraph(4, {{0, 1, 1}, {2, 3, 1}}), 8),
                  std::invalid_argument);
  CHECK_THROWS_AS(sparsify(WeightedGraph(1, {}), 8), std::invalid_argument);
}
