#include "specsparse/sparsify.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>
#include <vector>

#include "specsparse/poly.hpp"

namespace specsparse {

Eigen::MatrixXd ones_complement_basis(int n) {
  if (n < 2) {
    throw std::invalid_argument("ones_complement_basis: need n >= 2");
  }
  Eigen::MatrixXd b = Eigen::MatrixXd::Zero(n - 1, n);
  for (int k = 1; k < n; ++k) {
    const double scale = 1.0 / std::sqrt(static_cast<double>(k) * (k + 1));
    for (int j = 0; j < k; ++j) b(k - 1, j) = scale;
    b(k - 1, k) = -k * scale;
  }
  return b;
}

EdgeVectorSystem edge_vector_system(const WeightedGraph& g) {
  if (!g.connected()) {
    throw std::invalid_argument("edge_vector_system: graph must be connected");
  }
  if (g.edge_count() == 0) {
    throw std::invalid_argument("edge_vector_system: graph has no edges");
  }
  const int n = g.vertex_count();

  EdgeVectorSystem sys;
  sys.reducer =
      ones_complement_basis(n) * pinv_sqrt(laplacian(g)).dense();
  const auto& edges = g.edges();
  sys.columns.resize(n - 1, static_cast<Eigen::Index>(edges.size()));
  for (std::size_t e = 0; e < edges.size(); ++e) {
    sys.columns.col(e) = std::sqrt(edges[e].w) *
                         (sys.reducer.col(edges[e].u) -
                          sys.reducer.col(edges[e].v));
  }

  sys.isotropy_error = (sys.columns * sys.columns.transpose() -
                        Eigen::MatrixXd::Identity(n - 1, n - 1))
                           .norm();
  if (sys.isotropy_error > 1e-8) {
    throw std::runtime_error(
        "edge_vector_system: edge vectors are not isotropic (Frobenius gap " +
        std::to_string(sys.isotropy_error) + ")");
  }
  return sys;
}

VerifyReport verify_sparsifier(const WeightedGraph& g, const WeightedGraph& h,
                               double epsilon) {
  if (g.vertex_count() != h.vertex_count()) {
    throw std::invalid_argument(
        "verify_sparsifier: graphs must share a vertex set");
  }
  if (!(epsilon >= 0.0)) {
    throw std::invalid_argument("verify_sparsifier: epsilon must be >= 0");
  }
  const int n = g.vertex_count();
  const Eigen::MatrixXd reducer =
      ones_complement_basis(n) * pinv_sqrt(laplacian(g)).dense();
  const Eigen::MatrixXd m =
      reducer * laplacian(h).dense() * reducer.transpose();
  const Eigen::VectorXd lam =
      eig(SymmetricMatrix::from_dense(m, 1e-9)).eigenvalues;

  VerifyReport rep;
  rep.lambda_min = lam.minCoeff();
  rep.lambda_max = lam.maxCoeff();
  rep.condition = rep.lambda_min > 1e-12 * std::max(1.0, rep.lambda_max)
                      ? rep.lambda_max / rep.lambda_min
                      : std::numeric_limits<double>::infinity();
  rep.holds = rep.condition <= (1.0 + epsilon) * (1.0 + 1e-8);
  return rep;
}

SparsifyOutcome sparsify(const WeightedGraph& g, int d) {
  const int n = g.vertex_count();
  if (n < 2) throw std::invalid_argument("sparsify: need n >= 2");
  if (d < 3) {
    throw std::invalid_argument("sparsify: need d >= 3 for a finite guarantee");
  }
  const int rounds = (d * n + 1) / 2;
  if (rounds <= n - 1) {
    throw std::invalid_argument(
        "sparsify: ceil(d n / 2) must exceed n - 1; ask for a larger d");
  }

  EdgeVectorSystem sys = edge_vector_system(g);
  StaticMenuAdversary adversary(sys.columns);
  BssPlayer player(n - 1, rounds);
  GameResult game = play_game(adversary, player, n - 1, rounds);

  // Accumulate the played scalings per edge, then normalize so the whitened
  // sparsifier has minimum eigenvalue 1 (the guarantee is scale-free; this
  // just picks a canonical representative).
  std::vector<double> s_sum(g.edge_count(), 0.0);
  for (const auto& rec : game.records) s_sum[rec.index] += rec.scaling;
  const double lambda_min = game.final_eigenvalues.minCoeff();
  if (!(lambda_min > 0.0)) {
    throw std::runtime_error(
        "sparsify: game ended with a singular position; barriers failed");
  }

  SparsifierReport report;
  report.vertex_count = n;
  report.average_degree_target = d;
  report.rounds = rounds;
  report.beta = player.beta();
  report.rescale = 1.0 / lambda_min;
  report.isotropy_error = sys.isotropy_error;

  std::vector<Edge> kept;
  const auto& edges = g.edges();
  for (std::size_t e = 0; e < edges.size(); ++e) {
    if (s_sum[e] > 0.0) {
      kept.push_back(
          {edges[e].u, edges[e].v, edges[e].w * s_sum[e] / lambda_min});
    }
  }
  report.distinct_edges = static_cast<int>(kept.size());

  const double sq = std::sqrt(report.beta);
  report.barrier_bound = ((sq + 1.0) / (sq - 1.0)) * ((sq + 1.0) / (sq - 1.0));
  report.degree_bound = kappa(d);
  const double sr = std::sqrt(static_cast<double>(d) - 1.0);
  report.ramanujan_reference =
      ((sr + 1.0) / (sr - 1.0)) * ((sr + 1.0) / (sr - 1.0));
  report.game = std::move(game);

  WeightedGraph h(n, kept);
  report.verify = verify_sparsifier(g, h, report.degree_bound - 1.0);
  return {std::move(h), std::move(report)};
}

}  // namespace specsparse
