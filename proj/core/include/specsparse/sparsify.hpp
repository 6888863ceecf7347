#pragma once

// Spectral sparsification as a matrix game.  Each edge of the input graph
// becomes a vector in the (n-1)-dimensional complement of the all-ones
// direction; together they form an isotropic set, so the two-sided barrier
// player can pick a small multiset of them whose weighted sum has bounded
// condition number.  Pulling the chosen edges back (with the accumulated
// scalings as weights) yields a sparse graph whose Laplacian pencil against
// the input is well conditioned.

#include <Eigen/Dense>

#include "specsparse/game.hpp"
#include "specsparse/graph.hpp"

namespace specsparse {

// Rows form an orthonormal basis of the hyperplane orthogonal to the all-ones
// vector ((n-1) x n, Helmert construction).
Eigen::MatrixXd ones_complement_basis(int n);

struct EdgeVectorSystem {
  // One column per edge, in the graph's canonical edge order:
  //   x_e = sqrt(w_e) * reducer * (e_u - e_v).
  Eigen::MatrixXd columns;  // (n-1) x m
  // reducer = B * pinv_sqrt(L_G); also what the verifier needs.
  Eigen::MatrixXd reducer;  // (n-1) x n
  double isotropy_error = 0.0;  // Frobenius gap of sum x x^T from identity
};

// Requires a connected graph with at least one edge; throws if the columns
// fail to be isotropic to 1e-8 (they are exactly isotropic in theory, so a
// large gap means something upstream is broken).
EdgeVectorSystem edge_vector_system(const WeightedGraph& g);

struct VerifyReport {
  double lambda_min = 0.0;  // extremes of reducer * L_H * reducer^T
  double lambda_max = 0.0;
  // lambda_max / lambda_min; infinity if the restricted pencil is singular.
  double condition = 0.0;
  bool holds = false;  // condition <= (1 + epsilon) * (1 + 1e-8)
};

// Checks how well H approximates G spectrally, in a scale-free way: the
// condition number of the G-whitened Laplacian of H restricted to the
// complement of the all-ones vector.  Both graphs must share a vertex set.
VerifyReport verify_sparsifier(const WeightedGraph& g, const WeightedGraph& h,
                               double epsilon);

struct SparsifierReport {
  int vertex_count = 0;
  int average_degree_target = 0;  // the d that was asked for
  int rounds = 0;                 // ceil(d n / 2)
  double beta = 0.0;              // rounds / (n - 1)
  int distinct_edges = 0;
  double rescale = 0.0;  // common weight factor applied to the chosen edges
  // Guarantee from the barrier player at the played beta ...
  double barrier_bound = 0.0;
  // ... and the cleaner d-only form it approaches as n grows.
  double degree_bound = 0.0;
  // What an ideal (Ramanujan-like) degree-d object would achieve.
  double ramanujan_reference = 0.0;
  double isotropy_error = 0.0;
  VerifyReport verify;
  GameResult game;  // full per-round trace of the underlying game
};

struct SparsifyOutcome {
  WeightedGraph sparsifier;
  SparsifierReport report;
};

// Runs the barrier player against the static edge menu for ceil(d n / 2)
// rounds and returns the reweighted edge subgraph.  The sparsifier's weights
// are normalized so its whitened Laplacian has minimum eigenvalue exactly 1
// on the complement of the all-ones vector.  Requires a connected input and
// ceil(d n / 2) > n - 1 (the barrier player needs beta > 1).
SparsifyOutcome sparsify(const WeightedGraph& g, int d);

}  // namespace specsparse
