#pragma once

#include <Eigen/Dense>
#include <optional>

#include "specsparse/graph.hpp"

namespace specsparse {

// Dense symmetric matrix stored as the lower triangle in packed row-major
// order.  Symmetry is structural: there is exactly one stored entry per
// unordered index pair, so the usual "matrix drifted out of symmetry" class
// of bugs cannot occur.
class SymmetricMatrix {
 public:
  explicit SymmetricMatrix(int n);

  // Square symmetric input; asymmetry beyond sym_tol (relative to the largest
  // entry) throws.
  static SymmetricMatrix from_dense(const Eigen::MatrixXd& m,
                                    double sym_tol = 1e-12);

  int order() const { return n_; }

  double operator()(int i, int j) const { return tri_[idx(i, j)]; }
  void set(int i, int j, double v) { tri_[idx(i, j)] = v; }
  void add(int i, int j, double v) { tri_[idx(i, j)] += v; }

  // A += s * v v^T
  void add_scaled_outer(double s, const Eigen::VectorXd& v);

  // v^T A v
  double quadratic_form(const Eigen::VectorXd& v) const;

  Eigen::MatrixXd dense() const;
  bool all_finite() const;

 private:
  std::size_t idx(int i, int j) const;

  int n_;
  std::vector<double> tri_;
};

struct SymmetricSpectrum {
  Eigen::VectorXd eigenvalues;  // ascending
  Eigen::MatrixXd vectors;      // columns, orthonormal; empty if not requested
};

// Full eigendecomposition.  Eigenvalues come back ascending; when vectors are
// requested each one is sign-fixed (largest-magnitude entry positive, first
// such entry on ties) so repeated runs are bit-identical.  Non-finite input
// throws.
SymmetricSpectrum eig(const SymmetricMatrix& m, bool with_vectors = false);

// Combinatorial Laplacian: diag(weighted degrees) - adjacency.
SymmetricMatrix laplacian(const WeightedGraph& g);

// f^T M f / f^T f; throws on f == 0.
double rayleigh(const SymmetricMatrix& m, const Eigen::VectorXd& f);

// Laplacian quadratic form evaluated edge by edge: sum_e w_e (f_u - f_v)^2.
// Same value as quadratic_form(laplacian(g), f) up to roundoff, but without
// forming the matrix; also handy as an independent cross-check in tests.
double laplacian_quadratic_form(const WeightedGraph& g,
                                const Eigen::VectorXd& f);

struct LambdaRatio {
  double lambda2 = 0.0;   // second-smallest Laplacian eigenvalue
  double lambda_max = 0.0;
  double ratio = 0.0;     // lambda_max / lambda2
};

// Extreme nontrivial Laplacian eigenvalues and their ratio.  Requires a
// connected graph with at least 2 vertices (otherwise lambda2 would be 0 and
// the ratio meaningless).
LambdaRatio lambda_ratio(const WeightedGraph& g);

// Component of f orthogonal to the all-ones vector.
Eigen::VectorXd project_orth_ones(const Eigen::VectorXd& f);

// Moore-Penrose pseudo-inverse square root M^{+1/2} of a positive
// semidefinite matrix.  Eigenvalues below rank_tol * max(|eigenvalue|) are
// treated as exact zeros; eigenvalues below -rank_tol * max(|eigenvalue|)
// (genuinely negative input) throw.
SymmetricMatrix pinv_sqrt(const SymmetricMatrix& m, double rank_tol = 1e-10);

}  // namespace specsparse
