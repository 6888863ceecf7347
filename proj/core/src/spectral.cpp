#include "specsparse/spectral.hpp"

#include <cmath>
#include <stdexcept>

namespace specsparse {

SymmetricMatrix::SymmetricMatrix(int n) : n_(n) {
  if (n <= 0) throw std::invalid_argument("SymmetricMatrix: order must be positive");
  tri_.assign(static_cast<std::size_t>(n) * (n + 1) / 2, 0.0);
}

std::size_t SymmetricMatrix::idx(int i, int j) const {
  if (i < 0 || i >= n_ || j < 0 || j >= n_) {
    throw std::out_of_range("SymmetricMatrix: index out of range");
  }
  if (i < j) std::swap(i, j);
  return static_cast<std::size_t>(i) * (i + 1) / 2 + j;
}

SymmetricMatrix SymmetricMatrix::from_dense(const Eigen::MatrixXd& m,
                                            double sym_tol) {
  if (m.rows() != m.cols()) {
    throw std::invalid_argument("SymmetricMatrix::from_dense: matrix not square");
  }
  const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  SymmetricMatrix out(static_cast<int>(m.rows()));
  for (int i = 0; i < out.n_; ++i) {
    for (int j = 0; j <= i; ++j) {
      if (std::abs(m(i, j) - m(j, i)) > sym_tol * scale) {
        throw std::invalid_argument(
            "SymmetricMatrix::from_dense: input not symmetric at (" +
            std::to_string(i) + "," + std::to_string(j) + ")");
      }
      out.set(i, j, 0.5 * (m(i, j) + m(j, i)));
    }
  }
  return out;
}

void SymmetricMatrix::add_scaled_outer(double s, const Eigen::VectorXd& v) {
  if (v.size() != n_) {
    throw std::invalid_argument("add_scaled_outer: dimension mismatch");
  }
  for (int i = 0; i < n_; ++i) {
    const double svi = s * v[i];
    for (int j = 0; j <= i; ++j) {
      tri_[static_cast<std::size_t>(i) * (i + 1) / 2 + j] += svi * v[j];
    }
  }
}

double SymmetricMatrix::quadratic_form(const Eigen::VectorXd& v) const {
  if (v.size() != n_) {
    throw std::invalid_argument("quadratic_form: dimension mismatch");
  }
  // Off-diagonal entries appear twice in v^T A v.
  double acc = 0.0;
  std::size_t k = 0;
  for (int i = 0; i < n_; ++i) {
    for (int j = 0; j < i; ++j) acc += 2.0 * tri_[k++] * v[i] * v[j];
    acc += tri_[k++] * v[i] * v[i];
  }
  return acc;
}

Eigen::MatrixXd SymmetricMatrix::dense() const {
  Eigen::MatrixXd m(n_, n_);
  std::size_t k = 0;
  for (int i = 0; i < n_; ++i) {
    for (int j = 0; j <= i; ++j) {
      m(i, j) = tri_[k];
      m(j, i) = tri_[k];
      ++k;
    }
  }
  return m;
}

bool SymmetricMatrix::all_finite() const {
  for (double x : tri_) {
    if (!std::isfinite(x)) return false;
  }
  return true;
}

SymmetricSpectrum eig(const SymmetricMatrix& m, bool with_vectors) {
  if (!m.all_finite()) {
    throw std::invalid_argument("eig: matrix has non-finite entries");
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
  solver.compute(m.dense(), with_vectors ? Eigen::ComputeEigenvectors
                                         : Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("eig: eigensolver failed to converge");
  }
  SymmetricSpectrum s;
  s.eigenvalues = solver.eigenvalues();
  if (with_vectors) {
    s.vectors = solver.eigenvectors();
    // Deterministic sign: make the largest-magnitude entry of each vector
    // positive, breaking magnitude ties by smallest index.
    for (int c = 0; c < s.vectors.cols(); ++c) {
      int arg = 0;
      double best = -1.0;
      for (int r = 0; r < s.vectors.rows(); ++r) {
        const double a = std::abs(s.vectors(r, c));
        if (a > best) {
          best = a;
          arg = r;
        }
      }
      if (s.vectors(arg, c) < 0.0) s.vectors.col(c) = -s.vectors.col(c);
    }
  }
  return s;
}

SymmetricMatrix laplacian(const WeightedGraph& g) {
  SymmetricMatrix L(g.vertex_count());
  const auto& wd = g.degrees().weighted;
  for (int v = 0; v < g.vertex_count(); ++v) L.set(v, v, wd[v]);
  for (const auto& e : g.edges()) L.set(e.u, e.v, -e.w);
  return L;
}

double rayleigh(const SymmetricMatrix& m, const Eigen::VectorXd& f) {
  const double nn = f.squaredNorm();
  if (nn == 0.0) throw std::invalid_argument("rayleigh: zero vector");
  return m.quadratic_form(f) / nn;
}

double laplacian_quadratic_form(const WeightedGraph& g,
                                const Eigen::VectorXd& f) {
  if (f.size() != g.vertex_count()) {
    throw std::invalid_argument("laplacian_quadratic_form: dimension mismatch");
  }
  double acc = 0.0;
  for (const auto& e : g.edges()) {
    const double diff = f[e.u] - f[e.v];
    acc += e.w * diff * diff;
  }
  return acc;
}

LambdaRatio lambda_ratio(const WeightedGraph& g) {
  if (g.vertex_count() < 2) {
    throw std::invalid_argument("lambda_ratio: need at least 2 vertices");
  }
  if (!g.connected()) {
    throw std::invalid_argument("lambda_ratio: graph must be connected");
  }
  const SymmetricSpectrum s = eig(laplacian(g));
  LambdaRatio r;
  r.lambda2 = s.eigenvalues[1];
  r.lambda_max = s.eigenvalues[s.eigenvalues.size() - 1];
  if (r.lambda2 <= 0.0) {
    // Connected graphs have lambda2 > 0; only roundoff on near-disconnected
    // inputs could land here, and a ratio against it would be garbage.
    throw std::runtime_error("lambda_ratio: lambda2 not positive (" +
                             std::to_string(r.lambda2) + ")");
  }
  r.ratio = r.lambda_max / r.lambda2;
  return r;
}

Eigen::VectorXd project_orth_ones(const Eigen::VectorXd& f) {
  return f.array() - f.mean();
}

SymmetricMatrix pinv_sqrt(const SymmetricMatrix& m, double rank_tol) {
  const SymmetricSpectrum s = eig(m, /*with_vectors=*/true);
  const int n = m.order();
  const double scale = std::max(std::abs(s.eigenvalues[0]),
                                std::abs(s.eigenvalues[n - 1]));
  const double cut = rank_tol * std::max(scale, 1e-300);
  Eigen::VectorXd d(n);
  for (int i = 0; i < n; ++i) {
    const double ev = s.eigenvalues[i];
    if (ev < -cut) {
      throw std::invalid_argument(
          "pinv_sqrt: matrix has negative eigenvalue " + std::to_string(ev));
    }
    d[i] = ev > cut ? 1.0 / std::sqrt(ev) : 0.0;
  }
  const Eigen::MatrixXd out =
      s.vectors * d.asDiagonal() * s.vectors.transpose();
  // The reconstruction is symmetric up to roundoff; a loose tolerance avoids
  // tripping over that roundoff while still catching real mistakes.
  return SymmetricMatrix::from_dense(out, 1e-9);
}

}  // namespace specsparse
