#include "specsparse/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "doctest.h"
#include "specsparse/generators.hpp"
#include "specsparse/graph.hpp"
#include "specsparse/rng.hpp"

using namespace specsparse;

namespace {

Eigen::VectorXd random_vector(Rng& rng, int n) {
  Eigen::VectorXd v(n);
  for (int i = 0; i < n; ++i) v[i] = rng.uniform(-1.0, 1.0);
  return v;
}

}  // namespace

TEST_CASE("SymmetricMatrix stores, updates, and rejects asymmetry") {
  SymmetricMatrix m(3);
  m.set(0, 1, 2.0);
  m.set(2, 2, -1.0);
  m.add(1, 0, 0.5);
  CHECK(m(0, 1) == 2.5);
  CHECK(m(1, 0) == 2.5);
  CHECK(m(2, 2) == -1.0);
  CHECK(m(0, 0) == 0.0);

  Eigen::VectorXd v(3);
  v << 1.0, 2.0, 3.0;
  m.add_scaled_outer(2.0, v);
  CHECK(m(0, 0) == 2.0);
  CHECK(m(0, 1) == doctest::Approx(2.5 + 4.0));
  CHECK(m(2, 2) == doctest::Approx(-1.0 + 18.0));
  CHECK(m.quadratic_form(v) ==
        doctest::Approx(v.dot(m.dense() * v)).epsilon(1e-12));

  Eigen::MatrixXd bad(2, 2);
  bad << 0.0, 1.0, 2.0, 0.0;
  CHECK_THROWS_AS(SymmetricMatrix::from_dense(bad), std::invalid_argument);
  CHECK_NOTHROW(SymmetricMatrix::from_dense(bad, 1.5));
}

TEST_CASE("eig matches the 2x2 closed form") {
  Rng rng(5);
  for (int trial = 0; trial < 25; ++trial) {
    const double a = rng.uniform(-2, 2), b = rng.uniform(-2, 2),
                 c = rng.uniform(-2, 2);
    SymmetricMatrix m(2);
    m.set(0, 0, a);
    m.set(0, 1, b);
    m.set(1, 1, c);
    const double mid = (a + c) / 2.0;
    const double rad = std::sqrt((a - c) * (a - c) / 4.0 + b * b);
    const auto s = eig(m);
    CHECK(s.eigenvalues[0] == doctest::Approx(mid - rad).epsilon(1e-12));
    CHECK(s.eigenvalues[1] == doctest::Approx(mid + rad).epsilon(1e-12));
  }
}

TEST_CASE("eigenvectors are orthonormal, accurate, and sign-fixed") {
  Rng rng(11);
  SymmetricMatrix m(5);
  for (int i = 0; i < 5; ++i) {
    for (int j = i; j < 5; ++j) m.set(i, j, rng.uniform(-1, 1));
  }
  const auto s = eig(m, true);
  const Eigen::MatrixXd& u = s.vectors;
  CHECK((u.transpose() * u - Eigen::MatrixXd::Identity(5, 5)).norm() <= 1e-12);
  CHECK((m.dense() * u - u * s.eigenvalues.asDiagonal().toDenseMatrix())
            .norm() <= 1e-10);
  for (int j = 0; j < 5; ++j) {
    int arg = 0;
    for (int i = 1; i < 5; ++i) {
      if (std::abs(u(i, j)) > std::abs(u(arg, j))) arg = i;
    }
    CHECK(u(arg, j) > 0.0);  // sign convention
  }
  // Ascending order.
  CHECK(std::is_sorted(s.eigenvalues.begin(), s.eigenvalues.end()));
}

TEST_CASE("Laplacian spectra of standard graphs") {
  // K_4: eigenvalues {0, 4, 4, 4}.
  const auto k4 = eig(laplacian(gen_complete(4)));
  CHECK(k4.eigenvalues[0] == doctest::Approx(0.0).epsilon(1e-12));
  for (int i = 1; i < 4; ++i) {
    CHECK(k4.eigenvalues[i] == doctest::Approx(4.0).epsilon(1e-12));
  }

  // Weighted C_6 with w = 1/2: eigenvalues 2w(1 - cos(2 pi j / 6)).
  std::vector<Edge> edges;
  for (int i = 0; i < 6; ++i) edges.push_back({i, (i + 1) % 6, 0.5});
  const auto c6 = eig(laplacian(WeightedGraph(6, edges)));
  std::vector<double> expect;
  for (int j = 0; j < 6; ++j) {
    expect.push_back(1.0 - std::cos(2.0 * M_PI * j / 6.0));
  }
  std::sort(expect.begin(), expect.end());
  for (int j = 0; j < 6; ++j) {
    CHECK(c6.eigenvalues[j] == doctest::Approx(expect[j]).epsilon(1e-12));
  }
}

TEST_CASE("two Laplacian quadratic form routes agree") {
  Rng rng(19);
  const WeightedGraph g = gen_random_regular(30, 4, 3, 77);
  const SymmetricMatrix l = laplacian(g);
  for (int trial = 0; trial < 10; ++trial) {
    const Eigen::VectorXd f = random_vector(rng, 30);
    CHECK(laplacian_quadratic_form(g, f) ==
          doctest::Approx(l.quadratic_form(f)).epsilon(1e-12));
  }
  // And the matrix itself: diag = weighted degree, off-diag = -w, zero row sums.
  const Eigen::MatrixXd dense = l.dense();
  CHECK((dense.rowwise().sum()).norm() <= 1e-12);
  CHECK(dense(0, 0) == doctest::Approx(g.degrees().weighted[0]));
}

TEST_CASE("lambda_ratio on a weighted star is the vertex count") {
  // Star K_{1,9} with unit weights: lambda_2 = 1, lambda_max = 10.
  std::vector<Edge> edges;
  for (int leaf = 1; leaf < 10; ++leaf) edges.push_back({0, leaf, 1.0});
  const LambdaRatio r = lambda_ratio(WeightedGraph(10, edges));
  CHECK(r.lambda2 == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(r.lambda_max == doctest::Approx(10.0).epsilon(1e-12));
  CHECK(r.ratio == doctest::Approx(10.0).epsilon(1e-12));

  // Scale invariance: weights times 7 leave the ratio alone.
  for (auto& e : edges) e.w *= 7.0;
  CHECK(lambda_ratio(WeightedGraph(10, edges)).ratio ==
        doctest::Approx(10.0).epsilon(1e-12));

  CHECK_THROWS_AS(lambda_ratio(WeightedGraph(4, {{0, 1, 1}, {2, 3, 1}})),
                  std::invalid_argument);
  CHECK_THROWS_AS(lambda_ratio(WeightedGraph(1, {})), std::invalid_argument);
}

TEST_CASE("rayleigh quotient sits between extreme eigenvalues") {
  Rng rng(23);
  SymmetricMatrix m(4);
  for (int i = 0; i < 4; ++i) {
    for (int j = i; j < 4; ++j) m.set(i, j, rng.uniform(-1, 1));
  }
  const auto s = eig(m);
  for (int trial = 0; trial < 10; ++trial) {
    const double q = rayleigh(m, random_vector(rng, 4));
    CHECK(q >= s.eigenvalues[0] - 1e-12);
    CHECK(q <= s.eigenvalues[3] + 1e-12);
  }
}

TEST_CASE("project_orth_ones removes the mean and nothing else") {
  Rng rng(29);
  const Eigen::VectorXd f = random_vector(rng, 8);
  const Eigen::VectorXd p = project_orth_ones(f);
  CHECK(std::abs(p.sum()) <= 1e-12);
  CHECK((project_orth_ones(p) - p).norm() <= 1e-12);
  const double mean = f.mean();
  CHECK(p.squaredNorm() ==
        doctest::Approx(f.squaredNorm() - 8.0 * mean * mean).epsilon(1e-12));
}

TEST_CASE("pinv_sqrt squares back to the pseudoinverse") {
  const SymmetricMatrix l = laplacian(gen_complete(5));
  const Eigen::MatrixXd p = pinv_sqrt(l).dense();
  // P L P should be the projection onto the complement of ones.
  const Eigen::MatrixXd proj = p * l.dense() * p;
  const Eigen::MatrixXd expect =
      Eigen::MatrixXd::Identity(5, 5) -
      Eigen::MatrixXd::Constant(5, 5, 1.0 / 5.0);
  CHECK((proj - expect).norm() <= 1e-10);

  SymmetricMatrix negative(2);
  negative.set(0, 0, -1.0);
  CHECK_THROWS_AS(pinv_sqrt(negative), std::invalid_argument);
}
