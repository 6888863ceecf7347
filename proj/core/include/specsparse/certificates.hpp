#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <optional>
#include <vector>

#include "specsparse/graph.hpp"
#include "specsparse/spectral.hpp"

namespace specsparse {

// Machine-checked lower bounds on lambda_max/lambda_2 of a graph Laplacian,
// built from explicit test vectors supported on breadth-first balls.  The
// certificates are sound unconditionally: every bound is a ratio of exact
// Rayleigh quotients, so no asymptotic constant is ever trusted.

// Ball test vector rooted at `root`: value 1 at the root, and at every vertex
// within distance k the square root of the product of edge weights along the
// (unique) shortest path.  Zero outside the ball.
struct TestFunction {
  int root = 0;
  int k = 0;
  Eigen::VectorXd values;
  BfsTree tree;
  std::vector<double> level_norm2;  // C_l = sum of values^2 over level l
};

// Requires 2k+1 < girth so shortest paths in the ball are unique.  The ball
// may be smaller than k levels (levels just end early); that is fine.
TestFunction test_function(const WeightedGraph& g, int root, int k);

// Level-alternating companion: f'(v) = (-1)^{dist(root,v)} f(v).
Eigen::VectorXd signed_test_function(const TestFunction& tf);

struct FnormBoundsReport {
  double norm2 = 0.0;
  double lower = 0.0;  // (1 - 8/sqrt(d))^k * (k+1)
  double upper = 0.0;  // k+1
  bool lower_holds = false;
  bool upper_holds = false;
  // Per-level mass ratios C_{l+1}/C_l, each expected in [1-8/sqrt(d), 1].
  std::vector<double> level_ratios;
  bool level_ratios_hold = false;
};

// Verifies the squared-norm envelope of a test function on graphs with max
// weighted degree 1, min weighted degree >= 1-4/sqrt(d), and every edge
// weight <= 4/sqrt(d).  Those hypotheses are checked and violations throw.
FnormBoundsReport fnorm_bounds_check(const WeightedGraph& g,
                                     const TestFunction& tf, double d);

struct ProjectionBoundReport {
  double measured_ratio = 0.0;   // ||f_perp||^2 / ||f||^2
  long long support = 0;         // number of nonzero entries of f
  double support_bound = 0.0;    // 1 - support/n   (Cauchy-Schwarz route)
  double ball_bound = 0.0;       // ball-volume bound on the support
  double ball_bound_ratio = 0.0; // 1 - min(ball_bound, n)/n
  bool holds_support = false;
  bool holds_ball = false;
};

// How little of f is lost when projecting orthogonal to the all-ones vector.
// Preconditions are those of ball_size_check (d >= 12, min degree >= d/4,
// girth >= g, k <= (g-1)/2).
ProjectionBoundReport projection_bound_check(const WeightedGraph& g,
                                             const TestFunction& tf, double d,
                                             int g_girth);

struct AbCertificate {
  int root = 0;
  int k = 0;
  Eigen::VectorXd f;
  Eigen::VectorXd f_signed;
  double f_D_f = 0.0;   // f^T D f, D = diag(weighted degrees)
  double f_W_f = 0.0;   // f^T W f, W = weighted adjacency
  double fs_D_fs = 0.0;
  double fs_W_fs = 0.0;
  double norm_f_perp2 = 0.0;   // ||f - mean||^2
  double norm_fs_perp2 = 0.0;
  double certified_lower_bound = 0.0;
  double eigensolver_ratio = 0.0;  // lambda_max/lambda_2, independent route
};

// Certified lower bound on lambda_max/lambda_2:
//   (f'^T L f' / ||f'_perp||^2) / (f^T L f / ||f_perp||^2)
// with f' the sign-flipped test vector.  Both quotients are honest Rayleigh
// quotients (the Laplacian form is translation invariant), so the ratio is a
// rigorous lower bound no matter how the graph was produced.
// Requires 2k+1 < girth, G connected, max weighted degree 1 (to 1e-9).
AbCertificate ab_certificate(const WeightedGraph& g, int root, int k);
// Same, reusing an already-computed spectrum ratio (for root sweeps).
AbCertificate ab_certificate(const WeightedGraph& g, int root, int k,
                             const LambdaRatio& known_ratio);

struct BestRootCertificate {
  AbCertificate best;
  int roots_evaluated = 0;
  double pi_average_fWf = 0.0;  // stationary average of f_r^T W f_r
  double reference_2k_sqrt_d = 0.0;  // 2k/sqrt(avg degree), for comparison
};

// Evaluates f_r^T W f_r at every root (all vertices when n <= 5000, else 512
// stationary-distribution samples at a fixed internal seed) and returns the
// certificate of the maximizing root; ties break to the lowest vertex id.
BestRootCertificate best_root_certificate(const WeightedGraph& g, int k);

// pi(v) proportional to the weighted degree; sums to 1.
Eigen::VectorXd stationary_distribution(const WeightedGraph& g);

// Statistics of the stationary weighted random walk of length k: the expected
// sum of sqrt(edge weight) over the steps, per-step backtrack probabilities,
// and the expected sqrt-weight mass carried by walks that backtrack at least
// once.  Reference bounds are evaluated with d = average combinatorial degree.
struct WalkStats {
  bool exact = false;
  int k = 0;
  int samples = 0;  // 0 in exact mode
  double avg_degree = 0.0;

  double expected_sqrtw_sum = 0.0;       // E sum_i sqrt(w(X_{i-1}, X_i))
  double sqrtw_sum_stderr = 0.0;         // Monte Carlo only
  double per_step_edge_average = 0.0;    // sum_E w^{3/2} / sum_E w
  double expected_sum_lower_bound = 0.0; // k/sqrt(d) - 2k/d
  double sqrtw_sum_max = 0.0;            // 2k/d^{1/4}

  std::vector<double> backtrack_prob;    // steps i = 2..k
  double backtrack_prob_bound = 0.0;     // (4/sqrt(d)) / (1 - 4/sqrt(d))
  double backtrack_mass = 0.0;           // E[ 1{any backtrack} * sum sqrt(w) ]
  double backtrack_mass_stderr = 0.0;    // Monte Carlo only
  double backtrack_mass_bound = 0.0;     // 40 k^2 / d^{3/4}

  double total_probability = 0.0;        // exact mode sanity: 1 up to 1e-10
};

// Exact mode: dynamic program over (previous vertex, current vertex,
// backtracked flag).  Limited to k <= 6 and n <= 200; G must be connected
// with at least one edge.
WalkStats walk_stats_exact(const WeightedGraph& g, int k);

// Monte Carlo mode: `samples` independent stationary walks, reproducible in
// `seed`.  Sampling is inverse-CDF over id-sorted vertices/neighbors so the
// stream does not depend on container iteration order.
WalkStats walk_stats_monte_carlo(const WeightedGraph& g, int k, int samples,
                                 std::uint64_t seed);

// --- special-case certificates on normalized graphs ------------------------

// A vertex of unusually low weighted degree pins lambda_2 below
// w(u) * n/(n-1) via an explicit two-level vector, while a spike at a
// weighted-degree-1 vertex pins lambda_max >= 1.
struct LowWeightedDegreeCertificate {
  int low_vertex = 0;
  int heavy_vertex = 0;
  Eigen::VectorXd f;              // 1 at low_vertex, -1/(n-1) elsewhere
  Eigen::VectorXd h;              // spike at heavy_vertex
  double threshold = 0.0;         // 1 - 4/sqrt(d)
  double lambda2_upper = 0.0;     // rayleigh(L, f)
  double lambda2_upper_closed_form = 0.0;  // w(u) * n/(n-1)
  double lambda_max_lower = 0.0;  // rayleigh(L, h) = w(heavy_vertex)
  double ratio_lower_bound = 0.0; // lambda_max_lower / lambda2_upper
};

// Returns a certificate iff some vertex has weighted degree <= 1 - 4/sqrt(d).
// Requires max weighted degree 1 (to 1e-9) and n >= 2.
std::optional<LowWeightedDegreeCertificate> low_weighted_degree_certificate(
    const WeightedGraph& g, double d);

// An edge of weight > 4/sqrt(d) pushes lambda_max up: the difference-of-
// endpoints vector has Rayleigh quotient (w(u)+w(v)+2w(uv))/2.
struct HeavyEdgeCertificate {
  int u = 0;
  int v = 0;
  double edge_weight = 0.0;
  Eigen::VectorXd h;              // e_u - e_v
  double quotient = 0.0;          // rayleigh(L, h)
  double reference_bound = 0.0;   // 1 + 4/sqrt(d)
};

// Returns a certificate iff some edge has weight > 4/sqrt(d); the heaviest
// such edge is used (ties to the lexicographically smallest pair).
// Requires max weighted degree 1 (to 1e-9).
std::optional<HeavyEdgeCertificate> heavy_edge_certificate(
    const WeightedGraph& g, double d);

// Detection only: a vertex of combinatorial degree < d/4, lowest id first.
// There is no accompanying test vector for this case.
std::optional<int> find_low_combinatorial_degree(const WeightedGraph& g,
                                                 double d);

}  // namespace specsparse
