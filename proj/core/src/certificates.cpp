#include "specsparse/certificates.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "specsparse/rng.hpp"

namespace specsparse {

namespace {

void require_normalized(const WeightedGraph& g, const char* who) {
  if (g.edge_count() == 0) {
    throw std::invalid_argument(std::string(who) + ": graph has no edges");
  }
  if (std::abs(g.degrees().max_weighted - 1.0) > 1e-9) {
    throw std::invalid_argument(
        std::string(who) +
        ": graph must be normalized to max weighted degree 1 (got " +
        std::to_string(g.degrees().max_weighted) + ")");
  }
}

double signed_int_pow(double base, int e) {
  double acc = 1.0;
  for (int i = 0; i < e; ++i) acc *= base;
  return acc;
}

// f^T W f over the weighted adjacency, straight from the edge list.  Kept as
// a plain edge loop on purpose: the tree-level shortcut for test functions is
// a theorem, and tests compare the two.
double adjacency_quadratic_form(const WeightedGraph& g,
                                const Eigen::VectorXd& f) {
  double acc = 0.0;
  for (const auto& e : g.edges()) acc += 2.0 * e.w * f[e.u] * f[e.v];
  return acc;
}

double degree_quadratic_form(const WeightedGraph& g, const Eigen::VectorXd& f) {
  const auto& wd = g.degrees().weighted;
  double acc = 0.0;
  for (int v = 0; v < g.vertex_count(); ++v) acc += wd[v] * f[v] * f[v];
  return acc;
}

double average_degree(const WeightedGraph& g) {
  return 2.0 * g.edge_count() / g.vertex_count();
}

}  // namespace

TestFunction test_function(const WeightedGraph& g, int root, int k) {
  if (root < 0 || root >= g.vertex_count()) {
    throw std::invalid_argument("test_function: root out of range");
  }
  if (k < 0) throw std::invalid_argument("test_function: negative radius");
  if (const auto gg = g.girth(); gg && 2 * k + 1 >= *gg) {
    throw std::invalid_argument(
        "test_function: need 2k+1 < girth for unique shortest paths (k=" +
        std::to_string(k) + ", girth=" + std::to_string(*gg) + ")");
  }

  TestFunction tf;
  tf.root = root;
  tf.k = k;
  tf.tree = bfs_tree(g, root, k);
  tf.values = Eigen::VectorXd::Zero(g.vertex_count());
  tf.values[root] = 1.0;
  tf.level_norm2.assign(k + 1, 0.0);
  tf.level_norm2[0] = 1.0;
  for (int l = 1; l <= k; ++l) {
    for (int v : tf.tree.levels[l]) {
      const int p = tf.tree.parent[v];
      tf.values[v] = std::sqrt(g.weight(p, v)) * tf.values[p];
      tf.level_norm2[l] += tf.values[v] * tf.values[v];
    }
  }
  return tf;
}

Eigen::VectorXd signed_test_function(const TestFunction& tf) {
  Eigen::VectorXd out = tf.values;
  for (std::size_t l = 1; l < tf.tree.levels.size(); l += 2) {
    for (int v : tf.tree.levels[l]) out[v] = -out[v];
  }
  return out;
}

FnormBoundsReport fnorm_bounds_check(const WeightedGraph& g,
                                     const TestFunction& tf, double d) {
  if (!(d > 0.0)) throw std::invalid_argument("fnorm_bounds_check: d must be positive");
  require_normalized(g, "fnorm_bounds_check");
  const double heavy = 4.0 / std::sqrt(d);
  if (g.degrees().min_weighted < 1.0 - heavy - 1e-9) {
    throw std::invalid_argument(
        "fnorm_bounds_check: minimum weighted degree below 1 - 4/sqrt(d)");
  }
  for (const auto& e : g.edges()) {
    if (e.w > heavy + 1e-9) {
      throw std::invalid_argument(
          "fnorm_bounds_check: edge weight exceeds 4/sqrt(d)");
    }
  }

  FnormBoundsReport rep;
  for (double c : tf.level_norm2) rep.norm2 += c;
  const double damp = 1.0 - 8.0 / std::sqrt(d);
  rep.lower = signed_int_pow(damp, tf.k) * (tf.k + 1);
  rep.upper = tf.k + 1.0;
  rep.lower_holds = rep.norm2 >= rep.lower - 1e-9;
  rep.upper_holds = rep.norm2 <= rep.upper + 1e-9;

  rep.level_ratios_hold = true;
  for (int l = 0; l < tf.k; ++l) {
    if (tf.level_norm2[l + 1] == 0.0) break;  // ball ended early
    const double ratio = tf.level_norm2[l + 1] / tf.level_norm2[l];
    rep.level_ratios.push_back(ratio);
    if (ratio < damp - 1e-9 || ratio > 1.0 + 1e-9) rep.level_ratios_hold = false;
  }
  return rep;
}

ProjectionBoundReport projection_bound_check(const WeightedGraph& g,
                                             const TestFunction& tf, double d,
                                             int g_girth) {
  // ball_size_check validates d >= 12, the degree floor, the girth assertion
  // and the radius range; reuse it rather than duplicating the checks.
  const BallSizeReport ball = ball_size_check(g, tf.root, tf.k, g_girth, d);

  ProjectionBoundReport rep;
  const double n = g.vertex_count();
  const double norm2 = tf.values.squaredNorm();
  rep.measured_ratio = project_orth_ones(tf.values).squaredNorm() / norm2;
  for (const auto& level : tf.tree.levels) {
    rep.support += static_cast<long long>(level.size());
  }
  rep.support_bound = 1.0 - static_cast<double>(rep.support) / n;
  rep.ball_bound = ball.bound;
  rep.ball_bound_ratio = 1.0 - std::min(ball.bound, n) / n;
  rep.holds_support = rep.measured_ratio >= rep.support_bound - 1e-12;
  rep.holds_ball = rep.measured_ratio >= rep.ball_bound_ratio - 1e-12;
  return rep;
}

AbCertificate ab_certificate(const WeightedGraph& g, int root, int k,
                             const LambdaRatio& known_ratio) {
  if (!g.connected()) {
    throw std::invalid_argument("ab_certificate: graph must be connected");
  }
  require_normalized(g, "ab_certificate");

  AbCertificate cert;
  cert.root = root;
  cert.k = k;
  const TestFunction tf = test_function(g, root, k);
  cert.f = tf.values;
  cert.f_signed = signed_test_function(tf);
  cert.f_D_f = degree_quadratic_form(g, cert.f);
  cert.f_W_f = adjacency_quadratic_form(g, cert.f);
  cert.fs_D_fs = degree_quadratic_form(g, cert.f_signed);
  cert.fs_W_fs = adjacency_quadratic_form(g, cert.f_signed);
  cert.norm_f_perp2 = project_orth_ones(cert.f).squaredNorm();
  cert.norm_fs_perp2 = project_orth_ones(cert.f_signed).squaredNorm();

  if (cert.norm_f_perp2 < 1e-12 || cert.norm_fs_perp2 < 1e-12) {
    throw std::runtime_error(
        "ab_certificate: test vector is (numerically) constant, no quotient");
  }
  const double f_L_f = cert.f_D_f - cert.f_W_f;    // f^T (D - W) f
  const double fs_L_fs = cert.fs_D_fs - cert.fs_W_fs;
  if (f_L_f <= 0.0) {
    throw std::runtime_error("ab_certificate: degenerate Laplacian form");
  }
  // lambda_2 <= f^T L f / ||f_perp||^2 and lambda_max >= f'^T L f' /
  // ||f'_perp||^2, both via translation invariance of the Laplacian form.
  cert.certified_lower_bound =
      (fs_L_fs / cert.norm_fs_perp2) / (f_L_f / cert.norm_f_perp2);
  cert.eigensolver_ratio = known_ratio.ratio;
  return cert;
}

AbCertificate ab_certificate(const WeightedGraph& g, int root, int k) {
  return ab_certificate(g, root, k, lambda_ratio(g));
}

Eigen::VectorXd stationary_distribution(const WeightedGraph& g) {
  if (g.edge_count() == 0) {
    throw std::invalid_argument("stationary_distribution: graph has no edges");
  }
  const auto& wd = g.degrees().weighted;
  Eigen::VectorXd pi(g.vertex_count());
  for (int v = 0; v < g.vertex_count(); ++v) pi[v] = wd[v];
  return pi / pi.sum();
}

BestRootCertificate best_root_certificate(const WeightedGraph& g, int k) {
  if (!g.connected()) {
    throw std::invalid_argument("best_root_certificate: graph must be connected");
  }
  require_normalized(g, "best_root_certificate");

  const Eigen::VectorXd pi = stationary_distribution(g);
  const auto fwf_at = [&](int r) {
    const TestFunction tf = test_function(g, r, k);
    return adjacency_quadratic_form(g, tf.values);
  };

  BestRootCertificate out;
  int best_root = -1;
  double best_fwf = -std::numeric_limits<double>::infinity();
  const int n = g.vertex_count();
  if (n <= 5000) {
    for (int r = 0; r < n; ++r) {
      const double v = fwf_at(r);
      out.pi_average_fWf += pi[r] * v;
      if (v > best_fwf) {
        best_fwf = v;
        best_root = r;
      }
    }
    out.roots_evaluated = n;
  } else {
    // Too many vertices to sweep: sample roots from the stationary
    // distribution at a fixed seed so results stay reproducible.
    constexpr int kSamples = 512;
    Rng rng(0x5eed5eedULL);
    std::vector<double> cdf(n);
    double acc = 0.0;
    for (int v = 0; v < n; ++v) {
      acc += pi[v];
      cdf[v] = acc;
    }
    double mean = 0.0;
    for (int s = 0; s < kSamples; ++s) {
      const double x = rng.unit();
      const int r = static_cast<int>(
          std::lower_bound(cdf.begin(), cdf.end(), x) - cdf.begin());
      const double v = fwf_at(std::min(r, n - 1));
      mean += v;
      if (v > best_fwf || (v == best_fwf && r < best_root)) {
        best_fwf = v;
        best_root = std::min(r, n - 1);
      }
    }
    out.pi_average_fWf = mean / kSamples;
    out.roots_evaluated = kSamples;
  }

  out.best = ab_certificate(g, best_root, k, lambda_ratio(g));
  out.reference_2k_sqrt_d = 2.0 * k / std::sqrt(average_degree(g));
  return out;
}

// --- random walk statistics -------------------------------------------------

namespace {

void fill_reference_bounds(WalkStats& st, const WeightedGraph& g) {
  const double d = average_degree(g);
  st.avg_degree = d;
  const double sq = std::sqrt(d);
  st.expected_sum_lower_bound = st.k / sq - 2.0 * st.k / d;
  st.sqrtw_sum_max = 2.0 * st.k / std::pow(d, 0.25);
  st.backtrack_prob_bound = sq > 4.0
                                ? (4.0 / sq) / (1.0 - 4.0 / sq)
                                : std::numeric_limits<double>::infinity();
  st.backtrack_mass_bound = 40.0 * st.k * st.k / std::pow(d, 0.75);

  double w32 = 0.0;
  double w1 = 0.0;
  for (const auto& e : g.edges()) {
    w32 += e.w * std::sqrt(e.w);
    w1 += e.w;
  }
  st.per_step_edge_average = w32 / w1;
}

}  // namespace

WalkStats walk_stats_exact(const WeightedGraph& g, int k) {
  if (k < 0 || k > 6) {
    throw std::invalid_argument("walk_stats_exact: k must be in [0, 6]");
  }
  if (g.vertex_count() > 200) {
    throw std::invalid_argument("walk_stats_exact: n must be <= 200");
  }
  if (!g.connected() || g.edge_count() == 0) {
    throw std::invalid_argument("walk_stats_exact: need a connected graph with edges");
  }

  WalkStats st;
  st.exact = true;
  st.k = k;
  fill_reference_bounds(st, g);

  const int n = g.vertex_count();
  const Eigen::VectorXd pi = stationary_distribution(g);
  const auto& wd = g.degrees().weighted;

  // Directed-edge state: id = offset(u) + position of v in neighbors(u).
  std::vector<int> offset(n + 1, 0);
  for (int u = 0; u < n; ++u) {
    offset[u + 1] = offset[u] + static_cast<int>(g.neighbors(u).size());
  }
  const int de = offset[n];
  auto edge_id = [&](int u, int nb_pos) { return offset[u] + nb_pos; };

  // Per directed edge (a->b): probability of being there, and the expected
  // accumulated sqrt-weight sum restricted to those walks, split by whether
  // the walk has backtracked at least once so far.
  std::vector<double> p_clean(de, 0.0), p_back(de, 0.0);
  std::vector<double> m_clean(de, 0.0), m_back(de, 0.0);

  if (k == 0) {
    st.total_probability = 1.0;
    return st;
  }

  for (int a = 0; a < n; ++a) {
    const auto nbs = g.neighbors(a);
    for (std::size_t j = 0; j < nbs.size(); ++j) {
      const double p = pi[a] * nbs[j].second / wd[a];
      p_clean[edge_id(a, j)] = p;
      m_clean[edge_id(a, j)] = p * std::sqrt(nbs[j].second);
    }
  }

  st.backtrack_prob.assign(std::max(0, k - 1), 0.0);
  for (int step = 2; step <= k; ++step) {
    std::vector<double> np_clean(de, 0.0), np_back(de, 0.0);
    std::vector<double> nm_clean(de, 0.0), nm_back(de, 0.0);
    double bt_prob = 0.0;
    for (int a = 0; a < n; ++a) {
      const auto nbs_a = g.neighbors(a);
      for (std::size_t j = 0; j < nbs_a.size(); ++j) {
        const int e = edge_id(a, j);
        if (p_clean[e] == 0.0 && p_back[e] == 0.0) continue;
        const int b = nbs_a[j].first;
        const auto nbs_b = g.neighbors(b);
        for (std::size_t t = 0; t < nbs_b.size(); ++t) {
          const int c = nbs_b[t].first;
          const double trans = nbs_b[t].second / wd[b];
          const double sw = std::sqrt(nbs_b[t].second);
          const int f = edge_id(b, static_cast<int>(t));
          const bool backtracks = (c == a);
          if (backtracks) bt_prob += (p_clean[e] + p_back[e]) * trans;
          if (backtracks) {
            np_back[f] += p_clean[e] * trans;
            nm_back[f] += trans * (m_clean[e] + p_clean[e] * sw);
          } else {
            np_clean[f] += p_clean[e] * trans;
            nm_clean[f] += trans * (m_clean[e] + p_clean[e] * sw);
          }
          np_back[f] += p_back[e] * trans;
          nm_back[f] += trans * (m_back[e] + p_back[e] * sw);
        }
      }
    }
    st.backtrack_prob[step - 2] = bt_prob;
    p_clean.swap(np_clean);
    p_back.swap(np_back);
    m_clean.swap(nm_clean);
    m_back.swap(nm_back);
  }

  for (int e = 0; e < de; ++e) {
    st.total_probability += p_clean[e] + p_back[e];
    st.expected_sqrtw_sum += m_clean[e] + m_back[e];
    st.backtrack_mass += m_back[e];
  }
  return st;
}

WalkStats walk_stats_monte_carlo(const WeightedGraph& g, int k, int samples,
                                 std::uint64_t seed) {
  if (k < 0) throw std::invalid_argument("walk_stats_monte_carlo: negative k");
  if (samples < 1) {
    throw std::invalid_argument("walk_stats_monte_carlo: need samples >= 1");
  }
  if (!g.connected() || g.edge_count() == 0) {
    throw std::invalid_argument(
        "walk_stats_monte_carlo: need a connected graph with edges");
  }

  WalkStats st;
  st.exact = false;
  st.k = k;
  st.samples = samples;
  fill_reference_bounds(st, g);

  const int n = g.vertex_count();
  const Eigen::VectorXd pi = stationary_distribution(g);
  const auto& wd = g.degrees().weighted;
  std::vector<double> start_cdf(n);
  double acc = 0.0;
  for (int v = 0; v < n; ++v) {
    acc += pi[v];
    start_cdf[v] = acc;
  }

  Rng rng(seed);
  auto pick_start = [&]() {
    const double x = rng.unit();
    const int v = static_cast<int>(
        std::lower_bound(start_cdf.begin(), start_cdf.end(), x) -
        start_cdf.begin());
    return std::min(v, n - 1);
  };
  auto pick_step = [&](int u) {
    const auto nbs = g.neighbors(u);
    double x = rng.unit() * wd[u];
    for (const auto& [v, w] : nbs) {
      x -= w;
      if (x <= 0.0) return std::make_pair(v, w);
    }
    return std::make_pair(nbs.back().first, nbs.back().second);
  };

  double sum = 0.0, sum2 = 0.0;
  double bt_sum = 0.0, bt_sum2 = 0.0;
  std::vector<long long> bt_count(std::max(0, k - 1), 0);
  st.total_probability = 1.0;
  for (int s = 0; s < samples; ++s) {
    int prev = -1;
    int cur = pick_start();
    double sw_sum = 0.0;
    bool backtracked = false;
    for (int step = 1; step <= k; ++step) {
      auto [nxt, w] = pick_step(cur);
      sw_sum += std::sqrt(w);
      if (step >= 2 && nxt == prev) {
        backtracked = true;
        ++bt_count[step - 2];
      }
      prev = cur;
      cur = nxt;
    }
    sum += sw_sum;
    sum2 += sw_sum * sw_sum;
    const double bt_mass = backtracked ? sw_sum : 0.0;
    bt_sum += bt_mass;
    bt_sum2 += bt_mass * bt_mass;
  }

  const double ns = samples;
  st.expected_sqrtw_sum = sum / ns;
  st.backtrack_mass = bt_sum / ns;
  if (samples > 1) {
    const double var = std::max(0.0, (sum2 - sum * sum / ns) / (ns - 1));
    st.sqrtw_sum_stderr = std::sqrt(var / ns);
    const double bt_var =
        std::max(0.0, (bt_sum2 - bt_sum * bt_sum / ns) / (ns - 1));
    st.backtrack_mass_stderr = std::sqrt(bt_var / ns);
  }
  st.backtrack_prob.resize(bt_count.size());
  for (std::size_t i = 0; i < bt_count.size(); ++i) {
    st.backtrack_prob[i] = bt_count[i] / ns;
  }
  return st;
}

// --- special-case certificates ----------------------------------------------

std::optional<LowWeightedDegreeCertificate> low_weighted_degree_certificate(
    const WeightedGraph& g, double d) {
  if (!(d > 0.0)) throw std::invalid_argument("low_weighted_degree_certificate: d <= 0");
  require_normalized(g, "low_weighted_degree_certificate");
  const int n = g.vertex_count();
  if (n < 2) throw std::invalid_argument("low_weighted_degree_certificate: n < 2");

  const auto& wd = g.degrees().weighted;
  int low = 0, heavy = 0;
  for (int v = 1; v < n; ++v) {
    if (wd[v] < wd[low]) low = v;
    if (wd[v] > wd[heavy]) heavy = v;
  }
  const double threshold = 1.0 - 4.0 / std::sqrt(d);
  if (wd[low] > threshold) return std::nullopt;

  LowWeightedDegreeCertificate cert;
  cert.low_vertex = low;
  cert.heavy_vertex = heavy;
  cert.threshold = threshold;
  cert.f = Eigen::VectorXd::Constant(n, -1.0 / (n - 1));
  cert.f[low] = 1.0;
  cert.h = Eigen::VectorXd::Zero(n);
  cert.h[heavy] = 1.0;
  cert.lambda2_upper =
      laplacian_quadratic_form(g, cert.f) / cert.f.squaredNorm();
  cert.lambda2_upper_closed_form = wd[low] * n / (n - 1.0);
  cert.lambda_max_lower = laplacian_quadratic_form(g, cert.h);
  cert.ratio_lower_bound = cert.lambda_max_lower / cert.lambda2_upper;
  return cert;
}

std::optional<HeavyEdgeCertificate> heavy_edge_certificate(
    const WeightedGraph& g, double d) {
  if (!(d > 0.0)) throw std::invalid_argument("heavy_edge_certificate: d <= 0");
  // Unlike the low-degree certificate, this one never points at a degree-1
  // vertex, so max weighted degree <= 1 suffices (equality not required).
  if (g.edge_count() == 0) {
    throw std::invalid_argument("heavy_edge_certificate: graph has no edges");
  }
  if (g.degrees().max_weighted > 1.0 + 1e-9) {
    throw std::invalid_argument(
        "heavy_edge_certificate: max weighted degree exceeds 1 (got " +
        std::to_string(g.degrees().max_weighted) + ")");
  }

  const Edge* heaviest = nullptr;
  for (const auto& e : g.edges()) {
    if (heaviest == nullptr || e.w > heaviest->w) heaviest = &e;
  }
  const double threshold = 4.0 / std::sqrt(d);
  if (heaviest->w <= threshold) return std::nullopt;

  HeavyEdgeCertificate cert;
  cert.u = heaviest->u;
  cert.v = heaviest->v;
  cert.edge_weight = heaviest->w;
  cert.h = Eigen::VectorXd::Zero(g.vertex_count());
  cert.h[cert.u] = 1.0;
  cert.h[cert.v] = -1.0;
  cert.quotient = laplacian_quadratic_form(g, cert.h) / 2.0;
  cert.reference_bound = 1.0 + 4.0 / std::sqrt(d);
  return cert;
}

std::optional<int> find_low_combinatorial_degree(const WeightedGraph& g,
                                                 double d) {
  const auto& cd = g.degrees().combinatorial;
  for (int v = 0; v < g.vertex_count(); ++v) {
    if (cd[v] < d / 4.0) return v;
  }
  return std::nullopt;
}

}  // namespace specsparse
