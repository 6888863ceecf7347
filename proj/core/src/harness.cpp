#include "specsparse/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <memory>
#include <stdexcept>
#include <thread>
#include <vector>

#include "specsparse/certificates.hpp"
#include "specsparse/game.hpp"
#include "specsparse/generators.hpp"
#include "specsparse/graph.hpp"
#include "specsparse/poly.hpp"
#include "specsparse/rng.hpp"
#include "specsparse/sparsify.hpp"
#include "specsparse/spectral.hpp"

namespace specsparse {

namespace {

using nlohmann::json;

constexpr const char* kVersion = "0.1.0";

std::string iso_timestamp() {
  const std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::string num(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

// Infinity and NaN have no JSON representation; report them as null next to
// an explicit flag (e.g. "singular") so consumers don't have to guess.
json finite_or_null(double x) {
  return std::isfinite(x) ? json(x) : json();
}

bool is_pow2(int n) { return n >= 1 && (n & (n - 1)) == 0; }

WeightedGraph apply_uniform_weight(const WeightedGraph& g, double w) {
  std::vector<Edge> edges = g.edges();
  for (auto& e : edges) e.w = w;
  return WeightedGraph(g.vertex_count(), edges);
}

WeightedGraph make_graph(const ExperimentSpec& spec, std::uint64_t rep_seed) {
  WeightedGraph g = [&] {
    if (!spec.graph_file.empty()) return load_graph(spec.graph_file);
    if (spec.generator == "complete") return gen_complete(spec.n);
    if (spec.generator == "cycle") return gen_cycle(spec.n);
    if (spec.generator == "hypercube") {
      int dim = 0;
      while ((1 << dim) < spec.n) ++dim;
      return gen_hypercube(dim);
    }
    if (spec.generator == "random-regular") {
      return gen_random_regular(spec.n, spec.d, spec.min_girth, rep_seed);
    }
    throw std::invalid_argument("unknown generator '" + spec.generator + "'");
  }();
  if (!std::isnan(spec.uniform_weight)) {
    g = apply_uniform_weight(g, spec.uniform_weight);
  }
  return g;
}

// Girth when it is known without generating anything; nullopt when only the
// per-repetition run can tell (random graphs) or the graph is acyclic.
std::optional<int> static_girth(const ExperimentSpec& spec) {
  if (!spec.graph_file.empty()) return girth(load_graph(spec.graph_file));
  if (spec.generator == "complete" && spec.n >= 3) return 3;
  if (spec.generator == "cycle") return spec.n;
  if (spec.generator == "hypercube" && spec.n >= 4) return 4;
  return std::nullopt;
}

void validate(const ExperimentSpec& spec) {
  const bool known_kind = spec.kind == "ab-certify" || spec.kind == "game" ||
                          spec.kind == "sparsify" || spec.kind == "laguerre" ||
                          spec.kind == "validate";
  if (!known_kind) {
    throw std::invalid_argument("spec: unknown kind '" + spec.kind + "'");
  }
  if (spec.repetitions < 1) {
    throw std::invalid_argument("spec: repetitions must be >= 1");
  }
  if (spec.kind == "validate") return;

  if (spec.kind == "laguerre") {
    if (spec.n < 1) throw std::invalid_argument("spec: laguerre needs n >= 1");
    const int t = spec.rounds > 0 ? spec.rounds : 4 * spec.n;
    if (t < spec.n) {
      throw std::invalid_argument("spec: laguerre needs T >= n");
    }
    return;
  }

  if (spec.kind == "game") {
    if (spec.n < 1) throw std::invalid_argument("spec: game needs n >= 1");
    if (!is_pow2(spec.n)) {
      throw std::invalid_argument(
          "spec: game dimension must be a power of two (Hadamard menu)");
    }
    if (spec.rounds <= 0 && spec.d <= 0) {
      throw std::invalid_argument("spec: game needs rounds or d to fix T");
    }
    const bool known_player =
        spec.player == "bss" || spec.player == "uniform" ||
        spec.player == "greedy-cond" || spec.player == "random";
    if (!known_player) {
      throw std::invalid_argument("spec: unknown player '" + spec.player + "'");
    }
    return;
  }

  // Graph-consuming kinds.
  if (spec.graph_file.empty()) {
    const bool known_gen =
        spec.generator == "complete" || spec.generator == "cycle" ||
        spec.generator == "hypercube" || spec.generator == "random-regular";
    if (!known_gen) {
      throw std::invalid_argument("spec: unknown generator '" +
                                  spec.generator + "'");
    }
    if (spec.n < 1) throw std::invalid_argument("spec: generator needs n >= 1");
    if (spec.generator == "hypercube" && !is_pow2(spec.n)) {
      throw std::invalid_argument("spec: hypercube needs n = 2^dim");
    }
  }
  if (!std::isnan(spec.uniform_weight) && !(spec.uniform_weight > 0.0)) {
    throw std::invalid_argument("spec: uniform weight must be positive");
  }
  if (spec.kind == "ab-certify") {
    if (spec.k < 0) throw std::invalid_argument("spec: k must be >= 0");
    if (const auto g = static_girth(spec); g && 2 * spec.k + 1 >= *g) {
      throw std::invalid_argument(
          "spec: k = " + std::to_string(spec.k) +
          " needs 2k+1 < girth = " + std::to_string(*g));
    }
  }
  if (spec.kind == "sparsify" && spec.d < 3) {
    throw std::invalid_argument("spec: sparsify needs d >= 3");
  }
}

json spec_echo(const ExperimentSpec& spec) {
  json j;
  j["kind"] = spec.kind;
  j["graph_file"] = spec.graph_file;
  j["generator"] = spec.generator;
  j["n"] = spec.n;
  j["d"] = spec.d;
  j["min_girth"] = spec.min_girth;
  j["uniform_weight"] = finite_or_null(spec.uniform_weight);
  j["k"] = spec.k;
  j["rounds"] = spec.rounds;
  j["player"] = spec.player;
  j["laguerre_s"] = spec.laguerre_s;
  j["seed"] = spec.seed;
  j["repetitions"] = spec.repetitions;
  j["graph_out"] = spec.graph_out;
  return j;
}

std::unique_ptr<Player> make_player(const std::string& name, int dim,
                                    int rounds, std::uint64_t seed) {
  if (name == "bss") return std::make_unique<BssPlayer>(dim, rounds);
  if (name == "uniform") return std::make_unique<UniformPlayer>();
  if (name == "greedy-cond") return std::make_unique<GreedyCondPlayer>();
  if (name == "random") return std::make_unique<RandomPlayer>(seed);
  throw std::invalid_argument("unknown player '" + name + "'");
}

// Condition number of the balanced comparison polynomial at the realized
// total scaling; what a naive player's final position is measured against.
double laguerre_ratio(int n, int rounds, double s) {
  const std::vector<double> roots = real_roots(laguerre_poly(n, rounds, s));
  const auto [lo, hi] = std::minmax_element(roots.begin(), roots.end());
  if (!(*lo > 0.0)) return std::numeric_limits<double>::infinity();
  return *hi / *lo;
}

// --- per-repetition bodies --------------------------------------------------

void run_ab_certify(const ExperimentSpec& spec, int rep, json& row) {
  const std::uint64_t rep_seed = derive_seed(spec.seed, rep);
  const WeightedGraph g =
      normalize_max_weighted_degree(make_graph(spec, rep_seed));
  row["n"] = g.vertex_count();
  row["m"] = static_cast<long long>(g.edge_count());
  row["k"] = spec.k;
  const BestRootCertificate bc = best_root_certificate(g, spec.k);
  row["best_root"] = bc.best.root;
  row["certified_lower_bound"] = bc.best.certified_lower_bound;
  row["eigensolver_ratio"] = bc.best.eigensolver_ratio;
  row["pi_average_fWf"] = bc.pi_average_fWf;
  row["reference_2k_sqrt_d"] = bc.reference_2k_sqrt_d;
  row["roots_evaluated"] = bc.roots_evaluated;
  row["f_D_f"] = bc.best.f_D_f;
  row["f_W_f"] = bc.best.f_W_f;
  row["fs_D_fs"] = bc.best.fs_D_fs;
  row["fs_W_fs"] = bc.best.fs_W_fs;
  row["norm_f_perp2"] = bc.best.norm_f_perp2;
  row["norm_fs_perp2"] = bc.best.norm_fs_perp2;

  const WalkStats st =
      (g.vertex_count() <= 200 && spec.k <= 6)
          ? walk_stats_exact(g, spec.k)
          : walk_stats_monte_carlo(g, spec.k, 20000, derive_seed(rep_seed, 2));
  row["walk_stats"] = {
      {"exact", st.exact},
      {"expected_sqrtw_sum", st.expected_sqrtw_sum},
      {"expected_sum_lower_bound", st.expected_sum_lower_bound},
      {"per_step_edge_average", st.per_step_edge_average},
      {"backtrack_mass", st.backtrack_mass},
      {"backtrack_mass_bound", finite_or_null(st.backtrack_mass_bound)}};

  row["passed"] =
      bc.best.certified_lower_bound <= bc.best.eigensolver_ratio + 1e-9;
}

void run_game(const ExperimentSpec& spec, int rep, json& row) {
  const std::uint64_t rep_seed = derive_seed(spec.seed, rep);
  const int n = spec.n;
  const int rounds = spec.rounds > 0 ? spec.rounds : (spec.d * n + 1) / 2;
  HadamardAdversary adversary(n);
  const auto player =
      make_player(spec.player, n, rounds, derive_seed(rep_seed, 1));
  const GameResult res = play_game(adversary, *player, n, rounds);

  row["player"] = res.player;
  row["dim"] = n;
  row["rounds"] = rounds;
  row["condition"] = finite_or_null(res.condition);
  row["singular"] = res.singular;
  row["total_scaling"] = res.total_scaling;
  row["laguerre_S"] = res.laguerre_S;
  row["isotropy_max_error"] = res.isotropy_max_error;
  json records = json::array();
  for (const auto& r : res.records) {
    json jr = {{"round", r.round},
               {"index", r.index},
               {"scaling", r.scaling},
               {"lambda_min", r.lambda_min},
               {"lambda_max", r.lambda_max}};
    if (std::isfinite(r.margin)) {
      jr["margin"] = r.margin;
      jr["phi_u"] = r.phi_u;
      jr["phi_l"] = r.phi_l;
    }
    records.push_back(std::move(jr));
  }
  row["records"] = std::move(records);
  row["final_eigenvalues"] = std::vector<double>(
      res.final_eigenvalues.begin(), res.final_eigenvalues.end());
  if (res.expected_charpoly) {
    const CharpolyCheck check = charpoly_trace_check(res);
    row["charpoly_relative_error"] = check.relative_error;
    row["charpoly_holds"] = check.holds;
  }

  if (spec.player == "bss") {
    const double beta = static_cast<double>(rounds) / n;
    const double sq = std::sqrt(beta);
    const double bound = ((sq + 1.0) / (sq - 1.0)) * ((sq + 1.0) / (sq - 1.0));
    row["barrier_bound"] = bound;
    row["passed"] = res.condition <= bound + 1e-6;
  } else {
    const double ratio = laguerre_ratio(n, rounds, res.laguerre_S);
    row["laguerre_ratio"] = finite_or_null(ratio);
    // Lower-bound witness: no player beats the balanced polynomial.
    row["passed"] =
        std::isinf(res.condition) || res.condition >= ratio - 1e-6;
  }
}

void run_sparsify(const ExperimentSpec& spec, int rep, json& row) {
  const std::uint64_t rep_seed = derive_seed(spec.seed, rep);
  const WeightedGraph g = make_graph(spec, rep_seed);
  const SparsifyOutcome out = sparsify(g, spec.d);
  const SparsifierReport& rp = out.report;
  row["n"] = rp.vertex_count;
  row["d"] = rp.average_degree_target;
  row["rounds"] = rp.rounds;
  row["beta"] = rp.beta;
  row["distinct_edges"] = rp.distinct_edges;
  row["condition"] = finite_or_null(rp.verify.condition);
  row["barrier_bound"] = rp.barrier_bound;
  row["degree_bound"] = rp.degree_bound;
  row["ramanujan_reference"] = rp.ramanujan_reference;
  row["rescale"] = rp.rescale;
  row["isotropy_error"] = rp.isotropy_error;
  row["verify_holds"] = rp.verify.holds;
  row["passed"] = rp.verify.holds && rp.distinct_edges <= rp.rounds;
  if (!spec.graph_out.empty() && rep == 0) {
    save_graph(out.sparsifier, spec.graph_out);
    row["graph_out"] = spec.graph_out;
  }
}

void run_laguerre(const ExperimentSpec& spec, int, json& row) {
  const int n = spec.n;
  const int rounds = spec.rounds > 0 ? spec.rounds : 4 * n;
  const double s = spec.laguerre_s >= 0.0 ? spec.laguerre_s
                                          : static_cast<double>(n);
  const std::vector<double> roots = real_roots(laguerre_poly(n, rounds, s));
  const auto edges = mp_edges(n, rounds, s);
  const auto [lo, hi] = std::minmax_element(roots.begin(), roots.end());

  row["n"] = n;
  row["rounds"] = rounds;
  row["S"] = s;
  row["roots"] = roots;
  row["root_min"] = *lo;
  row["root_max"] = *hi;
  row["edge_low"] = edges.first;
  row["edge_high"] = edges.second;
  row["rel_dev_low"] =
      edges.first > 0.0 ? std::abs(*lo - edges.first) / edges.first : 0.0;
  row["rel_dev_high"] = std::abs(*hi - edges.second) / edges.second;
  row["passed"] = static_cast<int>(roots.size()) == n && *lo >= -1e-9;
}

void run_rep(const ExperimentSpec& spec, int rep, json& row) {
  if (spec.kind == "ab-certify") return run_ab_certify(spec, rep, row);
  if (spec.kind == "game") return run_game(spec, rep, row);
  if (spec.kind == "sparsify") return run_sparsify(spec, rep, row);
  if (spec.kind == "laguerre") return run_laguerre(spec, rep, row);
  throw std::logic_error("run_rep: unhandled kind");
}

// --- CSV --------------------------------------------------------------------

std::string csv_cell(const json& row, const char* key) {
  if (!row.contains(key)) return "";
  const json& v = row.at(key);
  if (v.is_null()) return "";
  if (v.is_boolean()) return v.get<bool>() ? "1" : "0";
  if (v.is_number_integer()) return std::to_string(v.get<long long>());
  if (v.is_number()) return num(v.get<double>());
  return v.get<std::string>();
}

std::string make_csv(const std::vector<const char*>& columns,
                     const std::vector<json>& rows) {
  std::string out;
  for (std::size_t c = 0; c < columns.size(); ++c) {
    out += columns[c];
    out += (c + 1 < columns.size()) ? ',' : '\n';
  }
  for (const json& row : rows) {
    for (std::size_t c = 0; c < columns.size(); ++c) {
      out += csv_cell(row, columns[c]);
      out += (c + 1 < columns.size()) ? ',' : '\n';
    }
  }
  return out;
}

std::string csv_for(const std::string& kind, const std::vector<json>& rows) {
  if (kind == "ab-certify") {
    return make_csv({"rep", "n", "m", "k", "best_root",
                     "certified_lower_bound", "eigensolver_ratio",
                     "pi_average_fWf", "reference_2k_sqrt_d", "passed",
                     "error"},
                    rows);
  }
  if (kind == "game") {
    return make_csv({"rep", "player", "dim", "rounds", "condition", "singular",
                     "total_scaling", "laguerre_S", "laguerre_ratio",
                     "barrier_bound", "charpoly_relative_error",
                     "isotropy_max_error", "passed", "error"},
                    rows);
  }
  if (kind == "sparsify") {
    return make_csv({"rep", "n", "d", "rounds", "distinct_edges", "condition",
                     "barrier_bound", "degree_bound", "ramanujan_reference",
                     "rescale", "verify_holds", "passed", "error"},
                    rows);
  }
  if (kind == "laguerre") {
    return make_csv({"rep", "n", "rounds", "S", "root_min", "root_max",
                     "edge_low", "edge_high", "rel_dev_low", "rel_dev_high",
                     "passed", "error"},
                    rows);
  }
  return {};
}

json assemble_document(const ExperimentSpec& spec, std::vector<json> rows,
                       bool passed) {
  json doc;
  doc["header"] = {{"tool", "specsparse"},
                   {"version", kVersion},
                   {"generated_at", iso_timestamp()}};
  doc["spec"] = spec_echo(spec);
  int failures = 0;
  for (const json& r : rows) {
    if (!r.value("passed", false)) ++failures;
  }
  doc["summary"] = {{"repetitions", static_cast<int>(rows.size())},
                    {"failures", failures}};
  doc["runs"] = std::move(rows);
  doc["passed"] = passed;
  return doc;
}

}  // namespace

int worker_count() {
  const char* env = std::getenv("SPECSPARSE_WORKERS");
  if (env == nullptr || *env == '\0') return 1;
  char* end = nullptr;
  const long v = std::strtol(env, &end, 10);
  if (end == env || *end != '\0' || v < 1 || v > 256) {
    throw std::invalid_argument(
        "SPECSPARSE_WORKERS must be an integer in [1, 256], got '" +
        std::string(env) + "'");
  }
  return static_cast<int>(v);
}

Report run(const ExperimentSpec& spec) {
  validate(spec);
  if (spec.kind == "validate") {
    Report rep = validate_suite();
    rep.document["spec"] = spec_echo(spec);
    write_report(rep, spec.json_out, spec.csv_out);
    return rep;
  }

  const int reps = spec.repetitions;
  std::vector<json> rows(reps);
  const auto body = [&](int i) {
    json row;
    row["rep"] = i;
    try {
      run_rep(spec, i, row);
    } catch (const std::exception& e) {
      // Keep the batch going; the row records what failed and why.
      row["error"] = e.what();
      row["passed"] = false;
    }
    rows[i] = std::move(row);
  };

  const int workers = std::min(worker_count(), reps);
  if (workers <= 1) {
    for (int i = 0; i < reps; ++i) body(i);
  } else {
    std::atomic<int> next{0};
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (int i = next.fetch_add(1); i < reps; i = next.fetch_add(1)) {
          body(i);
        }
      });
    }
    for (auto& t : pool) t.join();
  }

  Report report;
  report.passed = true;
  for (const json& r : rows) {
    if (!r.value("passed", false)) report.passed = false;
  }
  report.csv = csv_for(spec.kind, rows);
  report.document = assemble_document(spec, std::move(rows), report.passed);
  write_report(report, spec.json_out, spec.csv_out);
  return report;
}

// --- validation battery -------------------------------------------------

namespace {

void add_case(std::vector<json>& cases, const std::string& suite,
              const std::string& name, bool passed,
              const std::string& detail = "") {
  json c;
  c["suite"] = suite;
  c["case"] = name;
  c["passed"] = passed;
  if (!detail.empty()) c["detail"] = detail;
  cases.push_back(std::move(c));
}

void suite_charpoly(std::vector<json>& cases) {
  for (int n : {2, 4, 8}) {
    const int rounds = 4 * n;
    std::vector<std::unique_ptr<Player>> players;
    players.push_back(std::make_unique<UniformPlayer>());
    players.push_back(std::make_unique<GreedyCondPlayer>());
    players.push_back(std::make_unique<RandomPlayer>(derive_seed(7, n)));
    players.push_back(std::make_unique<RandomPlayer>(derive_seed(8, n)));
    for (const auto& p : players) {
      const std::string name =
          "n=" + std::to_string(n) + " player=" + p->name();
      try {
        HadamardAdversary adv(n);
        const GameResult res = play_game(adv, *p, n, rounds);
        const CharpolyCheck check = charpoly_trace_check(res);
        add_case(cases, "charpoly-invariance", name, check.holds,
                 "relative_error=" + num(check.relative_error));
      } catch (const std::exception& e) {
        add_case(cases, "charpoly-invariance", name, false, e.what());
      }
    }
  }
}

void suite_majorization(std::vector<json>& cases) {
  Rng rng(42);
  int failures = 0;
  std::string first_failure;
  const int instances = 60;
  for (int i = 0; i < instances; ++i) {
    const int n = 2 + rng.index(7);        // up to 8
    const int t = n + 1 + rng.index(12);   // up to n + 12
    std::vector<double> scalings(t);
    double total = 0.0;
    for (double& s : scalings) {
      s = rng.unit() < 0.1 ? 0.0 : rng.uniform(0.05, 2.0);
      total += s;
    }
    try {
      const auto played = real_roots(product_transform(n, scalings));
      const auto balanced = real_roots(laguerre_poly(n, t, total / n));
      if (!majorizes(played, balanced, 1e-8)) {
        ++failures;
        if (first_failure.empty()) {
          first_failure = "instance " + std::to_string(i);
        }
      }
    } catch (const std::exception& e) {
      ++failures;
      if (first_failure.empty()) first_failure = e.what();
    }
  }
  add_case(cases, "majorization",
           std::to_string(instances) + " random scaling sequences",
           failures == 0,
           failures == 0 ? "" : std::to_string(failures) +
                                    " failures; first: " + first_failure);
}

void suite_barrier(std::vector<json>& cases) {
  for (int n : {8, 16}) {
    const int rounds = 4 * n;
    const std::string name = "bss n=" + std::to_string(n);
    try {
      HadamardAdversary adv(n);
      BssPlayer player(n, rounds);
      const GameResult res = play_game(adv, player, n, rounds);
      double min_margin = std::numeric_limits<double>::infinity();
      for (const auto& r : res.records) {
        min_margin = std::min(min_margin, r.margin);
      }
      const bool ok = res.condition <= 9.0 + 1e-6 && min_margin > 0.0;
      add_case(cases, "barrier-safety", name, ok,
               "condition=" + num(res.condition) +
                   " min_margin=" + num(min_margin));
    } catch (const std::exception& e) {
      add_case(cases, "barrier-safety", name, false, e.what());
    }
  }
}

void suite_certificates(std::vector<json>& cases) {
  Rng rng(1234);
  int failures = 0;
  std::string first_failure;
  int count = 0;
  const auto check_graph = [&](const WeightedGraph& base) {
    std::vector<Edge> edges = base.edges();
    for (auto& e : edges) e.w = rng.uniform(0.2, 1.0);
    const WeightedGraph g = normalize_max_weighted_degree(
        WeightedGraph(base.vertex_count(), edges));
    const int max_k = g.girth() ? (*g.girth() - 2) / 2 : 3;
    const int k = rng.index(static_cast<std::size_t>(max_k) + 1);
    const int root = rng.index(static_cast<std::size_t>(g.vertex_count()));
    ++count;
    try {
      const AbCertificate cert = ab_certificate(g, root, k);
      if (!(cert.certified_lower_bound <= cert.eigensolver_ratio + 1e-9)) {
        ++failures;
        if (first_failure.empty()) {
          first_failure = "unsound at n=" + std::to_string(g.vertex_count()) +
                          " root=" + std::to_string(root) +
                          " k=" + std::to_string(k);
        }
      }
    } catch (const std::exception& e) {
      ++failures;
      if (first_failure.empty()) first_failure = e.what();
    }
  };

  for (int n = 5; n <= 10; ++n) check_graph(gen_complete(n));
  for (int n = 5; n <= 12; ++n) check_graph(gen_cycle(n));
  check_graph(gen_hypercube(3));
  check_graph(gen_hypercube(4));
  for (int i = 0; i < 6; ++i) {
    check_graph(gen_random_regular(24, 3, 4, derive_seed(99, i)));
  }
  add_case(cases, "certificate-soundness",
           std::to_string(count) + " random (graph, weights, root, k) draws",
           failures == 0,
           failures == 0 ? "" : std::to_string(failures) +
                                    " failures; first: " + first_failure);

  // Walk-statistics identity on a uniform-weight regular graph: every step
  // contributes exactly 1/sqrt(d).
  try {
    const WeightedGraph k26 =
        apply_uniform_weight(gen_complete(26), 1.0 / 25.0);
    const WalkStats st = walk_stats_exact(k26, 4);
    const bool ok =
        std::abs(st.expected_sqrtw_sum - 4.0 / 5.0) <= 1e-12 &&
        std::abs(st.total_probability - 1.0) <= 1e-12;
    add_case(cases, "certificate-soundness", "walk identity on K26 (w=1/25)",
             ok, "E=" + num(st.expected_sqrtw_sum));
  } catch (const std::exception& e) {
    add_case(cases, "certificate-soundness", "walk identity on K26 (w=1/25)",
             false, e.what());
  }
}

}  // namespace

Report validate_suite() {
  std::vector<json> cases;
  suite_charpoly(cases);
  suite_majorization(cases);
  suite_barrier(cases);
  suite_certificates(cases);

  Report report;
  report.passed = true;
  int failures = 0;
  for (const json& c : cases) {
    if (!c.value("passed", false)) {
      report.passed = false;
      ++failures;
    }
  }
  report.csv = make_csv({"suite", "case", "passed", "detail"}, cases);

  json doc;
  doc["header"] = {{"tool", "specsparse"},
                   {"version", kVersion},
                   {"generated_at", iso_timestamp()}};
  doc["summary"] = {{"cases", static_cast<int>(cases.size())},
                    {"failures", failures}};
  doc["runs"] = std::move(cases);
  doc["passed"] = report.passed;
  report.document = std::move(doc);
  return report;
}

void write_report(const Report& report, const std::string& json_path,
                  const std::string& csv_path) {
  if (!json_path.empty()) {
    std::ofstream out(json_path);
    if (!out) {
      throw std::runtime_error("write_report: cannot open " + json_path);
    }
    out << report.document.dump(2) << '\n';
  }
  if (!csv_path.empty()) {
    std::ofstream out(csv_path);
    if (!out) {
      throw std::runtime_error("write_report: cannot open " + csv_path);
    }
    out << report.csv;
  }
}

}  // namespace specsparse
