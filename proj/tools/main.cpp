// Command-line front end: generate graphs, run certificate sweeps, play the
// rank-one game, sparsify, and validate the library against its invariants.
// Exit code 0 = everything passed, 1 = a run failed its criterion, 2 = error.

#include <cmath>
#include <cstdio>
#include <exception>
#include <limits>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "specsparse/generators.hpp"
#include "specsparse/graph.hpp"
#include "specsparse/harness.hpp"

namespace {

using nlohmann::json;
using specsparse::ExperimentSpec;

void add_graph_options(CLI::App* cmd, ExperimentSpec& spec) {
  cmd->add_option("--in", spec.graph_file,
                  "read the graph from an edge-list file");
  cmd->add_option(
         "--gen", spec.generator,
         "generator when --in is absent: complete|cycle|hypercube|random-regular")
      ->capture_default_str();
  cmd->add_option("--n", spec.n, "vertex count for the generator");
  cmd->add_option("--d", spec.d, "degree for random-regular graphs");
  cmd->add_option("--min-girth", spec.min_girth,
                  "girth floor for random-regular graphs")
      ->capture_default_str();
  cmd->add_option("--uniform-weight", spec.uniform_weight,
                  "override every edge weight with this value");
  cmd->add_option("--seed", spec.seed, "base seed")->capture_default_str();
}

void add_report_options(CLI::App* cmd, ExperimentSpec& spec) {
  cmd->add_option("--emit,--report", spec.json_out,
                  "write the JSON report to this path");
  cmd->add_option("--csv", spec.csv_out, "write the CSV table to this path");
  cmd->add_option("--reps", spec.repetitions, "independent repetitions")
      ->capture_default_str();
}

double row_number(const json& row, const char* key) {
  if (!row.contains(key) || row.at(key).is_null()) {
    return std::numeric_limits<double>::infinity();
  }
  return row.at(key).get<double>();
}

void print_runs(const ExperimentSpec& spec, const json& doc) {
  for (const json& row : doc.at("runs")) {
    const int rep = row.value("rep", 0);
    if (row.contains("error")) {
      std::printf("rep %d: error: %s\n", rep,
                  row.at("error").get<std::string>().c_str());
      continue;
    }
    if (spec.kind == "ab-certify") {
      std::printf("rep %d: root=%d certified=%.6f eigensolver=%.6f\n", rep,
                  row.value("best_root", -1),
                  row_number(row, "certified_lower_bound"),
                  row_number(row, "eigensolver_ratio"));
    } else if (spec.kind == "game") {
      std::printf("rep %d: player=%s condition=%.6f reference=%.6f\n", rep,
                  row.value("player", std::string()).c_str(),
                  row_number(row, "condition"),
                  spec.player == "bss" ? row_number(row, "barrier_bound")
                                       : row_number(row, "laguerre_ratio"));
    } else if (spec.kind == "sparsify") {
      std::printf("rep %d: edges=%d condition=%.6f bound=%.6f ramanujan=%.6f\n",
                  rep, row.value("distinct_edges", 0),
                  row_number(row, "condition"),
                  row_number(row, "degree_bound"),
                  row_number(row, "ramanujan_reference"));
    } else if (spec.kind == "laguerre") {
      std::printf("rep %d: roots in [%.6f, %.6f], reference edges [%.6f, %.6f]\n",
                  rep, row_number(row, "root_min"), row_number(row, "root_max"),
                  row_number(row, "edge_low"), row_number(row, "edge_high"));
    }
  }
}

int run_and_print(ExperimentSpec& spec) {
  const specsparse::Report report = specsparse::run(spec);
  if (spec.kind == "validate") {
    const json& summary = report.document.at("summary");
    for (const json& row : report.document.at("runs")) {
      if (!row.value("passed", false)) {
        std::printf("FAIL %s: %s (%s)\n",
                    row.value("suite", std::string()).c_str(),
                    row.value("case", std::string()).c_str(),
                    row.value("detail", std::string()).c_str());
      }
    }
    std::printf("%d cases, %d failures\n", summary.value("cases", 0),
                summary.value("failures", 0));
  } else {
    print_runs(spec, report.document);
  }
  std::printf("%s\n", report.passed ? "PASS" : "FAIL");
  return report.passed ? 0 : 1;
}

int run_gen(const ExperimentSpec& spec, const std::string& out_path,
            const std::string& emit_path) {
  using namespace specsparse;
  WeightedGraph g = [&] {
    if (spec.generator == "complete") return gen_complete(spec.n);
    if (spec.generator == "cycle") return gen_cycle(spec.n);
    if (spec.generator == "hypercube") {
      int dim = 0;
      while ((1 << dim) < spec.n) ++dim;
      if ((1 << dim) != spec.n) {
        throw std::invalid_argument("gen: hypercube needs n = 2^dim");
      }
      return gen_hypercube(dim);
    }
    if (spec.generator == "random-regular") {
      return gen_random_regular(spec.n, spec.d, spec.min_girth, spec.seed);
    }
    throw std::invalid_argument("gen: unknown generator '" + spec.generator +
                                "'");
  }();
  if (!std::isnan(spec.uniform_weight)) {
    std::vector<Edge> edges = g.edges();
    for (auto& e : edges) e.w = spec.uniform_weight;
    g = WeightedGraph(g.vertex_count(), edges);
  }
  save_graph(g, out_path);

  const DegreeSummary deg = g.degrees();
  const auto gg = g.girth();
  std::printf("wrote %s: n=%d m=%d girth=%s connected=%s\n", out_path.c_str(),
              g.vertex_count(), g.edge_count(),
              gg ? std::to_string(*gg).c_str() : "none",
              g.connected() ? "yes" : "no");
  if (!emit_path.empty()) {
    json doc;
    doc["n"] = g.vertex_count();
    doc["m"] = static_cast<long long>(g.edge_count());
    doc["girth"] = gg ? json(*gg) : json();
    doc["connected"] = g.connected();
    doc["degrees"] = {{"min_combinatorial", deg.min_combinatorial},
                      {"max_combinatorial", deg.max_combinatorial},
                      {"min_weighted", deg.min_weighted},
                      {"max_weighted", deg.max_weighted}};
    specsparse::Report report;
    report.document = std::move(doc);
    specsparse::write_report(report, emit_path, "");
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "spectral sparsifiers, barrier games, and eigenvalue-ratio certificates"};
  app.require_subcommand(1);
  ExperimentSpec spec;

  CLI::App* ab = app.add_subcommand(
      "ab-certify", "certified lower bound on lambda_max/lambda_2");
  add_graph_options(ab, spec);
  ab->add_option("--k", spec.k, "test-function radius (needs 2k+1 < girth)")
      ->capture_default_str();
  add_report_options(ab, spec);

  CLI::App* game = app.add_subcommand(
      "game", "rank-one accumulation game against the Hadamard adversary");
  game->add_option("--n", spec.n, "dimension (power of two)")->required();
  game->add_option("--d", spec.d, "sets T = ceil(d n / 2) when --rounds is absent");
  game->add_option("--rounds", spec.rounds, "number of rounds T");
  game->add_option("--player", spec.player, "bss|uniform|greedy|random")
      ->capture_default_str();
  game->add_option("--seed", spec.seed, "base seed")->capture_default_str();
  add_report_options(game, spec);

  CLI::App* sparsify =
      app.add_subcommand("sparsify", "barrier-game spectral sparsifier");
  add_graph_options(sparsify, spec);
  std::string sparsifier_out;
  sparsify->add_option("--out", sparsifier_out,
                       "write the sparsifier edge list here");
  add_report_options(sparsify, spec);

  CLI::App* laguerre = app.add_subcommand(
      "laguerre", "roots of the balanced game polynomial vs its bulk edges");
  laguerre->add_option("--n", spec.n, "degree")->required();
  laguerre->add_option("--rounds", spec.rounds, "T (default 4n)");
  laguerre->add_option("--S", spec.laguerre_s, "total scaling per dimension (default n)");
  add_report_options(laguerre, spec);

  CLI::App* gen =
      app.add_subcommand("gen", "generate a graph and write its edge list");
  add_graph_options(gen, spec);
  std::string gen_out;
  std::string gen_emit;
  gen->add_option("--out", gen_out, "output edge-list path")->required();
  gen->add_option("--emit", gen_emit, "also write a JSON summary");

  CLI::App* validate =
      app.add_subcommand("validate", "run the fixed-seed invariant battery");
  add_report_options(validate, spec);

  CLI11_PARSE(app, argc, argv);

  try {
    if (gen->parsed()) return run_gen(spec, gen_out, gen_emit);
    if (spec.player == "greedy") spec.player = "greedy-cond";
    spec.graph_out = sparsifier_out;
    spec.kind = app.get_subcommands().front()->get_name();
    return run_and_print(spec);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
}
