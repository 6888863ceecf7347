// Microbenchmarks for the hot paths: dense eigensolves, exact root
// isolation, game rounds, graph generation with girth repair, and the full
// sparsification pipeline at desk scale.

#include <benchmark/benchmark.h>

#include <vector>

#include "specsparse/certificates.hpp"
#include "specsparse/game.hpp"
#include "specsparse/generators.hpp"
#include "specsparse/graph.hpp"
#include "specsparse/poly.hpp"
#include "specsparse/sparsify.hpp"
#include "specsparse/spectral.hpp"

using namespace specsparse;

namespace {

void BM_Eig(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const SymmetricMatrix lap = laplacian(gen_complete(n));
  for (auto _ : state) {
    benchmark::DoNotOptimize(eig(lap, false));
  }
}
BENCHMARK(BM_Eig)->Arg(16)->Arg(64)->Arg(256);

void BM_RealRoots(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const RealRootedPoly poly = laguerre_poly(n, 4 * n, static_cast<double>(n));
  for (auto _ : state) {
    benchmark::DoNotOptimize(real_roots(poly));
  }
}
BENCHMARK(BM_RealRoots)->Arg(8)->Arg(32)->Arg(64);

void BM_GameRound(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const int rounds = 4 * n;
  for (auto _ : state) {
    HadamardAdversary adversary(n);
    BssPlayer player(n, rounds);
    benchmark::DoNotOptimize(play_game(adversary, player, n, rounds));
  }
  state.SetItemsProcessed(state.iterations() * rounds);
}
BENCHMARK(BM_GameRound)->Arg(8)->Arg(16)->Arg(32);

void BM_RandomRegular(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  std::uint64_t seed = 1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(gen_random_regular(n, 8, 4, seed++));
  }
}
BENCHMARK(BM_RandomRegular)->Arg(64)->Arg(256);

void BM_Sparsify(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const WeightedGraph g = gen_complete(n);
  for (auto _ : state) {
    benchmark::DoNotOptimize(sparsify(g, 8));
  }
}
BENCHMARK(BM_Sparsify)->Arg(16)->Arg(32);

void BM_AbCertificate(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  std::vector<Edge> edges = gen_random_regular(n, 8, 4, 5).edges();
  for (auto& e : edges) e.w = 1.0 / 8.0;
  const WeightedGraph g(n, edges);
  const LambdaRatio ratio = lambda_ratio(g);
  for (auto _ : state) {
    benchmark::DoNotOptimize(ab_certificate(g, 0, 1, ratio));
  }
}
BENCHMARK(BM_AbCertificate)->Arg(512);

}  // namespace

BENCHMARK_MAIN();
