#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "mlc/centrality.hpp"
#include "mlc/graph.hpp"
#include "mlc/matfun.hpp"
#include "mlc/params.hpp"

namespace {

mlc::Graph erdos_renyi(std::size_t n, double p) {
  std::mt19937_64 rng(5);
  std::bernoulli_distribution keep(p);
  std::vector<mlc::Edge> edges;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      if (keep(rng)) edges.emplace_back(i, j);
  return mlc::Graph(n, std::move(edges));
}

void BM_KrylovTotal(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const mlc::Graph g = erdos_renyi(n, 8.0 / static_cast<double>(n));
  const double rho = mlc::graph_stats(g).rho;
  const mlc::MLParams p{0.5, 1.0, 0.5 * mlc::mu(0.5, rho).mu};
  const mlc::Vector ones(n, 1.0);
  for (auto _ : state) benchmark::DoNotOptimize(mlc::ml_action_krylov(g.adjacency(), ones, p, 200, 1e-10));
}
BENCHMARK(BM_KrylovTotal)->Arg(500)->Arg(2000)->Unit(benchmark::kMillisecond);

void BM_SubgraphCentrality(benchmark::State& state) {
  const mlc::Graph g = erdos_renyi(static_cast<std::size_t>(state.range(0)), 0.05);
  const double rho = mlc::graph_stats(g).rho;
  const mlc::MLParams p{0.75, 1.0, 0.5 * mlc::mu(0.75, rho).mu};
  for (auto _ : state) benchmark::DoNotOptimize(mlc::ml_subgraph_centrality(g, p).scores);
}
BENCHMARK(BM_SubgraphCentrality)->Arg(100)->Arg(300)->Unit(benchmark::kMillisecond);

void BM_SmallSweep(benchmark::State& state) {
  const mlc::Graph g = erdos_renyi(200, 0.05);
  const std::vector<double> alphas{0.0, 0.25, 0.5, 0.75, 1.0};
  const std::vector<double> gammas{0.01, 0.05, 0.1, 0.2};
  mlc::SweepOptions opts;
  opts.threads = 1;
  for (auto _ : state) {
    auto grid = mlc::sweep_grid(g, alphas, gammas, mlc::Baseline::Degree, mlc::SweepMeasure::Total, opts);
    benchmark::DoNotOptimize(grid);
  }
}
BENCHMARK(BM_SmallSweep)->Unit(benchmark::kMillisecond);

}  // namespace
