#include <benchmark/benchmark.h>

#include <random>

#include "mlc/dense_matrix.hpp"
#include "mlc/matfun.hpp"
#include "mlc/mlkernel.hpp"

namespace {

void BM_MlScalar(benchmark::State& state, double alpha, double z) {
  for (auto _ : state) benchmark::DoNotOptimize(mlc::ml_scalar(z, alpha, 1.0));
}
BENCHMARK_CAPTURE(BM_MlScalar, series_pos, 0.5, 3.0);
BENCHMARK_CAPTURE(BM_MlScalar, large_pos, 0.3, 80.0);
BENCHMARK_CAPTURE(BM_MlScalar, negative, 0.7, -25.0);
BENCHMARK_CAPTURE(BM_MlScalar, exponential, 1.0, 5.0);

mlc::DenseMatrix random_symmetric(std::size_t n) {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  mlc::DenseMatrix a(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) a(i, j) = a(j, i) = u(rng);
  return a;
}

void BM_SymmetricSpectrum(benchmark::State& state) {
  const auto a = random_symmetric(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    mlc::SymmetricSpectrum s(a);
    benchmark::DoNotOptimize(s.values());
  }
}
BENCHMARK(BM_SymmetricSpectrum)->Arg(32)->Arg(128)->Arg(256)->Unit(benchmark::kMillisecond);

}  // namespace
