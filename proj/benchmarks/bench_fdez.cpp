#include <benchmark/benchmark.h>

#include <Eigen/Core>

#include "fdez/arma2d.hpp"
#include "fdez/fde.hpp"
#include "fdez/gof.hpp"
#include "fdez/permu.hpp"
#include "fdez/wishart.hpp"

using namespace fdez;

namespace {

Eigen::MatrixXd kernel33() {
  Eigen::MatrixXd b(3, 3);
  b << 1.0, 0.42, -0.17, 0.63, -0.55, 0.08, -0.31, 0.27, 0.9;
  return b;
}

void BM_ForEachPremap(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  for (auto _ : state) {
    std::uint64_t count = 0;
    permu::for_each_premap(n, [&](const permu::Premap&) { ++count; });
    benchmark::DoNotOptimize(count);
  }
  state.SetItemsProcessed(state.iterations() * permu::premap_count(n));
}
BENCHMARK(BM_ForEachPremap)->DenseRange(2, 6);

void BM_GenusExpansion(benchmark::State& state) {
  const int r = static_cast<int>(state.range(0)), l = static_cast<int>(state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(fde::genus_expansion(r, l));
}
BENCHMARK(BM_GenusExpansion)->Args({1, 4})->Args({2, 1})->Args({2, 2});

void BM_FdeVariance(benchmark::State& state) {
  const MomentVector m(std::vector<double>{1.1, 1.9, 3.7, 7.9});
  const auto method = state.range(0) ? fde::Method::enumerative : fde::Method::closed_form;
  for (auto _ : state) benchmark::DoNotOptimize(fde::fde_variance(2, 2.0, m, method));
}
BENCHMARK(BM_FdeVariance)->Arg(0)->Arg(1);

void BM_ModelStatistics(benchmark::State& state) {
  const int s = static_cast<int>(state.range(0));
  const arma2d::MAKernel b(kernel33());
  const arma2d::DataShape shape{s, s, 16};
  for (auto _ : state) benchmark::DoNotOptimize(gof::model_statistics(b, shape));
}
BENCHMARK(BM_ModelStatistics)->Arg(8)->Arg(16)->Arg(32)->Unit(benchmark::kMillisecond);

void BM_SampleMaData(benchmark::State& state) {
  const int s = static_cast<int>(state.range(0));
  const arma2d::MAKernel b(kernel33());
  const arma2d::DataShape shape{s, s, 16};
  wishart::RngStream rng(1, 0);
  for (auto _ : state) benchmark::DoNotOptimize(arma2d::sample_ma_data(b, shape, rng));
}
BENCHMARK(BM_SampleMaData)->Arg(16)->Arg(32)->Unit(benchmark::kMicrosecond);

void BM_WishartSample(benchmark::State& state) {
  const int d = static_cast<int>(state.range(0));
  const wishart::CompoundWishartParam theta(d / 2, Eigen::MatrixXd::Identity(d, d));
  wishart::RngStream rng(1, 0);
  for (auto _ : state) benchmark::DoNotOptimize(wishart::sample(theta, rng));
}
BENCHMARK(BM_WishartSample)->Arg(16)->Arg(64)->Arg(256)->Unit(benchmark::kMicrosecond);

void BM_ArmaToMa(benchmark::State& state) {
  Eigen::MatrixXd a(2, 2);
  a << 1.0, -0.3, -0.3, 0.1;
  const arma2d::ARMAKernelPair pair(a, kernel33());
  for (auto _ : state) benchmark::DoNotOptimize(arma2d::arma_to_ma(pair));
}
BENCHMARK(BM_ArmaToMa);

}  // namespace

BENCHMARK_MAIN();
