#include <benchmark/benchmark.h>

#include "covcompose/rng.hpp"
#include "covcompose/spd.hpp"

namespace {

using covcompose::SpdMatrix;
using covcompose::SymMatrix;

SpdMatrix random_spd(int p, covcompose::Rng& rng) {
  Eigen::MatrixXd a(p, p);
  for (int r = 0; r < p; ++r) {
    for (int c = 0; c < p; ++c) a(r, c) = rng.uniform01() * 2.0 - 1.0;
  }
  return SpdMatrix(SymMatrix(a * a.transpose() + 0.1 * Eigen::MatrixXd::Identity(p, p)));
}

void BM_SymEigen(benchmark::State& state) {
  covcompose::Rng rng(1);
  const SpdMatrix m = random_spd(static_cast<int>(state.range(0)), rng);
  for (auto _ : state) benchmark::DoNotOptimize(covcompose::sym_eigen(m.sym()));
}
BENCHMARK(BM_SymEigen)->Arg(5)->Arg(7)->Arg(15);

void BM_Distance(benchmark::State& state) {
  covcompose::Rng rng(2);
  const auto metric = static_cast<covcompose::Metric>(state.range(0));
  const SpdMatrix a = random_spd(7, rng);
  const SpdMatrix b = random_spd(7, rng);
  for (auto _ : state) benchmark::DoNotOptimize(covcompose::distance(metric, a, b));
  state.SetLabel(std::string(covcompose::metric_name(metric)));
}
BENCHMARK(BM_Distance)->DenseRange(0, 2);

void BM_PreparedDistance(benchmark::State& state) {
  covcompose::Rng rng(3);
  const auto metric = static_cast<covcompose::Metric>(state.range(0));
  const covcompose::ReferenceDescriptor ref(metric, random_spd(7, rng));
  const SpdMatrix x = random_spd(7, rng);
  const Eigen::MatrixXd log_x = covcompose::spd_log(x).matrix();
  for (auto _ : state) benchmark::DoNotOptimize(ref.distance_to(x, log_x));
  state.SetLabel(std::string(covcompose::metric_name(metric)));
}
BENCHMARK(BM_PreparedDistance)->DenseRange(0, 2);

void BM_Regularize(benchmark::State& state) {
  covcompose::Rng rng(4);
  const SymMatrix m = random_spd(7, rng).sym();
  for (auto _ : state) benchmark::DoNotOptimize(covcompose::regularize(m));
}
BENCHMARK(BM_Regularize);

}  // namespace
