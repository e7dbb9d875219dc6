#include <benchmark/benchmark.h>

#include <cmath>

#include "covcompose/evolution.hpp"
#include "covcompose/saliency.hpp"

namespace {

using namespace covcompose;

// Smooth gradients with a bright disc; the two images differ everywhere.
RgbImage pattern(int size, int phase) {
  RgbImage img(size, size);
  for (int r = 0; r < size; ++r) {
    for (int c = 0; c < size; ++c) {
      const double d = std::hypot(r - size * 0.4 - phase, c - size * 0.6);
      const auto v = static_cast<std::uint8_t>((r * 7 + c * 3 + phase * 40) % 200);
      img.at(r, c) = d < size * 0.2 ? Rgb{250, static_cast<std::uint8_t>(200 - phase), v}
                                    : Rgb{v, static_cast<std::uint8_t>(phase * 50 + 3), static_cast<std::uint8_t>(255 - v)};
    }
  }
  return img;
}

FitnessContext make_context(int size, Metric metric) {
  const RgbImage s = pattern(size, 0);
  const RgbImage t = pattern(size, 1);
  const RegionGrid grid(size, size, 20);
  return FitnessContext(s, t, FeatureSpec::set1(), 20, metric,
                        saliency_weights(grid, image_signature_saliency(s), image_signature_saliency(t)));
}

void BM_Saliency(benchmark::State& state) {
  const RgbImage img = pattern(static_cast<int>(state.range(0)), 0);
  for (auto _ : state) benchmark::DoNotOptimize(image_signature_saliency(img));
}
BENCHMARK(BM_Saliency)->Arg(128)->Arg(256)->Unit(benchmark::kMillisecond);

void BM_EvaluateFull(benchmark::State& state) {
  const FitnessContext ctx = make_context(static_cast<int>(state.range(0)), Metric::LogEuclidean);
  Individual ind = make_individual(ctx, Source::S);
  for (auto _ : state) benchmark::DoNotOptimize(evaluate_full(ind, ctx));
}
BENCHMARK(BM_EvaluateFull)->Arg(128)->Arg(256)->Unit(benchmark::kMillisecond);

void BM_WalkMutation(benchmark::State& state) {
  const FitnessContext ctx = make_context(128, Metric::LogEuclidean);
  const Individual parent = make_individual(ctx, Source::S);
  Rng rng(1);
  for (auto _ : state) {
    benchmark::DoNotOptimize(random_walk_mutation(parent, Source::T, state.range(0), rng, ctx));
  }
}
BENCHMARK(BM_WalkMutation)->Arg(50)->Arg(500)->Arg(5000)->Unit(benchmark::kMicrosecond);

void BM_RunGa(benchmark::State& state) {
  const FitnessContext ctx = make_context(128, static_cast<Metric>(state.range(0)));
  GaConfig cfg;
  cfg.generations = 200;
  for (auto _ : state) benchmark::DoNotOptimize(run_ga(ctx, cfg));
  state.SetLabel(std::string(metric_name(ctx.metric())) + ", 200 iterations");
}
BENCHMARK(BM_RunGa)->DenseRange(0, 2)->Unit(benchmark::kMillisecond);

}  // namespace
