#include <benchmark/benchmark.h>

#include "stereopipe/stereopipe.hpp"

namespace sp = stereopipe;

namespace {

// Half-size Middlebury resolution.
constexpr int kW = 718, kH = 496;

const sp::SyntheticPair& pair() {
  static const auto p = sp::make_shifted_pair(kW, kH, 20, 99u, 2);
  return p;
}

void BM_MeanPool(benchmark::State& state) {
  const auto& img = pair().left;
  for (auto _ : state) benchmark::DoNotOptimize(sp::mean_pool_downscale(img, 2, 1, 1));
}
BENCHMARK(BM_MeanPool);

void BM_Census(benchmark::State& state) {
  const auto& img = pair().left;
  for (auto _ : state) benchmark::DoNotOptimize(sp::mini_census(img, sp::kDefaultCensusPattern));
}
BENCHMARK(BM_Census);

void BM_ArmsHorizontal(benchmark::State& state) {
  const auto& img = pair().left;
  for (auto _ : state) benchmark::DoNotOptimize(sp::arms_horizontal(img, 20, 21));
}
BENCHMARK(BM_ArmsHorizontal);

void BM_ArmsVertical(benchmark::State& state) {
  const auto& img = pair().left;
  for (auto _ : state) benchmark::DoNotOptimize(sp::arms_vertical(img, 20, 31));
}
BENCHMARK(BM_ArmsVertical);

void BM_CostSlice(benchmark::State& state) {
  const auto& p = pair();
  const auto cl = sp::mini_census(p.left, sp::kDefaultCensusPattern);
  const auto cr = sp::mini_census(p.right, sp::kDefaultCensusPattern);
  const sp::Params params;
  for (auto _ : state) {
    benchmark::DoNotOptimize(sp::cost_slice_left(p.left, p.right, cl, cr, 20, params));
  }
}
BENCHMARK(BM_CostSlice);

void BM_AggregateXY(benchmark::State& state) {
  const auto& p = pair();
  const auto cl = sp::mini_census(p.left, sp::kDefaultCensusPattern);
  const auto cr = sp::mini_census(p.right, sp::kDefaultCensusPattern);
  const auto slice = sp::cost_slice_left(p.left, p.right, cl, cr, 20, sp::Params{});
  const auto ax = sp::arms_horizontal(p.left, 20, 21);
  const auto ay = sp::arms_vertical(p.left, 20, 31);
  for (auto _ : state) benchmark::DoNotOptimize(sp::aggregate_y(sp::aggregate_x(slice, ax), ay));
}
BENCHMARK(BM_AggregateXY);

void BM_FillBilateral(benchmark::State& state) {
  const auto& p = pair();
  sp::DisparityMap d(kW, kH);
  for (int y = 0; y < kH; ++y)
    for (int x = 0; x < kW; x += 3) d(x, y) = static_cast<float>((x + y) % 30);
  for (auto _ : state) benchmark::DoNotOptimize(sp::fill_bilateral(d, p.left, 3.0));
}
BENCHMARK(BM_FillBilateral);

void BM_Pipeline(benchmark::State& state) {
  const auto& p = pair();
  sp::Params params;
  params.d_max_org = 72;
  sp::PipelineOptions opts;
  opts.threads = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(sp::run_pipeline(p.left, p.right, params, opts));
}
BENCHMARK(BM_Pipeline)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
