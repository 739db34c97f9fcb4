#include <algorithm>
#include <stdexcept>
#include <vector>

#include "stereopipe/eval.hpp"

namespace stereopipe {

namespace {

double median_of(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const auto n = v.size();
  return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

}  // namespace

double mde_per_second(int width, int height, int d_max, double fps) {
  return static_cast<double>(width) * height * d_max * fps / 1e6;
}

BenchReport bench_pipeline(const GrayImage& left, const GrayImage& right, const Params& params,
                           int repetitions, int threads) {
  if (repetitions < 1) throw std::invalid_argument("bench: repetitions must be >= 1");
  std::vector<StageTimes> runs;
  PipelineOptions opts;
  opts.threads = threads;
  for (int i = 0; i < repetitions; ++i) runs.push_back(run_pipeline(left, right, params, opts).times);

  auto med = [&](double StageTimes::*field) {
    std::vector<double> v;
    for (const auto& r : runs) v.push_back(r.*field);
    return median_of(std::move(v));
  };

  BenchReport rep;
  rep.width = left.width();
  rep.height = left.height();
  rep.d_max = params.d_max_org;
  rep.repetitions = repetitions;
  rep.stage_ms.scale_down = med(&StageTimes::scale_down);
  rep.stage_ms.arms_x = med(&StageTimes::arms_x);
  rep.stage_ms.cost_ca_x = med(&StageTimes::cost_ca_x);
  rep.stage_ms.arms_y = med(&StageTimes::arms_y);
  rep.stage_ms.ca_y_wta = med(&StageTimes::ca_y_wta);
  rep.stage_ms.cross_check = med(&StageTimes::cross_check);
  rep.stage_ms.post = med(&StageTimes::post);
  rep.stage_ms.scale_up = med(&StageTimes::scale_up);
  rep.stage_ms.overall = med(&StageTimes::overall);
  rep.overall_ms = rep.stage_ms.overall;
  rep.fps = rep.overall_ms > 0 ? 1000.0 / rep.overall_ms : 0.0;
  rep.mde_per_s = mde_per_second(rep.width, rep.height, rep.d_max, rep.fps);
  return rep;
}

}  // namespace stereopipe
