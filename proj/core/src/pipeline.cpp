#include "stereopipe/pipeline.hpp"

#include <chrono>
#include <cstdlib>
#include <stdexcept>
#include <thread>

#include "stereopipe/aggregate.hpp"
#include "stereopipe/cost.hpp"
#include "stereopipe/match.hpp"
#include "stereopipe/preprocess.hpp"
#include "stereopipe/refine.hpp"
#include "stereopipe/rescale.hpp"

namespace stereopipe {

namespace {

using Clock = std::chrono::steady_clock;

class StageTimer {
 public:
  explicit StageTimer(double& sink) : sink_(sink), start_(Clock::now()) {}
  ~StageTimer() {
    sink_ += std::chrono::duration<double, std::milli>(Clock::now() - start_).count();
  }
  StageTimer(const StageTimer&) = delete;
  StageTimer& operator=(const StageTimer&) = delete;

 private:
  double& sink_;
  Clock::time_point start_;
};

}  // namespace

int default_thread_count() {
  if (const char* env = std::getenv("STEREOPIPE_THREADS")) {
    const int n = std::atoi(env);
    if (n > 0) return n;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw ? static_cast<int>(hw) : 1;
}

PipelineResult run_pipeline(const GrayImage& left_org, const GrayImage& right_org,
                            const Params& params, const PipelineOptions& options) {
  validate(params);
  if (!left_org.same_shape(right_org)) {
    throw std::invalid_argument("left and right images differ in size");
  }
  const int threads = options.threads > 0 ? options.threads : 1;
  const auto t0 = Clock::now();

  PipelineResult result;
  auto& tr = result.trace;
  auto& times = result.times;

  // Step 1
  {
    StageTimer t(times.scale_down);
    if (params.downscale) {
      tr.left = mean_pool_downscale(left_org, params.k_scale, params.m_pool, threads);
      tr.right = mean_pool_downscale(right_org, params.k_scale, params.m_pool, threads);
    } else {
      tr.left = left_org;
      tr.right = right_org;
    }
  }
  const int w = tr.left.width();
  const int h = tr.left.height();
  const int num_disp = scaled_max_disparity(params);

  // Step 2
  {
    StageTimer t(times.arms_x);
    tr.arms_x_left = arms_horizontal(tr.left, params.delta_arm, params.w_x, threads);
    tr.arms_x_right = arms_horizontal(tr.right, params.delta_arm, params.w_x, threads);
  }
  // Step 4 runs ahead of the disparity loop so that steps 3 and 5 can stream.
  {
    StageTimer t(times.arms_y);
    tr.arms_y_left = arms_vertical(tr.left, params.delta_arm, params.w_y, threads);
    tr.arms_y_right = arms_vertical(tr.right, params.delta_arm, params.w_y, threads);
  }

  // Steps 3 and 5, one disparity at a time.
  {
    const CostTables tables(params.lambda_ad, params.lambda_mc);
    {
      StageTimer t(times.cost_ca_x);
      tr.census_left = mini_census(tr.left, params.census_offsets, threads);
      tr.census_right = mini_census(tr.right, params.census_offsets, threads);
    }
    WtaAccumulator wta_left(w, h);
    WtaAccumulator wta_right(w, h);
    for (int d = 0; d < num_disp; ++d) {
      CostSlice cost_left, cost_right, ca_x_left, ca_x_right;
      {
        StageTimer t(times.cost_ca_x);
        cost_left = cost_slice_left(tr.left, tr.right, tr.census_left, tr.census_right, d,
                                    tables, threads);
        cost_right = right_cost_from_left(cost_left, threads);
        ca_x_left = aggregate_x(cost_left, tr.arms_x_left, threads);
        ca_x_right = aggregate_x(cost_right, tr.arms_x_right, threads);
      }
      CostSlice ca_left, ca_right;
      {
        StageTimer t(times.ca_y_wta);
        ca_left = aggregate_y(ca_x_left, tr.arms_y_left, threads);
        ca_right = aggregate_y(ca_x_right, tr.arms_y_right, threads);
        wta_left.update(ca_left, threads);
        wta_right.update(ca_right, threads);
      }
      if (options.on_slice) {
        options.on_slice(
            SliceSet{cost_left, cost_right, ca_x_left, ca_x_right, ca_left, ca_right});
      }
    }
    StageTimer t(times.ca_y_wta);
    tr.wta_left = wta_left.result();
    tr.wta_right = wta_right.result();
  }

  // Step 6
  {
    StageTimer t(times.cross_check);
    tr.gcp = cross_check(tr.wta_left, tr.wta_right, params.cc_tolerance, threads);
    tr.masked = apply_gcp_mask(tr.wta_left, tr.gcp);
  }

  // Step 7
  {
    StageTimer t(times.post);
    tr.median = median3x3(tr.masked, threads);
    tr.filled = fill_non_gcps(tr.median, tr.left, params.fill, params.t_fill, threads);
  }

  // Step 8
  {
    StageTimer t(times.scale_up);
    tr.final_map = params.downscale ? scale_up(tr.filled, left_org, params, threads) : tr.filled;
  }

  times.overall = std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
  return result;
}

}  // namespace stereopipe
