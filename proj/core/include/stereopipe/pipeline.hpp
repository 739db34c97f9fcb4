#pragma once

#include <functional>

#include "stereopipe/params.hpp"
#include "stereopipe/types.hpp"

namespace stereopipe {

/// Wall-clock milliseconds per stage. The cost-volume stages are accumulated
/// over the streamed disparity loop.
struct StageTimes {
  double scale_down = 0;  // SD
  double arms_x = 0;      // W±, edge detection along x
  double cost_ca_x = 0;   // C + CA_x
  double arms_y = 0;      // W*±, edge detection along y
  double ca_y_wta = 0;    // CA (y pass) + winner-take-all
  double cross_check = 0; // CC
  double post = 0;        // median + fill
  double scale_up = 0;    // SU
  double overall = 0;
};

/// Per-disparity intermediates handed to a SliceObserver. Valid only for the
/// duration of the callback.
struct SliceSet {
  const CostSlice& cost_left;
  const CostSlice& cost_right;
  const CostSlice& ca_x_left;
  const CostSlice& ca_x_right;
  const CostSlice& ca_left;
  const CostSlice& ca_right;
};

using SliceObserver = std::function<void(const SliceSet&)>;

struct PipelineOptions {
  int threads = 1;
  SliceObserver on_slice;  // optional, called once per d in increasing order
};

/// Stage outputs at scaled resolution (original resolution when downscaling is
/// disabled) plus the final map at original resolution.
struct PipelineTrace {
  GrayImage left, right;
  CensusMap census_left, census_right;
  ArmTable arms_x_left, arms_x_right;
  ArmTable arms_y_left, arms_y_right;
  DisparityMap wta_left, wta_right;
  GcpMask gcp;
  DisparityMap masked;
  DisparityMap median;
  DisparityMap filled;
  DisparityMap final_map;
};

struct PipelineResult {
  PipelineTrace trace;
  StageTimes times;
  const DisparityMap& disparity() const noexcept { return trace.final_map; }
};

/// Runs scale-down, arms, streamed cost / aggregation / WTA for both bases,
/// cross-check, median + fill and scale-up. Output is independent of
/// options.threads. Throws std::invalid_argument on invalid params or
/// mismatched inputs.
PipelineResult run_pipeline(const GrayImage& left, const GrayImage& right, const Params& params,
                            const PipelineOptions& options = {});

/// Default worker count: STEREOPIPE_THREADS if set and positive, else hardware
/// concurrency.
int default_thread_count();

}  // namespace stereopipe
