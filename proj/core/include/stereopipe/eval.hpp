#pragma once

#include <optional>

#include "stereopipe/pipeline.hpp"
#include "stereopipe/types.hpp"

namespace stereopipe {

struct EvalReport {
  double bad_threshold = 2.0;
  double bad_rate_all = 0;                  // percent of GT-valid pixels
  std::optional<double> bad_rate_nonocc;    // percent of GT-valid, non-occluded pixels
  double avg_abs_err = 0;                   // over GT-valid pixels with a valid prediction
  double coverage = 0;                      // fraction of pixels with a valid prediction
  long long gt_valid_pixels = 0;
};

/// Bad-N error rate. A pixel is bad when GT is valid and the prediction is
/// INVALID or off by more than `threshold`. The optional mask follows the
/// Middlebury convention: 255 marks non-occluded pixels.
EvalReport eval_bad(const DisparityMap& pred, const DisparityMap& gt, double threshold = 2.0,
                    const GrayImage* occ_mask = nullptr);

struct BenchReport {
  int width = 0;   // original resolution
  int height = 0;
  int d_max = 0;   // original-resolution maximum disparity
  int repetitions = 0;
  StageTimes stage_ms;  // per-stage medians
  double overall_ms = 0;
  double fps = 0;
  double mde_per_s = 0;
};

/// width * height * d_max * fps / 1e6
double mde_per_second(int width, int height, int d_max, double fps);

/// Runs the pipeline `repetitions` times and reports per-stage medians.
BenchReport bench_pipeline(const GrayImage& left, const GrayImage& right, const Params& params,
                           int repetitions, int threads = 1);

}  // namespace stereopipe
