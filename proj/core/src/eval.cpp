#include <cmath>
#include <stdexcept>

#include "stereopipe/eval.hpp"

namespace stereopipe {

EvalReport eval_bad(const DisparityMap& pred, const DisparityMap& gt, double threshold,
                    const GrayImage* occ_mask) {
  if (!pred.same_shape(gt)) throw std::invalid_argument("eval: prediction and GT sizes differ");
  if (occ_mask && !occ_mask->same_shape(gt)) {
    throw std::invalid_argument("eval: occlusion mask size differs");
  }
  long long gt_valid = 0, bad = 0, nonocc = 0, bad_nonocc = 0, err_count = 0, pred_valid = 0;
  double err_sum = 0;
  for (std::size_t i = 0; i < gt.size(); ++i) {
    const float p = pred.data()[i];
    const float g = gt.data()[i];
    const bool pv = DisparityMap::is_valid(p);
    pred_valid += pv;
    if (!DisparityMap::is_valid(g)) continue;
    ++gt_valid;
    const double err = pv ? std::abs(double(p) - double(g)) : 0.0;
    const bool is_bad = !pv || err > threshold;
    bad += is_bad;
    if (pv) {
      err_sum += err;
      ++err_count;
    }
    if (occ_mask && occ_mask->data()[i] == 255) {
      ++nonocc;
      bad_nonocc += is_bad;
    }
  }
  EvalReport r;
  r.bad_threshold = threshold;
  r.gt_valid_pixels = gt_valid;
  r.bad_rate_all = gt_valid ? 100.0 * double(bad) / double(gt_valid) : 0.0;
  if (occ_mask) r.bad_rate_nonocc = nonocc ? 100.0 * double(bad_nonocc) / double(nonocc) : 0.0;
  r.avg_abs_err = err_count ? err_sum / double(err_count) : 0.0;
  r.coverage = double(pred_valid) / double(pred.size());
  return r;
}

}  // namespace stereopipe
