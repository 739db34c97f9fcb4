#pragma once

#include "stereopipe/params.hpp"
#include "stereopipe/types.hpp"

namespace stereopipe {

/// Upscales a scaled-resolution disparity map to the size of `base_org`.
///
/// Values are multiplied by k_scale and seeded at (K x, K y). Seeded rows are
/// completed with the row fill rule of `strategy`, using original-resolution
/// brightness for the edge test and K * t_fill as the continuity threshold.
/// Remaining rows are interpolated linearly between the seeded rows above and
/// below; rows past the last seeded row copy it.
///
/// Throws std::invalid_argument unless base_org dims / K (floor) equal the
/// scaled dims.
DisparityMap scale_up(const DisparityMap& d, const GrayImage& base_org, int k_scale,
                      double t_fill, FillStrategy strategy = FillStrategy::kBilateral,
                      int threads = 1);

DisparityMap scale_up(const DisparityMap& d, const GrayImage& base_org, const Params& params,
                      int threads = 1);

/// Z = f B / d; d = 0 maps to +infinity.
double disparity_to_depth(double disparity, double focal_px, double baseline_m);

}  // namespace stereopipe
