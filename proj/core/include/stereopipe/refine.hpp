#pragma once

#include <span>

#include "stereopipe/params.hpp"
#include "stereopipe/types.hpp"

namespace stereopipe {

/// 3x3 median over valid, border-clamped neighbors. INVALID pixels stay INVALID
/// and do not contribute; even counts take the lower middle value.
DisparityMap median3x3(const DisparityMap& d, int threads = 1);

/// Fills the INVALID entries of one row from the nearest valid entries on each
/// side, reading only `in` (fills never feed later fills). `base` is the
/// brightness row used by the edge test of the bilateral strategies and may be
/// empty for kNearest / kSmaller. Entries with no valid value on either side
/// are left INVALID.
void fill_row(std::span<const float> in, std::span<const std::uint8_t> base, std::span<float> out,
              FillStrategy strategy, double t_fill);

/// Pixels still INVALID take the most recent valid value in raster order, or
/// the first valid value when none precedes them. No-op on an all-INVALID map.
void fill_remaining_in_scan_order(DisparityMap& d);

/// Bilateral fill: continuous flanks (|D_l - D_r| <= T) are interpolated
/// linearly, edges copy the flank whose brightness is closer to the target
/// (ties to the left). `printed_sign` selects D_l + i (D_l - D_r) / (i + j).
DisparityMap fill_bilateral(const DisparityMap& d, const GrayImage& base, double t_fill,
                            bool printed_sign = false, int threads = 1);

/// Copies the closer flanking GCP, ties to the left.
DisparityMap fill_nearest(const DisparityMap& d, int threads = 1);

/// Copies the smaller flanking disparity.
DisparityMap fill_smaller(const DisparityMap& d, int threads = 1);

/// Dispatches on the strategy.
DisparityMap fill_non_gcps(const DisparityMap& d, const GrayImage& base, FillStrategy strategy,
                           double t_fill, int threads = 1);

}  // namespace stereopipe
