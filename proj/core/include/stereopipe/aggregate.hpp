#pragma once

#include "stereopipe/types.hpp"

namespace stereopipe {

/// Horizontal arms: plus(x,y) is the largest n <= min(w_x, width-1-x) such that
/// |img(x+dx,y) - img(x,y)| < delta for every dx in 1..n; minus is symmetric.
ArmTable arms_horizontal(const GrayImage& img, int delta_arm, int w_x, int threads = 1);

/// Vertical arms, same rule along y with cap w_y.
ArmTable arms_vertical(const GrayImage& img, int delta_arm, int w_y, int threads = 1);

// Both passes sum center first, then +1..plus, then -1..-minus. The order is
// part of the contract: results are bit-reproducible across implementations.

/// out(x,y) = sum of slice(x+dx, y) for dx in [-minus, +plus].
CostSlice aggregate_x(const CostSlice& slice, const ArmTable& arms, int threads = 1);

/// out(x,y) = sum of slice(x, y+dy) for dy in [-minus, +plus].
CostSlice aggregate_y(const CostSlice& x_slice, const ArmTable& arms, int threads = 1);

}  // namespace stereopipe
