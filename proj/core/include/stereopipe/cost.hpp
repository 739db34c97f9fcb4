#pragma once

#include <array>
#include <bit>

#include "stereopipe/params.hpp"
#include "stereopipe/types.hpp"

namespace stereopipe {

/// Cost assigned where the candidate pixel falls outside the other view. It is
/// the supremum of the per-pixel cost range, so border disparities never win.
inline constexpr double kBorderCost = 2.0;

/// Bit i is set iff the neighbor at offsets[i] (border-clamped) is strictly
/// darker than the center.
CensusMap mini_census(const GrayImage& img, const CensusPattern& offsets, int threads = 1);

inline int hamming6(std::uint8_t a, std::uint8_t b) noexcept {
  return std::popcount(static_cast<unsigned>((a ^ b) & 0x3Fu));
}

/// 1 - exp(-(|l - r| / 255) / lambda_ad)
double cost_ad(int l, int r, double lambda_ad) noexcept;

/// 1 - exp(-hd / lambda_mc)
double cost_mc(int hd, double lambda_mc) noexcept;

/// Precomputed cost_ad over |l - r| in 0..255 and cost_mc over hd in 0..6.
/// Entries are produced by cost_ad / cost_mc, so lookups are bit-identical.
class CostTables {
 public:
  CostTables(double lambda_ad, double lambda_mc);
  double ad(int abs_diff) const noexcept { return ad_[abs_diff]; }
  double mc(int hd) const noexcept { return mc_[hd]; }

 private:
  std::array<double, 256> ad_{};
  std::array<double, 7> mc_{};
};

/// Left-base cost for disparity d: C(x,y) = AD(L(x,y), R(x-d,y)) + MC(...);
/// kBorderCost where x - d < 0.
CostSlice cost_slice_left(const GrayImage& left, const GrayImage& right,
                          const CensusMap& census_left, const CensusMap& census_right, int d,
                          const Params& params, int threads = 1);

/// Same, with precomputed tables.
CostSlice cost_slice_left(const GrayImage& left, const GrayImage& right,
                          const CensusMap& census_left, const CensusMap& census_right, int d,
                          const CostTables& tables, int threads = 1);

/// Right-base slice by reuse: C^R(x,y,d) = C^L(x+d,y,d); kBorderCost where
/// x + d >= width.
CostSlice right_cost_from_left(const CostSlice& left_slice, int threads = 1);

}  // namespace stereopipe
