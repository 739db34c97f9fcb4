#include "stereopipe/cost.hpp"

#include <cmath>
#include <cstdlib>
#include <stdexcept>

namespace stereopipe {

CensusMap mini_census(const GrayImage& img, const CensusPattern& offsets, int threads) {
  const int w = img.width();
  const int h = img.height();
  CensusMap out(w, h);
#pragma omp parallel for num_threads(threads) schedule(static)
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const auto center = img(x, y);
      std::uint8_t code = 0;
      for (std::size_t i = 0; i < offsets.size(); ++i) {
        const auto nb = img(clamp_coord(x + offsets[i].dx, w), clamp_coord(y + offsets[i].dy, h));
        if (nb < center) code = static_cast<std::uint8_t>(code | (1u << i));
      }
      out(x, y) = code;
    }
  }
  return out;
}

double cost_ad(int l, int r, double lambda_ad) noexcept {
  return 1.0 - std::exp(-(std::abs(l - r) / 255.0) / lambda_ad);
}

double cost_mc(int hd, double lambda_mc) noexcept {
  return 1.0 - std::exp(-hd / lambda_mc);
}

CostTables::CostTables(double lambda_ad, double lambda_mc) {
  for (int i = 0; i < 256; ++i) ad_[i] = cost_ad(i, 0, lambda_ad);
  for (int i = 0; i < 7; ++i) mc_[i] = cost_mc(i, lambda_mc);
}

CostSlice cost_slice_left(const GrayImage& left, const GrayImage& right,
                          const CensusMap& census_left, const CensusMap& census_right, int d,
                          const Params& params, int threads) {
  return cost_slice_left(left, right, census_left, census_right, d,
                         CostTables(params.lambda_ad, params.lambda_mc), threads);
}

CostSlice cost_slice_left(const GrayImage& left, const GrayImage& right,
                          const CensusMap& census_left, const CensusMap& census_right, int d,
                          const CostTables& tables, int threads) {
  const int w = left.width();
  const int h = left.height();
  if (!right.same_shape(left) || !census_left.same_shape(left) || !census_right.same_shape(left)) {
    throw std::invalid_argument("cost_slice_left: input dimensions differ");
  }
  if (d < 0) throw std::invalid_argument("cost_slice_left: negative disparity");

  CostSlice out(w, h, d, kBorderCost);
#pragma omp parallel for num_threads(threads) schedule(static)
  for (int y = 0; y < h; ++y) {
    const auto l = left.row(y);
    const auto r = right.row(y);
    const auto cl = census_left.row(y);
    const auto cr = census_right.row(y);
    auto dst = out.row(y);
    for (int x = d; x < w; ++x) {
      dst[x] = tables.ad(std::abs(l[x] - r[x - d])) + tables.mc(hamming6(cl[x], cr[x - d]));
    }
  }
  return out;
}

CostSlice right_cost_from_left(const CostSlice& left_slice, int threads) {
  const int w = left_slice.width();
  const int h = left_slice.height();
  const int d = left_slice.d();
  CostSlice out(w, h, d, kBorderCost);
#pragma omp parallel for num_threads(threads) schedule(static)
  for (int y = 0; y < h; ++y) {
    const auto src = left_slice.row(y);
    auto dst = out.row(y);
    for (int x = 0; x + d < w; ++x) dst[x] = src[x + d];
  }
  return out;
}

}  // namespace stereopipe
