#include "stereopipe/rescale.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "stereopipe/refine.hpp"

namespace stereopipe {

DisparityMap scale_up(const DisparityMap& d, const GrayImage& base_org, int k_scale,
                      double t_fill, FillStrategy strategy, int threads) {
  if (k_scale < 1) throw std::invalid_argument("k_scale must be >= 1");
  const int w = d.width();
  const int h = d.height();
  const int wo = base_org.width();
  const int ho = base_org.height();
  if (wo / k_scale != w || ho / k_scale != h) {
    throw std::invalid_argument("scale_up: original size " + std::to_string(wo) + "x" +
                                std::to_string(ho) + " is not " + std::to_string(k_scale) +
                                "x the scaled size " + std::to_string(w) + "x" +
                                std::to_string(h));
  }
  const float scale = static_cast<float>(k_scale);
  const double threshold = k_scale * t_fill;
  DisparityMap out(wo, ho);

#pragma omp parallel for num_threads(threads) schedule(static)
  for (int ys = 0; ys < h; ++ys) {
    std::vector<float> seeded(static_cast<std::size_t>(wo), DisparityMap::kInvalid);
    for (int x = 0; x < w; ++x) {
      const float v = d(x, ys);
      if (DisparityMap::is_valid(v)) seeded[static_cast<std::size_t>(k_scale) * x] = v * scale;
    }
    const int y = k_scale * ys;
    fill_row(seeded, base_org.row(y), out.row(y), strategy, threshold);
  }

  const int last_seeded = k_scale * (h - 1);
#pragma omp parallel for num_threads(threads) schedule(static)
  for (int y = 0; y < ho; ++y) {
    if (y % k_scale == 0 && y <= last_seeded) continue;
    const int ya = y <= last_seeded ? k_scale * (y / k_scale) : last_seeded;
    auto dst = out.row(y);
    const auto above = out.row(ya);
    if (y > last_seeded) {
      std::copy(above.begin(), above.end(), dst.begin());
      continue;
    }
    const auto below = out.row(ya + k_scale);
    const int off = y - ya;
    for (int x = 0; x < wo; ++x) {
      const bool va = DisparityMap::is_valid(above[x]);
      const bool vb = DisparityMap::is_valid(below[x]);
      if (va && vb) {
        const double a = above[x];
        const double b = below[x];
        dst[x] = static_cast<float>(a + off * ((b - a) / k_scale));
      } else if (va) {
        dst[x] = above[x];
      } else if (vb) {
        dst[x] = below[x];
      }
    }
  }
  return out;
}

DisparityMap scale_up(const DisparityMap& d, const GrayImage& base_org, const Params& params,
                      int threads) {
  return scale_up(d, base_org, params.k_scale, params.t_fill, params.fill, threads);
}

double disparity_to_depth(double disparity, double focal_px, double baseline_m) {
  if (!(focal_px > 0) || !(baseline_m > 0) || !(disparity >= 0)) {
    throw std::invalid_argument("disparity_to_depth requires f > 0, B > 0, d >= 0");
  }
  if (disparity == 0) return std::numeric_limits<double>::infinity();
  return focal_px * baseline_m / disparity;
}

}  // namespace stereopipe
