#include "stereopipe/match.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace stereopipe {

WtaAccumulator::WtaAccumulator(int width, int height)
    : best_cost_(width, height, std::numeric_limits<double>::infinity()),
      best_d_(width, height, 0) {}

void WtaAccumulator::update(const CostSlice& aggregated, int threads) {
  if (!aggregated.same_shape(best_cost_)) {
    throw std::invalid_argument("wta: slice dimensions disagree");
  }
  const int d = aggregated.d();
  const auto& src = aggregated.data();
  auto& cost = best_cost_.data();
  auto& disp = best_d_.data();
  const auto n = static_cast<std::ptrdiff_t>(src.size());
  const bool first = seen_ == 0;
#pragma omp parallel for num_threads(threads) schedule(static)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    if (first || src[i] < cost[i] || (src[i] == cost[i] && d < disp[i])) {
      cost[i] = src[i];
      disp[i] = d;
    }
  }
  ++seen_;
}

DisparityMap WtaAccumulator::result() const {
  if (seen_ == 0) throw std::logic_error("wta: no cost slices");
  DisparityMap out(best_d_.width(), best_d_.height());
  auto& dst = out.data();
  const auto& src = best_d_.data();
  for (std::size_t i = 0; i < src.size(); ++i) dst[i] = static_cast<float>(src[i]);
  return out;
}

DisparityMap wta_select(std::span<const CostSlice> slices) {
  if (slices.empty()) throw std::invalid_argument("wta: at least one slice required");
  WtaAccumulator acc(slices.front().width(), slices.front().height());
  for (const auto& s : slices) acc.update(s);
  return acc.result();
}

GcpMask cross_check(const DisparityMap& dl, const DisparityMap& dr, double tolerance,
                    int threads) {
  if (!dl.same_shape(dr)) throw std::invalid_argument("cross_check: dimensions differ");
  const int w = dl.width();
  const int h = dl.height();
  GcpMask mask(w, h, 0);
#pragma omp parallel for num_threads(threads) schedule(static)
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const float k = dl(x, y);
      if (!DisparityMap::is_valid(k) || k < 0) continue;
      const int xr = x - static_cast<int>(std::lround(k));
      if (xr < 0) continue;
      const float kr = dr(xr, y);
      if (!DisparityMap::is_valid(kr)) continue;
      const bool ok = tolerance == 0.0 ? kr == k : std::abs(double(kr) - double(k)) <= tolerance;
      mask(x, y) = ok ? 1 : 0;
    }
  }
  return mask;
}

DisparityMap apply_gcp_mask(const DisparityMap& d, const GcpMask& mask) {
  if (!d.same_shape(mask)) throw std::invalid_argument("apply_gcp_mask: dimensions differ");
  DisparityMap out(d.width(), d.height());
  for (std::size_t i = 0; i < d.size(); ++i) {
    out.data()[i] = mask.data()[i] ? d.data()[i] : DisparityMap::kInvalid;
  }
  return out;
}

}  // namespace stereopipe
