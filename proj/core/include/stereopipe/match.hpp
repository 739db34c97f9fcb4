#pragma once

#include <span>

#include "stereopipe/types.hpp"

namespace stereopipe {

/// Streaming winner-take-all. Slices may arrive in any order; the winner per
/// pixel is the minimum cost, ties going to the smallest d. Feeding d = 0..D-1
/// in order reduces to the running-minimum update "if cost < min".
class WtaAccumulator {
 public:
  WtaAccumulator(int width, int height);

  void update(const CostSlice& aggregated, int threads = 1);
  int slices_seen() const noexcept { return seen_; }

  /// Throws std::logic_error if no slice was fed.
  DisparityMap result() const;

 private:
  Grid<double> best_cost_;
  Grid<std::int32_t> best_d_;
  int seen_ = 0;
};

/// Argmin over slices; throws std::invalid_argument on empty input or
/// mismatched dimensions.
DisparityMap wta_select(std::span<const CostSlice> slices);

/// GCP test: k = dl(x,y) valid, x - k >= 0 and |dr(x-k,y) - k| <= tolerance
/// (tolerance 0 means exact equality).
GcpMask cross_check(const DisparityMap& dl, const DisparityMap& dr, double tolerance = 0.0,
                    int threads = 1);

/// Non-GCP pixels become INVALID.
DisparityMap apply_gcp_mask(const DisparityMap& d, const GcpMask& mask);

}  // namespace stereopipe
