#include "stereopipe/refine.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdlib>
#include <stdexcept>

namespace stereopipe {

namespace {

float fill_value(float left, int i, float right, int j, int base_center, int base_left,
                 int base_right, FillStrategy strategy, double t_fill) {
  switch (strategy) {
    case FillStrategy::kNearest:
      return i <= j ? left : right;
    case FillStrategy::kSmaller:
      return std::min(left, right);
    case FillStrategy::kBilateral:
    case FillStrategy::kPaperEq11: {
      const double dl = left;
      const double dr = right;
      if (std::abs(dl - dr) <= t_fill) {
        const double step = strategy == FillStrategy::kBilateral ? (dr - dl) / (i + j)
                                                                 : (dl - dr) / (i + j);
        return static_cast<float>(dl + i * step);
      }
      return std::abs(base_left - base_center) <= std::abs(base_right - base_center) ? left
                                                                                     : right;
    }
  }
  return left;
}

}  // namespace

DisparityMap median3x3(const DisparityMap& d, int threads) {
  const int w = d.width();
  const int h = d.height();
  DisparityMap out(w, h);
#pragma omp parallel for num_threads(threads) schedule(static)
  for (int y = 0; y < h; ++y) {
    std::array<float, 9> vals;
    for (int x = 0; x < w; ++x) {
      if (!d.valid(x, y)) continue;
      int n = 0;
      for (int dy = -1; dy <= 1; ++dy) {
        for (int dx = -1; dx <= 1; ++dx) {
          const float v = d(clamp_coord(x + dx, w), clamp_coord(y + dy, h));
          if (DisparityMap::is_valid(v)) vals[n++] = v;
        }
      }
      std::sort(vals.begin(), vals.begin() + n);
      out(x, y) = vals[(n - 1) / 2];
    }
  }
  return out;
}

void fill_row(std::span<const float> in, std::span<const std::uint8_t> base, std::span<float> out,
              FillStrategy strategy, double t_fill) {
  const int w = static_cast<int>(in.size());
  const bool needs_base =
      strategy == FillStrategy::kBilateral || strategy == FillStrategy::kPaperEq11;
  if (out.size() != in.size() || (needs_base && base.size() != in.size())) {
    throw std::invalid_argument("fill_row: row lengths differ");
  }
  int last_valid = -1;
  for (int x = 0; x < w; ++x) {
    if (DisparityMap::is_valid(in[x])) {
      out[x] = in[x];
      last_valid = x;
      continue;
    }
    int next_valid = x + 1;
    while (next_valid < w && !DisparityMap::is_valid(in[next_valid])) ++next_valid;
    // Fill the whole gap [x, next_valid) at once.
    for (int g = x; g < next_valid && g < w; ++g) {
      if (last_valid < 0 && next_valid >= w) {
        out[g] = DisparityMap::kInvalid;
      } else if (last_valid < 0) {
        out[g] = in[next_valid];
      } else if (next_valid >= w) {
        out[g] = in[last_valid];
      } else {
        const int i = g - last_valid;
        const int j = next_valid - g;
        out[g] = needs_base ? fill_value(in[last_valid], i, in[next_valid], j, base[g],
                                         base[last_valid], base[next_valid], strategy, t_fill)
                            : fill_value(in[last_valid], i, in[next_valid], j, 0, 0, 0, strategy,
                                         t_fill);
      }
    }
    x = next_valid - 1;
  }
}

void fill_remaining_in_scan_order(DisparityMap& d) {
  auto& data = d.data();
  const auto first = std::find_if(data.begin(), data.end(), DisparityMap::is_valid);
  if (first == data.end()) return;
  float carry = *first;
  for (auto& v : data) {
    if (DisparityMap::is_valid(v)) carry = v;
    else v = carry;
  }
}

DisparityMap fill_non_gcps(const DisparityMap& d, const GrayImage& base, FillStrategy strategy,
                           double t_fill, int threads) {
  const bool needs_base =
      strategy == FillStrategy::kBilateral || strategy == FillStrategy::kPaperEq11;
  if (needs_base && !base.same_shape(d)) {
    throw std::invalid_argument("fill: disparity map and base image dimensions differ");
  }
  const int h = d.height();
  DisparityMap out(d.width(), h);
#pragma omp parallel for num_threads(threads) schedule(static)
  for (int y = 0; y < h; ++y) {
    fill_row(d.row(y), needs_base ? base.row(y) : std::span<const std::uint8_t>{}, out.row(y),
             strategy, t_fill);
  }
  fill_remaining_in_scan_order(out);
  return out;
}

DisparityMap fill_bilateral(const DisparityMap& d, const GrayImage& base, double t_fill,
                            bool printed_sign, int threads) {
  return fill_non_gcps(d, base,
                       printed_sign ? FillStrategy::kPaperEq11 : FillStrategy::kBilateral, t_fill,
                       threads);
}

DisparityMap fill_nearest(const DisparityMap& d, int threads) {
  return fill_non_gcps(d, GrayImage{}, FillStrategy::kNearest, 0.0, threads);
}

DisparityMap fill_smaller(const DisparityMap& d, int threads) {
  return fill_non_gcps(d, GrayImage{}, FillStrategy::kSmaller, 0.0, threads);
}

}  // namespace stereopipe
