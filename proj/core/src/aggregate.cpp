#include "stereopipe/aggregate.hpp"

#include <algorithm>
#include <cstdlib>
#include <stdexcept>

namespace stereopipe {

namespace {

// Consecutive samples base[k*stride], k = 1..limit, within delta of base[0].
int run_length(const std::uint8_t* base, std::ptrdiff_t stride, int limit, int delta) {
  const int c = base[0];
  int n = 0;
  while (n < limit && std::abs(base[(n + 1) * stride] - c) < delta) ++n;
  return n;
}

void check_arms(const CostSlice& slice, const ArmTable& arms) {
  if (!arms.minus.same_shape(slice) || !arms.plus.same_shape(slice)) {
    throw std::invalid_argument("arm table and cost slice dimensions differ");
  }
}

}  // namespace

ArmTable arms_horizontal(const GrayImage& img, int delta_arm, int w_x, int threads) {
  if (w_x < 0) throw std::invalid_argument("w_x must be >= 0");
  const int w = img.width();
  const int h = img.height();
  ArmTable arms(w, h);
#pragma omp parallel for num_threads(threads) schedule(static)
  for (int y = 0; y < h; ++y) {
    const std::uint8_t* row = img.row(y).data();
    for (int x = 0; x < w; ++x) {
      arms.plus(x, y) = run_length(row + x, +1, std::min(w_x, w - 1 - x), delta_arm);
      arms.minus(x, y) = run_length(row + x, -1, std::min(w_x, x), delta_arm);
    }
  }
  return arms;
}

ArmTable arms_vertical(const GrayImage& img, int delta_arm, int w_y, int threads) {
  if (w_y < 0) throw std::invalid_argument("w_y must be >= 0");
  const int w = img.width();
  const int h = img.height();
  ArmTable arms(w, h);
  const std::ptrdiff_t stride = w;
#pragma omp parallel for num_threads(threads) schedule(static)
  for (int y = 0; y < h; ++y) {
    const std::uint8_t* row = img.row(y).data();
    for (int x = 0; x < w; ++x) {
      arms.plus(x, y) = run_length(row + x, stride, std::min(w_y, h - 1 - y), delta_arm);
      arms.minus(x, y) = run_length(row + x, -stride, std::min(w_y, y), delta_arm);
    }
  }
  return arms;
}

CostSlice aggregate_x(const CostSlice& slice, const ArmTable& arms, int threads) {
  check_arms(slice, arms);
  const int w = slice.width();
  const int h = slice.height();
  CostSlice out(w, h, slice.d());
#pragma omp parallel for num_threads(threads) schedule(static)
  for (int y = 0; y < h; ++y) {
    const auto src = slice.row(y);
    const auto plus = arms.plus.row(y);
    const auto minus = arms.minus.row(y);
    auto dst = out.row(y);
    for (int x = 0; x < w; ++x) {
      double acc = src[x];
      for (int dx = 1; dx <= plus[x]; ++dx) acc += src[x + dx];
      for (int dx = 1; dx <= minus[x]; ++dx) acc += src[x - dx];
      dst[x] = acc;
    }
  }
  return out;
}

CostSlice aggregate_y(const CostSlice& x_slice, const ArmTable& arms, int threads) {
  check_arms(x_slice, arms);
  const int w = x_slice.width();
  const int h = x_slice.height();
  CostSlice out(w, h, x_slice.d());
  const double* src = x_slice.data().data();
  const std::ptrdiff_t stride = w;
#pragma omp parallel for num_threads(threads) schedule(static)
  for (int y = 0; y < h; ++y) {
    const auto plus = arms.plus.row(y);
    const auto minus = arms.minus.row(y);
    auto dst = out.row(y);
    for (int x = 0; x < w; ++x) {
      const double* c = src + y * stride + x;
      double acc = *c;
      for (int dy = 1; dy <= plus[x]; ++dy) acc += c[dy * stride];
      for (int dy = 1; dy <= minus[x]; ++dy) acc += c[-dy * stride];
      dst[x] = acc;
    }
  }
  return out;
}

}  // namespace stereopipe
