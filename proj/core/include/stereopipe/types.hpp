#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace stereopipe {

/// Row-major 2-D grid. Dimensions are fixed at construction and are always >= 1.
template <typename T>
class Grid {
 public:
  using value_type = T;

  Grid() = default;
  Grid(int width, int height, T fill = T{}) : width_(width), height_(height) {
    check_dims(width, height);
    data_.assign(static_cast<std::size_t>(width) * height, fill);
  }
  Grid(int width, int height, std::vector<T> data)
      : width_(width), height_(height), data_(std::move(data)) {
    check_dims(width, height);
    if (data_.size() != static_cast<std::size_t>(width) * height) {
      throw std::invalid_argument("grid data length must equal width*height");
    }
  }

  int width() const noexcept { return width_; }
  int height() const noexcept { return height_; }
  std::size_t size() const noexcept { return data_.size(); }
  bool empty() const noexcept { return data_.empty(); }

  T& operator()(int x, int y) noexcept { return data_[index(x, y)]; }
  const T& operator()(int x, int y) const noexcept { return data_[index(x, y)]; }

  std::span<T> row(int y) noexcept {
    return {data_.data() + static_cast<std::size_t>(y) * width_, static_cast<std::size_t>(width_)};
  }
  std::span<const T> row(int y) const noexcept {
    return {data_.data() + static_cast<std::size_t>(y) * width_, static_cast<std::size_t>(width_)};
  }

  std::vector<T>& data() noexcept { return data_; }
  const std::vector<T>& data() const noexcept { return data_; }

  bool same_shape(int w, int h) const noexcept { return width_ == w && height_ == h; }
  template <typename U>
  bool same_shape(const Grid<U>& other) const noexcept {
    return width_ == other.width() && height_ == other.height();
  }

  friend bool operator==(const Grid& a, const Grid& b) {
    return a.width_ == b.width_ && a.height_ == b.height_ && a.data_ == b.data_;
  }

 private:
  static void check_dims(int w, int h) {
    if (w < 1 || h < 1) throw std::invalid_argument("grid dimensions must be >= 1");
  }
  std::size_t index(int x, int y) const noexcept {
    return static_cast<std::size_t>(y) * width_ + x;
  }

  int width_ = 0;
  int height_ = 0;
  std::vector<T> data_;
};

inline int clamp_coord(int v, int size) noexcept {
  return v < 0 ? 0 : (v >= size ? size - 1 : v);
}

/// 8-bit brightness image; the working representation of both views.
class GrayImage : public Grid<std::uint8_t> {
 public:
  using Grid::Grid;
};

struct Rgb {
  std::uint8_t r = 0, g = 0, b = 0;
  friend bool operator==(const Rgb&, const Rgb&) = default;
};

class RgbImage : public Grid<Rgb> {
 public:
  using Grid::Grid;
};

/// Matching costs for a single disparity d.
class CostSlice : public Grid<double> {
 public:
  CostSlice() = default;
  CostSlice(int width, int height, int d, double fill = 0.0) : Grid(width, height, fill), d_(d) {}
  CostSlice(int width, int height, int d, std::vector<double> data)
      : Grid(width, height, std::move(data)), d_(d) {}

  int d() const noexcept { return d_; }
  void set_d(int d) noexcept { d_ = d; }

  friend bool operator==(const CostSlice& a, const CostSlice& b) {
    return a.d_ == b.d_ && static_cast<const Grid&>(a) == static_cast<const Grid&>(b);
  }

 private:
  int d_ = 0;
};

/// 6-bit mini-census codes.
class CensusMap : public Grid<std::uint8_t> {
 public:
  using Grid::Grid;
};

/// Similar-brightness run lengths toward decreasing (minus) and increasing
/// (plus) coordinate along one axis.
struct ArmTable {
  Grid<std::int32_t> minus;
  Grid<std::int32_t> plus;

  ArmTable() = default;
  ArmTable(int width, int height) : minus(width, height, 0), plus(width, height, 0) {}

  int width() const noexcept { return minus.width(); }
  int height() const noexcept { return minus.height(); }

  friend bool operator==(const ArmTable&, const ArmTable&) = default;
};

/// Disparities with a distinguished INVALID sentinel (+inf, which is also the
/// Middlebury PFM encoding of "unknown").
class DisparityMap : public Grid<float> {
 public:
  static constexpr float kInvalid = std::numeric_limits<float>::infinity();

  DisparityMap() = default;
  DisparityMap(int width, int height, float fill = kInvalid) : Grid(width, height, fill) {}
  DisparityMap(int width, int height, std::vector<float> data)
      : Grid(width, height, std::move(data)) {}

  static bool is_valid(float v) noexcept { return std::isfinite(v); }
  bool valid(int x, int y) const noexcept { return is_valid((*this)(x, y)); }
};

/// Ground-control-point mask (1 = GCP).
class GcpMask : public Grid<std::uint8_t> {
 public:
  using Grid::Grid;
};

}  // namespace stereopipe
