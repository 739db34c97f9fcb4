#pragma once

#include "stereopipe/types.hpp"

namespace stereopipe {

/// BT.601 luma, round half up: (299 R + 587 G + 114 B + 500) / 1000.
std::uint8_t luma(Rgb px) noexcept;

GrayImage to_gray(const RgbImage& rgb);

/// Mean-pool downscale. Output is floor(w/K) x floor(h/K); each output pixel is
/// the rounded mean of the (2m+1)^2 source pixels centered at (K x, K y), with
/// source coordinates clamped to the border. Throws if the output would be empty.
GrayImage mean_pool_downscale(const GrayImage& img, int k_scale, int m_pool, int threads = 1);

}  // namespace stereopipe
