#pragma once

#include <cstdint>

#include "stereopipe/types.hpp"

namespace stereopipe {

struct SyntheticPair {
  GrayImage left, right;
  DisparityMap truth;  // left-base; INVALID where the match leaves the right view
};

/// Random block texture (uniform 0-255 per `block` x `block` cell) with the
/// right view equal to the left view shifted by `shift` columns:
/// right(x, y) = left(x + shift, y). Columns with no source get fresh texture.
SyntheticPair make_shifted_pair(int width, int height, int shift, std::uint32_t seed,
                                int block = 1);

/// Uniform random image.
GrayImage make_random_image(int width, int height, std::uint32_t seed);

}  // namespace stereopipe
