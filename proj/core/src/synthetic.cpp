#include "stereopipe/synthetic.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>

namespace stereopipe {

SyntheticPair make_shifted_pair(int width, int height, int shift, std::uint32_t seed, int block) {
  if (shift < 0 || block < 1) throw std::invalid_argument("shift must be >= 0, block >= 1");
  std::mt19937 rng(seed);
  std::uniform_int_distribution<int> value(0, 255);

  // Texture wide enough to cover both views.
  const int tex_w = width + shift;
  const int cells_x = (tex_w + block - 1) / block;
  const int cells_y = (height + block - 1) / block;
  Grid<std::uint8_t> cells(cells_x, cells_y);
  for (auto& c : cells.data()) c = static_cast<std::uint8_t>(value(rng));

  SyntheticPair p{GrayImage(width, height), GrayImage(width, height),
                  DisparityMap(width, height, static_cast<float>(shift))};
  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) {
      p.left(x, y) = cells(x / block, y / block);
      p.right(x, y) = cells((x + shift) / block, y / block);
    }
    for (int x = 0; x < std::min(shift, width); ++x) p.truth(x, y) = DisparityMap::kInvalid;
  }
  return p;
}

GrayImage make_random_image(int width, int height, std::uint32_t seed) {
  std::mt19937 rng(seed);
  std::uniform_int_distribution<int> value(0, 255);
  GrayImage img(width, height);
  for (auto& v : img.data()) v = static_cast<std::uint8_t>(value(rng));
  return img;
}

}  // namespace stereopipe
