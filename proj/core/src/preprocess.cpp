#include "stereopipe/preprocess.hpp"

#include <stdexcept>

namespace stereopipe {

std::uint8_t luma(Rgb px) noexcept {
  const unsigned v = 299u * px.r + 587u * px.g + 114u * px.b + 500u;
  return static_cast<std::uint8_t>(v / 1000u);
}

GrayImage to_gray(const RgbImage& rgb) {
  GrayImage out(rgb.width(), rgb.height());
  auto& dst = out.data();
  const auto& src = rgb.data();
  for (std::size_t i = 0; i < src.size(); ++i) dst[i] = luma(src[i]);
  return out;
}

GrayImage mean_pool_downscale(const GrayImage& img, int k_scale, int m_pool, int threads) {
  if (k_scale < 1) throw std::invalid_argument("k_scale must be >= 1");
  if (m_pool < 0) throw std::invalid_argument("m_pool must be >= 0");
  const int ow = img.width() / k_scale;
  const int oh = img.height() / k_scale;
  if (ow < 1 || oh < 1) {
    throw std::invalid_argument("image too small for scale factor " + std::to_string(k_scale));
  }
  const int w = img.width();
  const int h = img.height();
  const unsigned n = static_cast<unsigned>((2 * m_pool + 1) * (2 * m_pool + 1));

  GrayImage out(ow, oh);
#pragma omp parallel for num_threads(threads) schedule(static)
  for (int y = 0; y < oh; ++y) {
    for (int x = 0; x < ow; ++x) {
      unsigned sum = 0;
      for (int j = -m_pool; j <= m_pool; ++j) {
        const auto src = img.row(clamp_coord(k_scale * y + j, h));
        for (int i = -m_pool; i <= m_pool; ++i) sum += src[clamp_coord(k_scale * x + i, w)];
      }
      out(x, y) = static_cast<std::uint8_t>((sum + n / 2) / n);
    }
  }
  return out;
}

}  // namespace stereopipe
