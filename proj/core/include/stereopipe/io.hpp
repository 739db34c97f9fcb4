#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>

#include "stereopipe/types.hpp"

namespace stereopipe::io {

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Decoded image; exactly one of gray / rgb is populated.
struct DecodedImage {
  bool is_rgb = false;
  GrayImage gray;
  RgbImage rgb;
};

/// PGM (P2/P5), PPM (P3/P6) and 8-bit PNG (gray, gray+alpha, RGB, RGBA,
/// palette). Throws IoError("unsupported bit depth") for 16-bit data.
DecodedImage decode_image(const std::filesystem::path& path);

/// decode_image followed by BT.601 conversion of color input.
GrayImage read_image(const std::filesystem::path& path);

void write_pgm(const GrayImage& img, const std::filesystem::path& path);
void write_ppm(const RgbImage& img, const std::filesystem::path& path);
void write_png(const GrayImage& img, const std::filesystem::path& path);

/// Single-channel PFM ("Pf"). Rows are stored bottom-up; a negative scale means
/// little-endian. Infinite values (and NaN on read) become INVALID.
DisparityMap read_pfm(const std::filesystem::path& path);

/// Writes little-endian with scale -1.0; INVALID is written as +inf. Throws
/// IoError on NaN.
void write_pfm(const DisparityMap& d, const std::filesystem::path& path);

/// 8-bit visualization: round(255 d / d_max) clamped, INVALID as 0.
GrayImage visualize(const DisparityMap& d, int d_max);

struct CalibInfo {
  int ndisp = 0;
  int width = 0;
  int height = 0;
};

/// Middlebury calib.txt (key=value lines); ndisp, width and height are required.
CalibInfo read_middlebury_calib(const std::filesystem::path& path);
CalibInfo parse_middlebury_calib(const std::string& text);

}  // namespace stereopipe::io
