#include <png.h>

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <iterator>
#include <vector>

#include "stereopipe/io.hpp"
#include "stereopipe/preprocess.hpp"

namespace stereopipe::io {

namespace {

std::vector<unsigned char> slurp(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

class PnmReader {
 public:
  PnmReader(const std::vector<unsigned char>& buf, std::string name)
      : buf_(buf), name_(std::move(name)) {}

  int next_int() {
    skip_space_and_comments();
    if (pos_ >= buf_.size() || !std::isdigit(buf_[pos_])) {
      throw IoError(name_ + ": malformed PNM header");
    }
    long v = 0;
    while (pos_ < buf_.size() && std::isdigit(buf_[pos_])) {
      v = v * 10 + (buf_[pos_++] - '0');
      if (v > (1 << 24)) throw IoError(name_ + ": PNM value out of range");
    }
    return static_cast<int>(v);
  }

  // Exactly one whitespace byte separates the header from binary data.
  void end_header() {
    if (pos_ >= buf_.size() || !std::isspace(buf_[pos_])) {
      throw IoError(name_ + ": malformed PNM header");
    }
    ++pos_;
  }

  const unsigned char* binary(std::size_t n) {
    if (buf_.size() - pos_ < n) throw IoError(name_ + ": truncated PNM data");
    const auto* p = buf_.data() + pos_;
    pos_ += n;
    return p;
  }

  void seek(std::size_t p) { pos_ = p; }

 private:
  void skip_space_and_comments() {
    while (pos_ < buf_.size()) {
      if (std::isspace(buf_[pos_])) {
        ++pos_;
      } else if (buf_[pos_] == '#') {
        while (pos_ < buf_.size() && buf_[pos_] != '\n') ++pos_;
      } else {
        break;
      }
    }
  }

  const std::vector<unsigned char>& buf_;
  std::string name_;
  std::size_t pos_ = 0;
};

std::uint8_t rescale(int v, int maxval) {
  if (maxval == 255) return static_cast<std::uint8_t>(v);
  return static_cast<std::uint8_t>((v * 255 + maxval / 2) / maxval);
}

DecodedImage decode_pnm(const std::vector<unsigned char>& buf, const std::string& name) {
  const char kind = static_cast<char>(buf[1]);
  PnmReader rd(buf, name);
  rd.seek(2);
  const int w = rd.next_int();
  const int h = rd.next_int();
  const int maxval = rd.next_int();
  if (w < 1 || h < 1) throw IoError(name + ": empty image");
  if (maxval < 1) throw IoError(name + ": invalid maxval");
  if (maxval > 255) throw IoError(name + ": unsupported bit depth");
  const bool color = kind == '3' || kind == '6';
  const bool ascii = kind == '2' || kind == '3';
  const std::size_t channels = color ? 3 : 1;
  const std::size_t count = static_cast<std::size_t>(w) * h * channels;

  std::vector<std::uint8_t> samples(count);
  if (ascii) {
    for (auto& s : samples) {
      const int v = rd.next_int();
      if (v > maxval) throw IoError(name + ": sample exceeds maxval");
      s = rescale(v, maxval);
    }
  } else {
    rd.end_header();
    const auto* p = rd.binary(count);
    for (std::size_t i = 0; i < count; ++i) {
      if (p[i] > maxval) throw IoError(name + ": sample exceeds maxval");
      samples[i] = rescale(p[i], maxval);
    }
  }

  DecodedImage out;
  out.is_rgb = color;
  if (color) {
    out.rgb = RgbImage(w, h);
    for (std::size_t i = 0; i < out.rgb.size(); ++i) {
      out.rgb.data()[i] = {samples[3 * i], samples[3 * i + 1], samples[3 * i + 2]};
    }
  } else {
    out.gray = GrayImage(w, h, std::move(samples));
  }
  return out;
}

DecodedImage decode_png(const std::filesystem::path& path) {
  png_image image{};
  image.version = PNG_IMAGE_VERSION;
  if (!png_image_begin_read_from_file(&image, path.c_str())) {
    throw IoError(path.string() + ": " + image.message);
  }
  if (image.format & PNG_FORMAT_FLAG_LINEAR) {
    png_image_free(&image);
    throw IoError(path.string() + ": unsupported bit depth");
  }
  const bool color = image.format & PNG_FORMAT_FLAG_COLOR;
  image.format = color ? PNG_FORMAT_RGB : PNG_FORMAT_GRAY;
  std::vector<png_byte> px(PNG_IMAGE_SIZE(image));
  if (!png_image_finish_read(&image, nullptr, px.data(), 0, nullptr)) {
    const std::string msg = image.message;
    png_image_free(&image);
    throw IoError(path.string() + ": " + msg);
  }
  const int w = static_cast<int>(image.width);
  const int h = static_cast<int>(image.height);
  DecodedImage out;
  out.is_rgb = color;
  if (color) {
    out.rgb = RgbImage(w, h);
    for (std::size_t i = 0; i < out.rgb.size(); ++i) {
      out.rgb.data()[i] = {px[3 * i], px[3 * i + 1], px[3 * i + 2]};
    }
  } else {
    out.gray = GrayImage(w, h, std::vector<std::uint8_t>(px.begin(), px.end()));
  }
  return out;
}

}  // namespace

DecodedImage decode_image(const std::filesystem::path& path) {
  const auto buf = slurp(path);
  if (buf.size() >= 8 && png_sig_cmp(buf.data(), 0, 8) == 0) return decode_png(path);
  if (buf.size() >= 2 && buf[0] == 'P' && buf[1] >= '2' && buf[1] <= '6' && buf[1] != '4') {
    return decode_pnm(buf, path.string());
  }
  throw IoError(path.string() + ": unrecognized image format");
}

GrayImage read_image(const std::filesystem::path& path) {
  auto img = decode_image(path);
  return img.is_rgb ? to_gray(img.rgb) : std::move(img.gray);
}

void write_pgm(const GrayImage& img, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  out << "P5\n" << img.width() << ' ' << img.height() << "\n255\n";
  out.write(reinterpret_cast<const char*>(img.data().data()),
            static_cast<std::streamsize>(img.size()));
  if (!out) throw IoError("write failed: " + path.string());
}

void write_ppm(const RgbImage& img, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  out << "P6\n" << img.width() << ' ' << img.height() << "\n255\n";
  for (const auto& p : img.data()) {
    const char bytes[3] = {static_cast<char>(p.r), static_cast<char>(p.g), static_cast<char>(p.b)};
    out.write(bytes, 3);
  }
  if (!out) throw IoError("write failed: " + path.string());
}

void write_png(const GrayImage& img, const std::filesystem::path& path) {
  png_image image{};
  image.version = PNG_IMAGE_VERSION;
  image.width = static_cast<png_uint_32>(img.width());
  image.height = static_cast<png_uint_32>(img.height());
  image.format = PNG_FORMAT_GRAY;
  if (!png_image_write_to_file(&image, path.c_str(), 0, img.data().data(), 0, nullptr)) {
    throw IoError(path.string() + ": " + image.message);
  }
}

GrayImage visualize(const DisparityMap& d, int d_max) {
  GrayImage out(d.width(), d.height(), 0);
  const double scale = d_max > 0 ? 255.0 / d_max : 0.0;
  for (std::size_t i = 0; i < d.size(); ++i) {
    const float v = d.data()[i];
    if (!DisparityMap::is_valid(v)) continue;
    const double g = std::floor(v * scale + 0.5);
    out.data()[i] = static_cast<std::uint8_t>(std::clamp(g, 0.0, 255.0));
  }
  return out;
}

}  // namespace stereopipe::io
