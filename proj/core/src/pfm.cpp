#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <iterator>
#include <sstream>
#include <vector>

#include "stereopipe/io.hpp"

namespace stereopipe::io {

namespace {

std::uint32_t byteswap32(std::uint32_t v) {
  return (v >> 24) | ((v >> 8) & 0xFF00u) | ((v << 8) & 0xFF0000u) | (v << 24);
}

// Reads one whitespace-delimited header token starting at pos.
std::string token(const std::vector<char>& buf, std::size_t& pos) {
  while (pos < buf.size() && std::isspace(static_cast<unsigned char>(buf[pos]))) ++pos;
  const std::size_t start = pos;
  while (pos < buf.size() && !std::isspace(static_cast<unsigned char>(buf[pos]))) ++pos;
  return {buf.data() + start, buf.data() + pos};
}

}  // namespace

DisparityMap read_pfm(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  const std::vector<char> buf{std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
  const std::string name = path.string();

  std::size_t pos = 0;
  const auto magic = token(buf, pos);
  if (magic == "PF") throw IoError(name + ": color PFM is not a disparity map");
  if (magic != "Pf") throw IoError(name + ": malformed PFM header (magic)");
  int w = 0, h = 0;
  double scale = 0;
  try {
    std::size_t used = 0;
    auto tw = token(buf, pos);
    w = std::stoi(tw, &used);
    if (used != tw.size()) throw std::invalid_argument("w");
    auto th = token(buf, pos);
    h = std::stoi(th, &used);
    if (used != th.size()) throw std::invalid_argument("h");
    auto ts = token(buf, pos);
    scale = std::stod(ts, &used);
    if (used != ts.size()) throw std::invalid_argument("scale");
  } catch (const std::exception&) {
    throw IoError(name + ": malformed PFM header");
  }
  if (w < 1 || h < 1) throw IoError(name + ": malformed PFM header (dimensions)");
  if (scale == 0 || !std::isfinite(scale)) throw IoError(name + ": malformed PFM header (scale)");
  if (pos >= buf.size() || !std::isspace(static_cast<unsigned char>(buf[pos]))) {
    throw IoError(name + ": malformed PFM header");
  }
  ++pos;

  const std::size_t count = static_cast<std::size_t>(w) * h;
  if (buf.size() - pos < count * 4) throw IoError(name + ": truncated PFM data");
  const bool file_little = scale < 0;
  const bool swap = file_little != (std::endian::native == std::endian::little);

  DisparityMap out(w, h);
  for (int row = 0; row < h; ++row) {
    const int y = h - 1 - row;
    for (int x = 0; x < w; ++x) {
      std::uint32_t bits;
      std::memcpy(&bits, buf.data() + pos, 4);
      pos += 4;
      if (swap) bits = byteswap32(bits);
      const float v = std::bit_cast<float>(bits);
      out(x, y) = std::isfinite(v) ? v : DisparityMap::kInvalid;
    }
  }
  return out;
}

void write_pfm(const DisparityMap& d, const std::filesystem::path& path) {
  for (float v : d.data()) {
    if (std::isnan(v)) throw IoError("write_pfm: NaN disparity");
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  out << "Pf\n" << d.width() << ' ' << d.height() << "\n-1.0\n";
  const bool swap = std::endian::native != std::endian::little;
  std::vector<char> row(static_cast<std::size_t>(d.width()) * 4);
  for (int y = d.height() - 1; y >= 0; --y) {
    for (int x = 0; x < d.width(); ++x) {
      float v = d(x, y);
      if (!DisparityMap::is_valid(v)) v = std::numeric_limits<float>::infinity();
      auto bits = std::bit_cast<std::uint32_t>(v);
      if (swap) bits = byteswap32(bits);
      std::memcpy(row.data() + 4 * x, &bits, 4);
    }
    out.write(row.data(), static_cast<std::streamsize>(row.size()));
  }
  if (!out) throw IoError("write failed: " + path.string());
}

}  // namespace stereopipe::io
