#include "stereopipe/params.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace stereopipe {

namespace {

std::string_view trim(std::string_view s) {
  const auto ws = " \t\r\n";
  const auto b = s.find_first_not_of(ws);
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(ws);
  return s.substr(b, e - b + 1);
}

int to_int(std::string_view key, std::string_view v) {
  int out = 0;
  auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc{} || p != v.data() + v.size()) {
    throw std::invalid_argument("invalid integer for " + std::string(key) + ": '" +
                                std::string(v) + "'");
  }
  return out;
}

double to_double(std::string_view key, std::string_view v) {
  // from_chars for double is available in libstdc++ 11
  double out = 0;
  auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc{} || p != v.data() + v.size()) {
    throw std::invalid_argument("invalid number for " + std::string(key) + ": '" +
                                std::string(v) + "'");
  }
  return out;
}

bool to_bool(std::string_view key, std::string_view v) {
  if (v == "1" || v == "true" || v == "yes" || v == "on") return true;
  if (v == "0" || v == "false" || v == "no" || v == "off") return false;
  throw std::invalid_argument("invalid boolean for " + std::string(key) + ": '" +
                              std::string(v) + "'");
}

std::string fmt_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

std::string_view to_string(FillStrategy s) {
  switch (s) {
    case FillStrategy::kBilateral: return "bilateral";
    case FillStrategy::kNearest: return "nearest";
    case FillStrategy::kSmaller: return "smaller";
    case FillStrategy::kPaperEq11: return "paper-eq11";
  }
  return "bilateral";
}

std::optional<FillStrategy> parse_fill_strategy(std::string_view name) {
  if (name == "bilateral") return FillStrategy::kBilateral;
  if (name == "nearest") return FillStrategy::kNearest;
  if (name == "smaller") return FillStrategy::kSmaller;
  if (name == "paper-eq11") return FillStrategy::kPaperEq11;
  return std::nullopt;
}

int scaled_max_disparity(const Params& params) {
  if (!params.downscale) return params.d_max_org;
  return (params.d_max_org + params.k_scale - 1) / params.k_scale;
}

std::optional<std::string> check(const Params& p) {
  if (!(p.lambda_ad > 0) || !std::isfinite(p.lambda_ad)) return "lambda_ad must be > 0";
  if (!(p.lambda_mc > 0) || !std::isfinite(p.lambda_mc)) return "lambda_mc must be > 0";
  if (p.delta_arm <= 0) return "delta_arm must be > 0";
  if (!(p.t_fill >= 0) || !std::isfinite(p.t_fill)) return "t_fill must be >= 0";
  if (p.w_x < 0) return "w_x must be >= 0";
  if (p.w_y < 0) return "w_y must be >= 0";
  if (p.k_scale < 1) return "k_scale must be >= 1";
  if (p.m_pool < 0) return "m_pool must be >= 0";
  if (p.d_max_org < 1) return "d_max_org must be >= 1";
  if (!(p.cc_tolerance >= 0) || !std::isfinite(p.cc_tolerance)) return "cc_tolerance must be >= 0";
  for (std::size_t i = 0; i < p.census_offsets.size(); ++i) {
    const auto& o = p.census_offsets[i];
    if (o.dx == 0 && o.dy == 0) return "census_offsets must be nonzero";
    for (std::size_t j = 0; j < i; ++j) {
      if (p.census_offsets[j] == o) return "census_offsets must be distinct";
    }
  }
  return std::nullopt;
}

void validate(const Params& params) {
  if (auto err = check(params)) throw std::invalid_argument(*err);
}

std::string format_census(const CensusPattern& pattern) {
  std::string out;
  for (std::size_t i = 0; i < pattern.size(); ++i) {
    if (i) out += ';';
    out += std::to_string(pattern[i].dx) + ',' + std::to_string(pattern[i].dy);
  }
  return out;
}

CensusPattern parse_census(std::string_view text) {
  std::vector<Offset> offsets;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto end = text.find(';', pos);
    if (end == std::string_view::npos) end = text.size();
    auto item = trim(text.substr(pos, end - pos));
    if (!item.empty()) {
      const auto comma = item.find(',');
      if (comma == std::string_view::npos) {
        throw std::invalid_argument("census offset must be 'dx,dy': '" + std::string(item) + "'");
      }
      offsets.push_back({to_int("census", trim(item.substr(0, comma))),
                         to_int("census", trim(item.substr(comma + 1)))});
    }
    pos = end + 1;
  }
  if (offsets.size() != 6) {
    throw std::invalid_argument("census_offsets must have exactly 6 entries, got " +
                                std::to_string(offsets.size()));
  }
  CensusPattern out;
  for (std::size_t i = 0; i < 6; ++i) out[i] = offsets[i];
  return out;
}

bool apply_param(Params& p, std::string_view key, std::string_view value) {
  value = trim(value);
  if (key == "lambda-ad") p.lambda_ad = to_double(key, value);
  else if (key == "lambda-mc") p.lambda_mc = to_double(key, value);
  else if (key == "tfill") p.t_fill = to_double(key, value);
  else if (key == "wx") p.w_x = to_int(key, value);
  else if (key == "wy") p.w_y = to_int(key, value);
  else if (key == "delta") p.delta_arm = to_int(key, value);
  else if (key == "scale") p.k_scale = to_int(key, value);
  else if (key == "pool-radius") p.m_pool = to_int(key, value);
  else if (key == "max-disp") p.d_max_org = to_int(key, value);
  else if (key == "census") p.census_offsets = parse_census(value);
  else if (key == "cc-tolerance") p.cc_tolerance = to_double(key, value);
  else if (key == "downscale") p.downscale = to_bool(key, value);
  else if (key == "fill") {
    auto s = parse_fill_strategy(value);
    if (!s) throw std::invalid_argument("unknown fill strategy: '" + std::string(value) + "'");
    p.fill = *s;
  } else {
    return false;
  }
  return true;
}

std::string serialize(const Params& p) {
  std::ostringstream os;
  os << "lambda-ad=" << fmt_double(p.lambda_ad) << '\n'
     << "lambda-mc=" << fmt_double(p.lambda_mc) << '\n'
     << "tfill=" << fmt_double(p.t_fill) << '\n'
     << "wx=" << p.w_x << '\n'
     << "wy=" << p.w_y << '\n'
     << "delta=" << p.delta_arm << '\n'
     << "scale=" << p.k_scale << '\n'
     << "pool-radius=" << p.m_pool << '\n'
     << "max-disp=" << p.d_max_org << '\n'
     << "census=" << format_census(p.census_offsets) << '\n'
     << "fill=" << to_string(p.fill) << '\n'
     << "cc-tolerance=" << fmt_double(p.cc_tolerance) << '\n'
     << "downscale=" << (p.downscale ? "true" : "false") << '\n';
  return os.str();
}

Params parse_params(std::string_view text, Params base) {
  std::size_t pos = 0;
  int lineno = 0;
  while (pos < text.size()) {
    auto end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    ++lineno;
    auto line = text.substr(pos, end - pos);
    pos = end + 1;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw std::invalid_argument("line " + std::to_string(lineno) + ": expected key=value");
    }
    const auto key = trim(line.substr(0, eq));
    if (!apply_param(base, key, line.substr(eq + 1))) {
      throw std::invalid_argument("line " + std::to_string(lineno) + ": unknown key '" +
                                  std::string(key) + "'");
    }
  }
  return base;
}

}  // namespace stereopipe
