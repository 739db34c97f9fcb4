#include "stereopipe/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace stereopipe::oracle {

namespace {

// Shared with the main pipeline by policy, restated here on purpose.
constexpr double kBorder = 2.0;

int clampi(int v, int lo, int hi) { return v < lo ? lo : (v > hi ? hi : v); }

bool is_valid(float v) { return std::isfinite(v); }

GrayImage downscale(const GrayImage& img, int k, int m) {
  const int ow = img.width() / k;
  const int oh = img.height() / k;
  if (ow < 1 || oh < 1) throw std::invalid_argument("image too small for scale factor");
  GrayImage out(ow, oh);
  const double n = (2.0 * m + 1) * (2.0 * m + 1);
  for (int y = 0; y < oh; ++y) {
    for (int x = 0; x < ow; ++x) {
      double sum = 0;
      for (int j = -m; j <= m; ++j) {
        for (int i = -m; i <= m; ++i) {
          sum += img(clampi(k * x + i, 0, img.width() - 1), clampi(k * y + j, 0, img.height() - 1));
        }
      }
      out(x, y) = static_cast<std::uint8_t>(std::floor(sum / n + 0.5));
    }
  }
  return out;
}

int popcount6(unsigned v) {
  int n = 0;
  for (int b = 0; b < 6; ++b) n += (v >> b) & 1u;
  return n;
}

double pixel_cost(int a, int b, unsigned ca, unsigned cb, const Params& p) {
  const int diff = a > b ? a - b : b - a;
  const double ad = 1.0 - std::exp(-(diff / 255.0) / p.lambda_ad);
  const int hd = popcount6(ca ^ cb);
  const double mc = 1.0 - std::exp(-hd / p.lambda_mc);
  return ad + mc;
}

ArmTable arms(const GrayImage& img, int delta, int cap, bool horizontal) {
  const int w = img.width();
  const int h = img.height();
  ArmTable t(w, h);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      const int c = img(x, y);
      for (int dir : {+1, -1}) {
        int n = 0;
        for (int step = 1; step <= cap; ++step) {
          const int xx = horizontal ? x + dir * step : x;
          const int yy = horizontal ? y : y + dir * step;
          if (xx < 0 || xx >= w || yy < 0 || yy >= h) break;
          const int v = img(xx, yy);
          if (!((v > c ? v - c : c - v) < delta)) break;
          n = step;
        }
        (dir > 0 ? t.plus : t.minus)(x, y) = n;
      }
    }
  }
  return t;
}

CostSlice aggregate(const CostSlice& s, const ArmTable& a, bool horizontal) {
  CostSlice out(s.width(), s.height(), s.d());
  for (int y = 0; y < s.height(); ++y) {
    for (int x = 0; x < s.width(); ++x) {
      double acc = s(x, y);
      for (int k = 1; k <= a.plus(x, y); ++k) acc += horizontal ? s(x + k, y) : s(x, y + k);
      for (int k = 1; k <= a.minus(x, y); ++k) acc += horizontal ? s(x - k, y) : s(x, y - k);
      out(x, y) = acc;
    }
  }
  return out;
}

DisparityMap argmin(const std::vector<CostSlice>& volume) {
  const int w = volume.front().width();
  const int h = volume.front().height();
  DisparityMap out(w, h);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      int best = 0;
      for (int d = 1; d < static_cast<int>(volume.size()); ++d) {
        if (volume[d](x, y) < volume[best](x, y)) best = d;
      }
      out(x, y) = static_cast<float>(best);
    }
  }
  return out;
}

GcpMask cross(const DisparityMap& dl, const DisparityMap& dr, double tol) {
  GcpMask m(dl.width(), dl.height(), 0);
  for (int y = 0; y < dl.height(); ++y) {
    for (int x = 0; x < dl.width(); ++x) {
      const float k = dl(x, y);
      if (!is_valid(k)) continue;
      const int xr = x - static_cast<int>(std::lround(k));
      if (xr < 0 || !is_valid(dr(xr, y))) continue;
      const double diff = std::abs(static_cast<double>(dr(xr, y)) - k);
      m(x, y) = (tol == 0.0 ? dr(xr, y) == k : diff <= tol) ? 1 : 0;
    }
  }
  return m;
}

DisparityMap median(const DisparityMap& d) {
  DisparityMap out(d.width(), d.height());
  for (int y = 0; y < d.height(); ++y) {
    for (int x = 0; x < d.width(); ++x) {
      if (!is_valid(d(x, y))) continue;
      std::vector<float> v;
      for (int dy = -1; dy <= 1; ++dy) {
        for (int dx = -1; dx <= 1; ++dx) {
          const float s = d(clampi(x + dx, 0, d.width() - 1), clampi(y + dy, 0, d.height() - 1));
          if (is_valid(s)) v.push_back(s);
        }
      }
      std::sort(v.begin(), v.end());
      out(x, y) = v[(v.size() - 1) / 2];
    }
  }
  return out;
}

// Value for an unknown sample at `x` of `row` given the brightness row.
float fill_one(const std::vector<float>& row, const std::vector<int>& bright, int x,
               FillStrategy strategy, double t) {
  const int w = static_cast<int>(row.size());
  int l = x - 1;
  while (l >= 0 && !is_valid(row[l])) --l;
  int r = x + 1;
  while (r < w && !is_valid(row[r])) ++r;
  const bool has_l = l >= 0;
  const bool has_r = r < w;
  if (!has_l && !has_r) return DisparityMap::kInvalid;
  if (!has_r) return row[l];
  if (!has_l) return row[r];
  const int i = x - l;
  const int j = r - x;
  const float a = row[l];
  const float b = row[r];
  if (strategy == FillStrategy::kNearest) return i <= j ? a : b;
  if (strategy == FillStrategy::kSmaller) return a < b ? a : b;
  const double da = a;
  const double db = b;
  if (std::abs(da - db) <= t) {
    if (strategy == FillStrategy::kPaperEq11) return static_cast<float>(da + i * ((da - db) / (i + j)));
    return static_cast<float>(da + i * ((db - da) / (i + j)));
  }
  const int el = std::abs(bright[l] - bright[x]);
  const int er = std::abs(bright[r] - bright[x]);
  return el <= er ? a : b;
}

std::vector<float> fill_line(const std::vector<float>& row, const std::vector<int>& bright,
                             FillStrategy strategy, double t) {
  std::vector<float> out(row.size());
  for (int x = 0; x < static_cast<int>(row.size()); ++x) {
    out[x] = is_valid(row[x]) ? row[x] : fill_one(row, bright, x, strategy, t);
  }
  return out;
}

std::vector<int> brightness_row(const GrayImage& img, int y) {
  std::vector<int> b(img.width());
  for (int x = 0; x < img.width(); ++x) b[x] = img(x, y);
  return b;
}

DisparityMap fill(const DisparityMap& d, const GrayImage& base, FillStrategy strategy, double t) {
  DisparityMap out(d.width(), d.height());
  const bool uses_base = strategy == FillStrategy::kBilateral || strategy == FillStrategy::kPaperEq11;
  for (int y = 0; y < d.height(); ++y) {
    std::vector<float> row(d.width());
    for (int x = 0; x < d.width(); ++x) row[x] = d(x, y);
    const auto bright = uses_base ? brightness_row(base, y) : std::vector<int>(d.width(), 0);
    const auto filled = fill_line(row, bright, strategy, t);
    for (int x = 0; x < d.width(); ++x) out(x, y) = filled[x];
  }
  // Raster-order carry for rows that had nothing to fill from.
  float carry = DisparityMap::kInvalid;
  for (int y = 0; y < out.height() && !is_valid(carry); ++y) {
    for (int x = 0; x < out.width(); ++x) {
      if (is_valid(out(x, y))) {
        carry = out(x, y);
        break;
      }
    }
  }
  if (!is_valid(carry)) return out;
  for (int y = 0; y < out.height(); ++y) {
    for (int x = 0; x < out.width(); ++x) {
      if (is_valid(out(x, y))) carry = out(x, y);
      else out(x, y) = carry;
    }
  }
  return out;
}

DisparityMap upscale(const DisparityMap& d, const GrayImage& org, const Params& p) {
  const int k = p.k_scale;
  if (org.width() / k != d.width() || org.height() / k != d.height()) {
    throw std::invalid_argument("upscale: dimension relation violated");
  }
  DisparityMap out(org.width(), org.height());
  for (int ys = 0; ys < d.height(); ++ys) {
    std::vector<float> row(org.width(), DisparityMap::kInvalid);
    for (int xs = 0; xs < d.width(); ++xs) {
      if (is_valid(d(xs, ys))) row[k * xs] = d(xs, ys) * static_cast<float>(k);
    }
    const auto filled = fill_line(row, brightness_row(org, k * ys), p.fill, k * p.t_fill);
    for (int x = 0; x < org.width(); ++x) out(x, k * ys) = filled[x];
  }
  const int last = k * (d.height() - 1);
  for (int y = 0; y < org.height(); ++y) {
    if (y % k == 0 && y <= last) continue;
    for (int x = 0; x < org.width(); ++x) {
      if (y > last) {
        out(x, y) = out(x, last);
        continue;
      }
      const int ya = (y / k) * k;
      const float a = out(x, ya);
      const float b = out(x, ya + k);
      if (is_valid(a) && is_valid(b)) {
        const double da = a;
        const double db = b;
        out(x, y) = static_cast<float>(da + (y - ya) * ((db - da) / k));
      } else if (is_valid(a)) {
        out(x, y) = a;
      } else if (is_valid(b)) {
        out(x, y) = b;
      }
    }
  }
  return out;
}

}  // namespace

CensusMap census(const GrayImage& img, const CensusPattern& offsets) {
  CensusMap out(img.width(), img.height());
  for (int y = 0; y < img.height(); ++y) {
    for (int x = 0; x < img.width(); ++x) {
      unsigned code = 0;
      for (int i = 0; i < 6; ++i) {
        const int xx = clampi(x + offsets[i].dx, 0, img.width() - 1);
        const int yy = clampi(y + offsets[i].dy, 0, img.height() - 1);
        if (img(xx, yy) < img(x, y)) code += 1u << i;
      }
      out(x, y) = static_cast<std::uint8_t>(code);
    }
  }
  return out;
}

CostSlice cost_right_direct(const GrayImage& left, const GrayImage& right,
                            const CensusMap& census_left, const CensusMap& census_right, int d,
                            const Params& params) {
  CostSlice s(left.width(), left.height(), d);
  for (int y = 0; y < left.height(); ++y) {
    for (int x = 0; x < left.width(); ++x) {
      s(x, y) = x + d >= left.width()
                    ? kBorder
                    : pixel_cost(right(x, y), left(x + d, y), census_right(x, y),
                                 census_left(x + d, y), params);
    }
  }
  return s;
}

OracleResult run(const GrayImage& left_org, const GrayImage& right_org, const Params& p) {
  validate(p);
  if (!left_org.same_shape(right_org)) throw std::invalid_argument("image sizes differ");

  OracleResult res;
  auto& tr = res.trace;
  if (p.downscale) {
    tr.left = downscale(left_org, p.k_scale, p.m_pool);
    tr.right = downscale(right_org, p.k_scale, p.m_pool);
  } else {
    tr.left = left_org;
    tr.right = right_org;
  }
  const int w = tr.left.width();
  const int h = tr.left.height();
  const int num_disp = p.downscale ? (p.d_max_org + p.k_scale - 1) / p.k_scale : p.d_max_org;

  tr.census_left = census(tr.left, p.census_offsets);
  tr.census_right = census(tr.right, p.census_offsets);
  tr.arms_x_left = arms(tr.left, p.delta_arm, p.w_x, true);
  tr.arms_x_right = arms(tr.right, p.delta_arm, p.w_x, true);
  tr.arms_y_left = arms(tr.left, p.delta_arm, p.w_y, false);
  tr.arms_y_right = arms(tr.right, p.delta_arm, p.w_y, false);

  for (int d = 0; d < num_disp; ++d) {
    CostSlice cl(w, h, d);
    for (int y = 0; y < h; ++y) {
      for (int x = 0; x < w; ++x) {
        cl(x, y) = x - d < 0 ? kBorder
                             : pixel_cost(tr.left(x, y), tr.right(x - d, y), tr.census_left(x, y),
                                          tr.census_right(x - d, y), p);
      }
    }
    res.cost_left.push_back(std::move(cl));
    res.cost_right.push_back(
        cost_right_direct(tr.left, tr.right, tr.census_left, tr.census_right, d, p));
    res.ca_x_left.push_back(aggregate(res.cost_left.back(), tr.arms_x_left, true));
    res.ca_x_right.push_back(aggregate(res.cost_right.back(), tr.arms_x_right, true));
    res.ca_left.push_back(aggregate(res.ca_x_left.back(), tr.arms_y_left, false));
    res.ca_right.push_back(aggregate(res.ca_x_right.back(), tr.arms_y_right, false));
  }

  tr.wta_left = argmin(res.ca_left);
  tr.wta_right = argmin(res.ca_right);
  tr.gcp = cross(tr.wta_left, tr.wta_right, p.cc_tolerance);
  tr.masked = DisparityMap(w, h);
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      if (tr.gcp(x, y)) tr.masked(x, y) = tr.wta_left(x, y);
    }
  }
  tr.median = median(tr.masked);
  tr.filled = fill(tr.median, tr.left, p.fill, p.t_fill);
  tr.final_map = p.downscale ? upscale(tr.filled, left_org, p) : tr.filled;
  return res;
}

}  // namespace stereopipe::oracle
