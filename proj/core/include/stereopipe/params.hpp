#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>

namespace stereopipe {

struct Offset {
  int dx = 0;
  int dy = 0;
  friend bool operator==(const Offset&, const Offset&) = default;
};

using CensusPattern = std::array<Offset, 6>;

inline constexpr CensusPattern kDefaultCensusPattern{{
    {0, -2}, {-1, -1}, {+1, -1}, {-1, +1}, {+1, +1}, {0, +2}}};

/// How non-GCP pixels are filled after cross-checking.
enum class FillStrategy {
  kBilateral,  // linear interpolation when continuous, brightness-guided copy at edges
  kNearest,    // copy the closer flanking GCP
  kSmaller,    // copy the smaller flanking disparity (occlusion assumption)
  kPaperEq11,  // bilateral with the interpolation sign exactly as printed in the original formula
};

std::string_view to_string(FillStrategy s);
std::optional<FillStrategy> parse_fill_strategy(std::string_view name);

/// Parameter set shared by every pipeline stage.
struct Params {
  double lambda_ad = 0.3;  // applied to brightness normalized to [0,1]
  double lambda_mc = 2.3;  // applied to the raw Hamming distance
  double t_fill = 3.0;     // disparity-continuity threshold
  int w_x = 21;
  int w_y = 31;
  int delta_arm = 20;  // brightness similarity threshold on the 0-255 scale
  int k_scale = 2;
  int m_pool = 1;
  int d_max_org = 64;
  CensusPattern census_offsets = kDefaultCensusPattern;

  FillStrategy fill = FillStrategy::kBilateral;
  double cc_tolerance = 0.0;  // cross-check |D^R - k| allowance; 0 is the exact test
  bool downscale = true;

  friend bool operator==(const Params&, const Params&) = default;
};

/// Disparity count searched at scaled resolution: ceil(d_max_org / k_scale),
/// or d_max_org itself when downscaling is disabled.
int scaled_max_disparity(const Params& params);

/// Returns the name of the first violated invariant, or nullopt.
std::optional<std::string> check(const Params& params);

/// Throws std::invalid_argument carrying the message from check().
void validate(const Params& params);

/// key=value text, one field per line. Keys match the CLI long flags.
std::string serialize(const Params& params);

/// Applies key=value lines on top of `base`. Blank lines and '#' comments are
/// ignored; unknown keys and malformed values throw std::invalid_argument.
Params parse_params(std::string_view text, Params base = {});

/// Applies a single key/value. Returns false when the key is not a Params key.
bool apply_param(Params& params, std::string_view key, std::string_view value);

std::string format_census(const CensusPattern& pattern);
CensusPattern parse_census(std::string_view text);

}  // namespace stereopipe
