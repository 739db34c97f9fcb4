#pragma once

#include <vector>

#include "stereopipe/params.hpp"
#include "stereopipe/pipeline.hpp"
#include "stereopipe/types.hpp"

// Reference implementation of the whole pipeline as plain scalar loops:
// full cost volumes, right-base costs evaluated directly instead of reused,
// aggregation and argmin by exhaustive loops, single-threaded. It shares the
// policies of the main pipeline (border cost, tie-breaks, rounding, summation
// order) and none of its code, so any disagreement points at an optimization
// bug rather than a policy difference.
namespace stereopipe::oracle {

struct OracleResult {
  PipelineTrace trace;
  std::vector<CostSlice> cost_left, cost_right;
  std::vector<CostSlice> ca_x_left, ca_x_right;
  std::vector<CostSlice> ca_left, ca_right;
  const DisparityMap& disparity() const noexcept { return trace.final_map; }
};

OracleResult run(const GrayImage& left, const GrayImage& right, const Params& params);

/// Right-base cost evaluated directly: AD(R(x,y), L(x+d,y)) + MC(R(x,y), L(x+d,y)).
CostSlice cost_right_direct(const GrayImage& left, const GrayImage& right,
                            const CensusMap& census_left, const CensusMap& census_right, int d,
                            const Params& params);

CensusMap census(const GrayImage& img, const CensusPattern& offsets);

}  // namespace stereopipe::oracle
