#include <gtest/gtest.h>

#include <random>

#include "stereopipe/oracle.hpp"
#include "stereopipe/pipeline.hpp"
#include "stereopipe/synthetic.hpp"
#include "test_util.hpp"

namespace stereopipe {
namespace {

Params small_params(int d_max, bool downscale) {
  Params p;
  p.d_max_org = d_max;
  p.downscale = downscale;
  p.w_x = 5;
  p.w_y = 5;
  return p;
}

TEST(Oracle, IdenticalImagesGiveZeroInterior) {
  std::mt19937 rng(61);
  const auto img = testing::random_gray(24, 16, rng);
  const auto r = oracle::run(img, img, small_params(8, false));
  const auto& d = r.disparity();
  for (int y = 0; y < d.height(); ++y)
    for (int x = 0; x < d.width(); ++x) EXPECT_EQ(d(x, y), 0.0f);
}

TEST(Oracle, RecoversKnownShift) {
  const auto pair = make_shifted_pair(48, 24, 3, 7);
  const auto r = oracle::run(pair.left, pair.right, small_params(8, false));
  int exact = 0, total = 0;
  for (int y = 2; y < 22; ++y) {
    for (int x = 12; x < 44; ++x) {
      ++total;
      exact += r.disparity()(x, y) == 3.0f;
    }
  }
  EXPECT_GE(exact, total * 95 / 100);
}

TEST(Oracle, VolumesHaveOneSlicePerDisparity) {
  std::mt19937 rng(63);
  const auto l = testing::random_gray(20, 12, rng);
  const auto r = testing::random_gray(20, 12, rng);
  const auto res = oracle::run(l, r, small_params(12, true));
  EXPECT_EQ(res.cost_left.size(), 6u);
  EXPECT_EQ(res.ca_right.size(), 6u);
  EXPECT_EQ(res.cost_left[0].width(), 10);
  EXPECT_EQ(res.disparity().width(), 20);
}

TEST(Oracle, MatchesPipelineOnRandomPairs) {
  std::mt19937 rng(65);
  for (int t = 0; t < 10; ++t) {
    const int w = 16 + static_cast<int>(rng() % 30);
    const int h = 10 + static_cast<int>(rng() % 20);
    const auto l = testing::random_gray(w, h, rng);
    const auto r = testing::random_gray(w, h, rng);
    Params p = small_params(4 + static_cast<int>(rng() % 12), t % 2 == 0);
    p.delta_arm = 10 + static_cast<int>(rng() % 40);
    const auto a = oracle::run(l, r, p);
    const auto b = run_pipeline(l, r, p, PipelineOptions{2, {}});
    EXPECT_EQ(a.trace.wta_left, b.trace.wta_left);
    EXPECT_EQ(a.trace.wta_right, b.trace.wta_right);
    EXPECT_EQ(a.trace.gcp, b.trace.gcp);
    EXPECT_EQ(a.trace.filled, b.trace.filled);
    EXPECT_EQ(a.disparity(), b.disparity());
  }
}

}  // namespace
}  // namespace stereopipe
