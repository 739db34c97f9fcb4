#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "stereopipe/io.hpp"
#include "stereopipe/synthetic.hpp"
#include "test_util.hpp"

namespace stereopipe {
namespace {

struct Invocation {
  int code;
  std::string out, err;
};

Invocation invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "stereopipe");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    const auto pair = make_shifted_pair(64, 40, 4, 3, 2);
    io::write_pgm(pair.left, dir_ / "l.pgm");
    io::write_pgm(pair.right, dir_ / "r.pgm");
    io::write_pfm(pair.truth, dir_ / "gt.pfm");
  }
  std::string p(const std::string& name) const { return (dir_ / name).string(); }

  testing::TempDir dir_;
};

TEST_F(CliTest, UsageErrorsExitWithTwo) {
  EXPECT_EQ(invoke({}).code, cli::kExitUsage);
  EXPECT_EQ(invoke({"frobnicate"}).code, cli::kExitUsage);
  EXPECT_EQ(invoke({"run", "--left", p("l.pgm"), "--right", p("r.pgm")}).code, cli::kExitUsage);
  EXPECT_EQ(invoke({"run", "--left", p("l.pgm"), "--right", p("r.pgm"), "--out", p("o.pfm")}).code,
            cli::kExitUsage);
  EXPECT_EQ(invoke({"run", "--left", p("l.pgm"), "--right", p("r.pgm"), "--out", p("o.pfm"),
                    "--max-disp", "16", "--threads", "0"})
                .code,
            cli::kExitUsage);
  EXPECT_EQ(invoke({"eval", "--pred", p("gt.pfm")}).code, cli::kExitUsage);
}

TEST_F(CliTest, HelpExitsZero) {
  const auto r = invoke({"--help"});
  EXPECT_EQ(r.code, cli::kExitOk);
  EXPECT_NE(r.out.find("run"), std::string::npos);
}

TEST_F(CliTest, RuntimeErrorsExitWithOne) {
  const auto r = invoke({"run", "--left", p("missing.pgm"), "--right", p("r.pgm"), "--out",
                         p("o.pfm"), "--max-disp", "16"});
  EXPECT_EQ(r.code, cli::kExitRuntime);
  EXPECT_FALSE(r.err.empty());
}

TEST_F(CliTest, InvalidParameterIsReported) {
  const auto r = invoke({"run", "--left", p("l.pgm"), "--right", p("r.pgm"), "--out", p("o.pfm"),
                         "--max-disp", "16", "--lambda-ad", "-1"});
  EXPECT_NE(r.code, cli::kExitOk);
  EXPECT_NE(r.err.find("lambda_ad"), std::string::npos);
}

TEST_F(CliTest, RunThenEvalSelf) {
  auto r = invoke({"run", "--left", p("l.pgm"), "--right", p("r.pgm"), "--out", p("o.pfm"),
                   "--max-disp", "16", "--vis", p("o.png")});
  ASSERT_EQ(r.code, cli::kExitOk) << r.err;
  EXPECT_TRUE(std::filesystem::exists(p("o.png")));
  const auto d = io::read_pfm(p("o.pfm"));
  EXPECT_EQ(d.width(), 64);
  EXPECT_EQ(d.height(), 40);

  r = invoke({"eval", "--pred", p("o.pfm"), "--gt", p("o.pfm")});
  ASSERT_EQ(r.code, cli::kExitOk);
  EXPECT_NE(r.out.find("0.00 %"), std::string::npos);

  r = invoke({"eval", "--pred", p("o.pfm"), "--gt", p("gt.pfm"), "--json"});
  ASSERT_EQ(r.code, cli::kExitOk);
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_TRUE(j.contains("bad_rate_all"));
  EXPECT_LT(j["bad_rate_all"].get<double>(), 50.0);
}

TEST_F(CliTest, ConfigFileAndFlagPrecedence) {
  {
    std::ofstream f(p("cfg.txt"));
    f << "# comment\nmax-disp=16\nwx=9\nthreads=2\n";
  }
  auto r = invoke({"run", "--left", p("l.pgm"), "--right", p("r.pgm"), "--out", p("a.pfm"),
                   "--config", p("cfg.txt")});
  ASSERT_EQ(r.code, cli::kExitOk) << r.err;
  r = invoke({"run", "--left", p("l.pgm"), "--right", p("r.pgm"), "--out", p("b.pfm"),
              "--max-disp", "16", "--wx", "9"});
  ASSERT_EQ(r.code, cli::kExitOk) << r.err;
  EXPECT_EQ(io::read_pfm(p("a.pfm")), io::read_pfm(p("b.pfm")));
}

TEST_F(CliTest, OracleCompare) {
  const auto r = invoke({"oracle-run", "--left", p("l.pgm"), "--right", p("r.pgm"), "--out",
                         p("o.pfm"), "--max-disp", "8", "--compare"});
  ASSERT_EQ(r.code, cli::kExitOk) << r.err;
  EXPECT_NE(r.out.find("identical"), std::string::npos);
}

TEST_F(CliTest, BenchJson) {
  const auto r = invoke({"bench", "--synthetic", "48x32", "--max-disp", "8", "--reps", "2",
                         "--json"});
  ASSERT_EQ(r.code, cli::kExitOk) << r.err;
  const auto j = nlohmann::json::parse(r.out);
  EXPECT_EQ(j["width"], 48);
  EXPECT_EQ(j["d_max"], 8);
  EXPECT_GT(j["mde_per_s"].get<double>(), 0.0);
  EXPECT_TRUE(j["stage_ms"].contains("C+CA_x"));
}

TEST_F(CliTest, SweepProducesGrid) {
  const auto r = invoke({"sweep", "--left", p("l.pgm"), "--right", p("r.pgm"), "--gt", p("gt.pfm"),
                         "--max-disp", "16", "--wx-list", "3,5", "--wy-list", "3,5,7", "--csv",
                         "--csv-out", p("s.csv")});
  ASSERT_EQ(r.code, cli::kExitOk) << r.err;
  std::istringstream in(r.out);
  std::string line;
  std::vector<std::string> lines;
  while (std::getline(in, line)) lines.push_back(line);
  ASSERT_EQ(lines.size(), 3u);
  EXPECT_EQ(lines[0], "Wx\\Wy,3,5,7");
  EXPECT_EQ(std::count(lines[1].begin(), lines[1].end(), ','), 3);
  EXPECT_TRUE(std::filesystem::exists(p("s.csv")));
}

TEST(CliFormat, SweepCsv) {
  cli::SweepResult s{{5, 9}, {9, 11}, {{1.0, 2.5}, {3.25, 4.0}}};
  EXPECT_EQ(cli::format_sweep_csv(s), "Wx\\Wy,9,11\n5,1.00,2.50\n9,3.25,4.00\n");
}

TEST(CliFormat, MiddleburyDatasetLayout) {
  testing::TempDir dir;
  std::ofstream(dir / "calib.txt") << "ndisp=64\nwidth=10\nheight=10\n";
  const auto ds = cli::middlebury_dataset(dir.path());
  EXPECT_EQ(ds.left, dir / "im0.png");
  EXPECT_EQ(ds.gt, dir / "disp0GT.pfm");
  EXPECT_TRUE(ds.calib.has_value());
  EXPECT_FALSE(ds.occ.has_value());
}

}  // namespace
}  // namespace stereopipe
