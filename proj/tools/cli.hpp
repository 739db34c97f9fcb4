#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "stereopipe/eval.hpp"
#include "stereopipe/params.hpp"

namespace stereopipe::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitRuntime = 1;
inline constexpr int kExitUsage = 2;

/// Entry point shared by the executable and the tests.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

std::string format_eval(const EvalReport& r);
nlohmann::json to_json(const EvalReport& r);

std::string format_bench(const BenchReport& r);
nlohmann::json to_json(const BenchReport& r);

/// One stereo pair with ground truth, e.g. a Middlebury v3 training directory.
struct Dataset {
  std::string name;
  std::filesystem::path left, right, gt;
  std::optional<std::filesystem::path> occ, calib;
};

/// im0.png / im1.png / disp0GT.pfm / mask0nocc.png / calib.txt inside `dir`.
Dataset middlebury_dataset(const std::filesystem::path& dir);

struct SweepResult {
  std::vector<int> wx_list, wy_list;
  std::vector<std::vector<double>> bad_rate;  // [wx][wy], averaged over datasets
};

SweepResult run_sweep(const std::vector<Dataset>& datasets, const Params& base,
                      const std::vector<int>& wx_list, const std::vector<int>& wy_list,
                      double bad_threshold, int threads, bool nonocc = false);

/// Grid as CSV, header row "Wx\Wy,<wy...>".
std::string format_sweep_csv(const SweepResult& r);

}  // namespace stereopipe::cli
