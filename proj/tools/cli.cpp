#include "cli.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "stereopipe/io.hpp"
#include "stereopipe/oracle.hpp"
#include "stereopipe/pipeline.hpp"
#include "stereopipe/synthetic.hpp"

namespace stereopipe::cli {

namespace {

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string fixed(double v, int prec) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(prec) << v;
  return os.str();
}

// Flags shared by every subcommand that runs the pipeline. Resolution order:
// defaults, then --config, then --calib, then explicit flags.
struct ParamFlags {
  std::optional<std::string> config, calib;
  std::optional<int> max_disp, scale, wx, wy, delta, pool, threads;
  std::optional<double> tfill, lambda_ad, lambda_mc, cc_tol;
  std::optional<std::string> fill, census;
  bool no_downscale = false;

  void attach(CLI::App* app, bool with_max_disp = true) {
    app->add_option("--config", config, "key=value parameter file");
    if (with_max_disp) {
      app->add_option("--max-disp", max_disp, "maximum disparity at original resolution");
      app->add_option("--calib", calib, "Middlebury calib.txt providing ndisp");
      app->add_option("--wx", wx, "max horizontal aggregation arm");
      app->add_option("--wy", wy, "max vertical aggregation arm");
    }
    app->add_option("--scale", scale, "downscale factor K");
    app->add_option("--delta", delta, "brightness similarity threshold (0-255)");
    app->add_option("--tfill", tfill, "disparity continuity threshold T");
    app->add_option("--lambda-ad", lambda_ad, "AD cost scale");
    app->add_option("--lambda-mc", lambda_mc, "census cost scale");
    app->add_option("--pool-radius", pool, "mean-pool radius m");
    app->add_option("--census", census, "six offsets 'dx,dy;dx,dy;...'");
    app->add_option("--cc-tolerance", cc_tol, "cross-check tolerance (0 = exact)");
    app->add_option("--fill", fill, "bilateral|nearest|smaller|paper-eq11")
        ->check(CLI::IsMember({"bilateral", "nearest", "smaller", "paper-eq11"}));
    app->add_option("--threads", threads, "worker threads")->check(CLI::PositiveNumber);
    app->add_flag("--no-downscale", no_downscale, "match at original resolution");
  }

  Params resolve(int& thread_count) const {
    Params p;
    thread_count = default_thread_count();
    try {
      if (config) {
        std::ifstream in(*config);
        if (!in) throw UsageError("cannot open config " + *config);
        std::string line;
        int lineno = 0;
        while (std::getline(in, line)) {
          ++lineno;
          if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
          if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
          const auto eq = line.find('=');
          if (eq == std::string::npos) {
            throw UsageError(*config + ":" + std::to_string(lineno) + ": expected key=value");
          }
          std::string key = line.substr(0, eq);
          key.erase(key.find_last_not_of(" \t") + 1);
          key.erase(0, key.find_first_not_of(" \t"));
          const std::string value = line.substr(eq + 1);
          if (key == "threads") {
            thread_count = std::stoi(value);
          } else if (key == "no-downscale") {
            apply_param(p, "downscale", value == "true" || value == "1" ? "false" : "true");
          } else if (!apply_param(p, key, value)) {
            throw UsageError(*config + ":" + std::to_string(lineno) + ": unknown key '" + key + "'");
          }
        }
      }
      if (calib) p.d_max_org = io::read_middlebury_calib(*calib).ndisp;
      if (max_disp) p.d_max_org = *max_disp;
      if (scale) p.k_scale = *scale;
      if (wx) p.w_x = *wx;
      if (wy) p.w_y = *wy;
      if (delta) p.delta_arm = *delta;
      if (pool) p.m_pool = *pool;
      if (tfill) p.t_fill = *tfill;
      if (lambda_ad) p.lambda_ad = *lambda_ad;
      if (lambda_mc) p.lambda_mc = *lambda_mc;
      if (cc_tol) p.cc_tolerance = *cc_tol;
      if (fill) p.fill = *parse_fill_strategy(*fill);
      if (census) p.census_offsets = parse_census(*census);
      if (no_downscale) p.downscale = false;
      if (threads) thread_count = *threads;
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
    if (auto err = check(p)) throw UsageError(*err);
    if (thread_count < 1) throw UsageError("threads must be >= 1");
    return p;
  }
};

std::vector<int> parse_int_list(const std::string& s) {
  std::vector<int> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    try {
      out.push_back(std::stoi(item));
    } catch (const std::exception&) {
      throw UsageError("invalid list entry '" + item + "'");
    }
  }
  if (out.empty()) throw UsageError("empty list '" + s + "'");
  return out;
}

double gcp_fraction(const GcpMask& m) {
  std::size_t n = 0;
  for (auto v : m.data()) n += v != 0;
  return double(n) / double(m.size());
}

}  // namespace

std::string format_eval(const EvalReport& r) {
  std::ostringstream os;
  os << std::left << std::setw(18) << "bad threshold" << std::right << std::setw(10)
     << fixed(r.bad_threshold, 2) << " px\n";
  os << std::left << std::setw(18) << "bad (all)" << std::right << std::setw(10)
     << fixed(r.bad_rate_all, 2) << " %\n";
  if (r.bad_rate_nonocc) {
    os << std::left << std::setw(18) << "bad (nonocc)" << std::right << std::setw(10)
       << fixed(*r.bad_rate_nonocc, 2) << " %\n";
  }
  os << std::left << std::setw(18) << "avg abs error" << std::right << std::setw(10)
     << fixed(r.avg_abs_err, 3) << " px\n";
  os << std::left << std::setw(18) << "coverage" << std::right << std::setw(10)
     << fixed(100.0 * r.coverage, 2) << " %\n";
  os << std::left << std::setw(18) << "gt valid pixels" << std::right << std::setw(10)
     << r.gt_valid_pixels << '\n';
  return os.str();
}

nlohmann::json to_json(const EvalReport& r) {
  nlohmann::json j;
  j["bad_threshold"] = r.bad_threshold;
  j["bad_rate_all"] = r.bad_rate_all;
  j["bad_rate_nonocc"] = r.bad_rate_nonocc ? nlohmann::json(*r.bad_rate_nonocc) : nlohmann::json();
  j["avg_abs_err"] = r.avg_abs_err;
  j["coverage"] = r.coverage;
  j["gt_valid_pixels"] = r.gt_valid_pixels;
  return j;
}

std::string format_bench(const BenchReport& r) {
  std::ostringstream os;
  os << "image " << r.width << "x" << r.height << "  Dmax " << r.d_max << "  reps "
     << r.repetitions << "\n";
  const std::pair<const char*, double> rows[] = {
      {"SD", r.stage_ms.scale_down},   {"W+-(x)", r.stage_ms.arms_x},
      {"W*+-(y)", r.stage_ms.arms_y},  {"C+CA_x", r.stage_ms.cost_ca_x},
      {"CA", r.stage_ms.ca_y_wta},     {"CC", r.stage_ms.cross_check},
      {"Post", r.stage_ms.post},       {"SU", r.stage_ms.scale_up},
      {"Overall", r.overall_ms},
  };
  os << std::left << std::setw(10) << "stage" << std::right << std::setw(12) << "ms" << '\n';
  for (const auto& [name, ms] : rows) {
    os << std::left << std::setw(10) << name << std::right << std::setw(12) << fixed(ms, 3)
       << '\n';
  }
  os << std::left << std::setw(10) << "FPS" << std::right << std::setw(12) << fixed(r.fps, 3)
     << '\n';
  os << std::left << std::setw(10) << "MDE/s" << std::right << std::setw(12)
     << fixed(r.mde_per_s, 1) << '\n';
  return os.str();
}

nlohmann::json to_json(const BenchReport& r) {
  nlohmann::json j;
  j["width"] = r.width;
  j["height"] = r.height;
  j["d_max"] = r.d_max;
  j["repetitions"] = r.repetitions;
  j["stage_ms"] = {
      {"SD", r.stage_ms.scale_down},   {"arms_x", r.stage_ms.arms_x},
      {"arms_y", r.stage_ms.arms_y},   {"C+CA_x", r.stage_ms.cost_ca_x},
      {"CA", r.stage_ms.ca_y_wta},     {"CC", r.stage_ms.cross_check},
      {"Post", r.stage_ms.post},       {"SU", r.stage_ms.scale_up},
  };
  j["overall_ms"] = r.overall_ms;
  j["fps"] = r.fps;
  j["mde_per_s"] = r.mde_per_s;
  return j;
}

Dataset middlebury_dataset(const std::filesystem::path& dir) {
  Dataset d;
  d.name = dir.filename().string();
  if (d.name.empty()) d.name = dir.parent_path().filename().string();
  d.left = dir / "im0.png";
  d.right = dir / "im1.png";
  d.gt = dir / "disp0GT.pfm";
  if (std::filesystem::exists(dir / "mask0nocc.png")) d.occ = dir / "mask0nocc.png";
  if (std::filesystem::exists(dir / "calib.txt")) d.calib = dir / "calib.txt";
  return d;
}

SweepResult run_sweep(const std::vector<Dataset>& datasets, const Params& base,
                      const std::vector<int>& wx_list, const std::vector<int>& wy_list,
                      double bad_threshold, int threads, bool nonocc) {
  struct Loaded {
    GrayImage left, right, occ;
    DisparityMap gt;
    bool has_occ = false;
    int d_max = 0;
  };
  std::vector<Loaded> data;
  for (const auto& ds : datasets) {
    Loaded l;
    l.left = io::read_image(ds.left);
    l.right = io::read_image(ds.right);
    l.gt = io::read_pfm(ds.gt);
    if (ds.occ) {
      l.occ = io::read_image(*ds.occ);
      l.has_occ = true;
    }
    l.d_max = ds.calib ? io::read_middlebury_calib(*ds.calib).ndisp : base.d_max_org;
    data.push_back(std::move(l));
  }

  SweepResult res{wx_list, wy_list, {}};
  PipelineOptions opts;
  opts.threads = threads;
  for (int wx : wx_list) {
    std::vector<double> row;
    for (int wy : wy_list) {
      double sum = 0;
      for (const auto& l : data) {
        Params p = base;
        p.w_x = wx;
        p.w_y = wy;
        p.d_max_org = l.d_max;
        const auto out = run_pipeline(l.left, l.right, p, opts);
        const auto rep =
            eval_bad(out.disparity(), l.gt, bad_threshold, l.has_occ ? &l.occ : nullptr);
        sum += nonocc && rep.bad_rate_nonocc ? *rep.bad_rate_nonocc : rep.bad_rate_all;
      }
      row.push_back(data.empty() ? 0.0 : sum / double(data.size()));
    }
    res.bad_rate.push_back(std::move(row));
  }
  return res;
}

std::string format_sweep_csv(const SweepResult& r) {
  std::ostringstream os;
  os << "Wx\\Wy";
  for (int wy : r.wy_list) os << ',' << wy;
  os << '\n';
  for (std::size_t i = 0; i < r.wx_list.size(); ++i) {
    os << r.wx_list[i];
    for (double v : r.bad_rate[i]) os << ',' << fixed(v, 2);
    os << '\n';
  }
  return os.str();
}

namespace {

std::string format_sweep_table(const SweepResult& r) {
  std::ostringstream os;
  os << std::left << std::setw(10) << "Wx\\Wy";
  for (int wy : r.wy_list) os << std::right << std::setw(9) << ("Wy=" + std::to_string(wy));
  os << '\n';
  for (std::size_t i = 0; i < r.wx_list.size(); ++i) {
    os << std::left << std::setw(10) << ("Wx=" + std::to_string(r.wx_list[i]));
    for (double v : r.bad_rate[i]) os << std::right << std::setw(9) << fixed(v, 2);
    os << '\n';
  }
  return os.str();
}

struct RunArgs {
  std::string left, right, out;
  std::optional<std::string> vis, dataset;
  bool compare = false;
};

int do_run(const RunArgs& a, const ParamFlags& flags, bool oracle, std::ostream& out) {
  int threads = 1;
  ParamFlags f = flags;
  std::string left = a.left, right = a.right;
  if (a.dataset) {
    const auto ds = middlebury_dataset(*a.dataset);
    if (left.empty()) left = ds.left.string();
    if (right.empty()) right = ds.right.string();
    if (!f.calib && ds.calib) f.calib = ds.calib->string();
  }
  if (left.empty() || right.empty()) throw UsageError("--left and --right are required");
  if (!f.max_disp && !f.calib && !f.config) {
    throw UsageError("one of --max-disp, --calib or --config is required");
  }
  const Params p = f.resolve(threads);
  const auto l = io::read_image(left);
  const auto r = io::read_image(right);

  DisparityMap disp;
  if (oracle) {
    const auto res = oracle::run(l, r, p);
    disp = res.disparity();
    if (a.compare) {
      PipelineOptions opts;
      opts.threads = threads;
      const auto main = run_pipeline(l, r, p, opts);
      const bool same = main.disparity() == disp;
      out << "oracle vs pipeline: " << (same ? "identical" : "MISMATCH") << '\n';
      if (!same) {
        io::write_pfm(disp, a.out);
        return kExitRuntime;
      }
    }
  } else {
    PipelineOptions opts;
    opts.threads = threads;
    const auto res = run_pipeline(l, r, p, opts);
    disp = res.disparity();
    out << "disparity " << disp.width() << "x" << disp.height() << "  Dmax " << p.d_max_org
        << "  GCP " << fixed(100.0 * gcp_fraction(res.trace.gcp), 1) << "%  "
        << fixed(res.times.overall, 1) << " ms\n";
  }
  io::write_pfm(disp, a.out);
  if (a.vis) io::write_png(io::visualize(disp, p.d_max_org), *a.vis);
  return kExitOk;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Stereo matching with cross-based aggregation and bilateral GCP filling"};
  app.require_subcommand(1);

  RunArgs run_args;
  ParamFlags run_flags;
  auto* run_cmd = app.add_subcommand("run", "compute a disparity map");
  run_cmd->add_option("--left", run_args.left, "left image (PGM/PPM/PNG)");
  run_cmd->add_option("--right", run_args.right, "right image");
  run_cmd->add_option("--dataset", run_args.dataset, "Middlebury scene directory");
  run_cmd->add_option("--out", run_args.out, "output PFM")->required();
  run_cmd->add_option("--vis", run_args.vis, "8-bit PNG visualization");
  run_flags.attach(run_cmd);

  RunArgs oracle_args;
  ParamFlags oracle_flags;
  auto* oracle_cmd = app.add_subcommand("oracle-run", "reference implementation");
  oracle_cmd->group("");
  oracle_cmd->add_option("--left", oracle_args.left)->required();
  oracle_cmd->add_option("--right", oracle_args.right)->required();
  oracle_cmd->add_option("--out", oracle_args.out)->required();
  oracle_cmd->add_option("--vis", oracle_args.vis);
  oracle_cmd->add_flag("--compare", oracle_args.compare, "also run the pipeline and diff");
  oracle_flags.attach(oracle_cmd);

  std::string pred_path, gt_path;
  std::optional<std::string> occ_path;
  double bad = 2.0;
  bool eval_json = false;
  auto* eval_cmd = app.add_subcommand("eval", "bad-N error against ground truth");
  eval_cmd->add_option("--pred", pred_path, "predicted PFM")->required();
  eval_cmd->add_option("--gt", gt_path, "ground-truth PFM")->required();
  eval_cmd->add_option("--bad", bad, "error threshold in pixels")->check(CLI::NonNegativeNumber);
  eval_cmd->add_option("--occ", occ_path, "non-occlusion mask (255 = visible)");
  eval_cmd->add_flag("--json", eval_json, "print JSON instead of text");

  std::string bench_left, bench_right;
  std::optional<std::string> synthetic;
  int reps = 5;
  bool bench_json = false;
  ParamFlags bench_flags;
  auto* bench_cmd = app.add_subcommand("bench", "per-stage timing and MDE/s");
  bench_cmd->add_option("--left", bench_left);
  bench_cmd->add_option("--right", bench_right);
  bench_cmd->add_option("--synthetic", synthetic, "random texture pair WxH instead of files");
  bench_cmd->add_option("--reps", reps)->check(CLI::PositiveNumber);
  bench_cmd->add_flag("--json", bench_json);
  bench_flags.attach(bench_cmd);

  std::vector<std::string> sweep_datasets;
  std::string sweep_left, sweep_right, sweep_gt, wx_list = "5,9,21,41,61,141",
                                                  wy_list = "9,11,15,21,27,31";
  std::optional<std::string> sweep_occ, sweep_csv_out;
  double sweep_bad = 2.0;
  bool sweep_csv = false, sweep_nonocc = false;
  ParamFlags sweep_flags;
  auto* sweep_cmd = app.add_subcommand("sweep", "error rate over a Wx x Wy grid");
  sweep_cmd->add_option("--dataset", sweep_datasets, "Middlebury scene directory (repeatable)");
  sweep_cmd->add_option("--left", sweep_left);
  sweep_cmd->add_option("--right", sweep_right);
  sweep_cmd->add_option("--gt", sweep_gt);
  sweep_cmd->add_option("--occ", sweep_occ);
  sweep_cmd->add_option("--max-disp", sweep_flags.max_disp);
  sweep_cmd->add_option("--calib", sweep_flags.calib);
  sweep_cmd->add_option("--wx-list", wx_list, "comma-separated W_x values");
  sweep_cmd->add_option("--wy-list", wy_list, "comma-separated W_y values");
  sweep_cmd->add_option("--bad", sweep_bad)->check(CLI::NonNegativeNumber);
  sweep_cmd->add_flag("--csv", sweep_csv, "print CSV instead of an aligned table");
  sweep_cmd->add_option("--csv-out", sweep_csv_out, "also write CSV to this file");
  sweep_cmd->add_flag("--nonocc", sweep_nonocc, "use the non-occluded error rate");
  sweep_flags.attach(sweep_cmd, /*with_max_disp=*/false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    if (*run_cmd) return do_run(run_args, run_flags, false, out);
    if (*oracle_cmd) return do_run(oracle_args, oracle_flags, true, out);

    if (*eval_cmd) {
      const auto pred = io::read_pfm(pred_path);
      const auto gt = io::read_pfm(gt_path);
      std::optional<GrayImage> occ;
      if (occ_path) occ = io::read_image(*occ_path);
      const auto rep = eval_bad(pred, gt, bad, occ ? &*occ : nullptr);
      if (eval_json) out << to_json(rep).dump(2) << '\n';
      else out << format_eval(rep);
      return kExitOk;
    }

    if (*bench_cmd) {
      int threads = 1;
      if (!bench_flags.max_disp && !bench_flags.calib && !bench_flags.config) {
        throw UsageError("one of --max-disp, --calib or --config is required");
      }
      const Params p = bench_flags.resolve(threads);
      GrayImage l, r;
      if (synthetic) {
        int w = 0, h = 0;
        if (std::sscanf(synthetic->c_str(), "%dx%d", &w, &h) != 2 || w < 1 || h < 1) {
          throw UsageError("--synthetic expects WxH");
        }
        auto pair = make_shifted_pair(w, h, std::min(p.d_max_org / 2, w - 1), 1234u, 2);
        l = std::move(pair.left);
        r = std::move(pair.right);
      } else {
        if (bench_left.empty() || bench_right.empty()) {
          throw UsageError("--left/--right or --synthetic required");
        }
        l = io::read_image(bench_left);
        r = io::read_image(bench_right);
      }
      const auto rep = bench_pipeline(l, r, p, reps, threads);
      if (bench_json) out << to_json(rep).dump(2) << '\n';
      else out << format_bench(rep);
      return kExitOk;
    }

    if (*sweep_cmd) {
      std::vector<Dataset> datasets;
      for (const auto& d : sweep_datasets) datasets.push_back(middlebury_dataset(d));
      if (!sweep_left.empty() || !sweep_right.empty() || !sweep_gt.empty()) {
        if (sweep_left.empty() || sweep_right.empty() || sweep_gt.empty()) {
          throw UsageError("--left, --right and --gt must be given together");
        }
        Dataset ds{"pair", sweep_left, sweep_right, sweep_gt, {}, {}};
        if (sweep_occ) ds.occ = *sweep_occ;
        if (sweep_flags.calib) ds.calib = *sweep_flags.calib;
        datasets.push_back(ds);
      }
      if (datasets.empty()) throw UsageError("sweep needs --dataset or --left/--right/--gt");
      for (const auto& ds : datasets) {
        if (!ds.calib && !sweep_flags.max_disp && !sweep_flags.config) {
          throw UsageError(ds.name + ": no calib.txt; pass --max-disp");
        }
      }
      if (sweep_flags.max_disp) {
        for (auto& ds : datasets) ds.calib.reset();
      }
      auto flags = sweep_flags;
      flags.calib.reset();  // per-dataset calib is applied inside run_sweep
      int threads = 1;
      const Params p = flags.resolve(threads);
      const auto res = run_sweep(datasets, p, parse_int_list(wx_list), parse_int_list(wy_list),
                                 sweep_bad, threads, sweep_nonocc);
      out << (sweep_csv ? format_sweep_csv(res) : format_sweep_table(res));
      if (sweep_csv_out) {
        std::ofstream f(*sweep_csv_out);
        if (!f) throw io::IoError("cannot write " + *sweep_csv_out);
        f << format_sweep_csv(res);
      }
      return kExitOk;
    }
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitRuntime;
  }
  return kExitUsage;
}

}  // namespace stereopipe::cli
