#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "beamtrim/bench.hpp"
#include "beamtrim/config.hpp"
#include "beamtrim/errors.hpp"
#include "beamtrim/evaluation.hpp"
#include "beamtrim/io.hpp"
#include "beamtrim/odometry.hpp"
#include "beamtrim/simulation.hpp"
#include "beamtrim/svg.hpp"

namespace fs = std::filesystem;
using namespace beamtrim;

namespace {

// Removes everything registered unless commit() is called.
class OutputGuard {
 public:
  ~OutputGuard() {
    if (committed_) return;
    for (auto it = paths_.rbegin(); it != paths_.rend(); ++it) {
      std::error_code ec;
      fs::remove_all(*it, ec);
    }
  }
  void track(const fs::path& p) {
    if (!fs::exists(p)) paths_.push_back(p);
  }
  void commit() { committed_ = true; }

 private:
  std::vector<fs::path> paths_;
  bool committed_ = false;
};

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path);
  out << text;
  if (!out) throw Error("cannot write " + path.string());
}

fs::path scan_name(std::size_t i) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%06zu.bin", i);
  return buf;
}

struct Common {
  std::string config_path;
  std::uint64_t seed = 1;
};

Config load(const Common& c) { return c.config_path.empty() ? Config{} : load_config(c.config_path); }

std::vector<RawScan> simulated_sequence(const std::string& scene_name, std::size_t frames, std::uint64_t seed,
                                        const LidarIntrinsics& intrinsics, Trajectory* gt) {
  const Scene scene = standard_scene(scene_name);
  const Trajectory drive = standard_drive(scene_name, frames);
  std::vector<RawScan> scans;
  for (std::size_t i = 0; i < drive.size(); ++i) {
    scans.push_back(simulate_scan(scene, drive.poses[i], intrinsics, seed + i, drive.timestamps[i]));
  }
  if (gt) *gt = drive;
  return scans;
}

int cmd_simulate(const Common& c, const std::string& scene_name, std::size_t frames, const fs::path& out) {
  const Config cfg = load(c);
  OutputGuard guard;
  guard.track(out);
  fs::create_directories(out / "scans");
  Trajectory gt;
  const auto scans = simulated_sequence(scene_name, frames, c.seed, cfg.intrinsics, &gt);
  for (std::size_t i = 0; i < scans.size(); ++i) write_velodyne_bin(out / "scans" / scan_name(i), scans[i]);
  write_poses(out / "poses.txt", gt);
  write_timestamps(out / "times.txt", gt.timestamps);
  write_text(out / "scene.txt", serialize_scene(standard_scene(scene_name)));
  guard.commit();
  std::cout << "wrote " << scans.size() << " scans to " << out.string() << '\n';
  return 0;
}

int cmd_run(const Common& c, const std::string& scans_dir, const std::string& scene_name, std::size_t frames,
            const std::string& variant, const std::string& rejector, const fs::path& out) {
  Config cfg = load(c);
  OdometryConfig ocfg = variant_config(parse_variant(variant), cfg.odometry);
  if (!rejector.empty()) ocfg.icp.rejector = parse_rejector(rejector);

  std::vector<RawScan> scans;
  if (!scans_dir.empty()) {
    std::vector<fs::path> files;
    for (const auto& e : fs::directory_iterator(fs::path(scans_dir) / "scans")) {
      if (e.path().extension() == ".bin") files.push_back(e.path());
    }
    std::sort(files.begin(), files.end());
    std::vector<double> stamps;
    if (fs::exists(fs::path(scans_dir) / "times.txt")) stamps = read_timestamps(fs::path(scans_dir) / "times.txt");
    for (std::size_t i = 0; i < files.size(); ++i) {
      scans.push_back(read_velodyne_bin(files[i], cfg.intrinsics, i < stamps.size() ? stamps[i] : 0.0));
    }
  } else {
    scans = simulated_sequence(scene_name, frames, c.seed, cfg.intrinsics, nullptr);
  }

  OutputGuard guard;
  guard.track(out);
  OdometryRunner runner(ocfg);
  double total = 0.0;
  for (const auto& scan : scans) {
    const FrameLog& log = runner.process(scan);
    total += log.seconds;
    std::printf("frame %zu\t%.3f s\t%zu features\t%d iterations%s%s\n", log.index, log.seconds, log.feature_points,
                log.iterations, log.failure.empty() ? "" : "\tfallback: ", log.failure.c_str());
  }
  if (scans.size() < 2) throw std::invalid_argument("need at least two scans");
  std::printf("mean processing time %.3f s over %zu frames\n", total / static_cast<double>(scans.size()),
              scans.size());
  if (out.has_parent_path()) fs::create_directories(out.parent_path());
  write_poses(out, runner.trajectory());
  guard.commit();
  return 0;
}

int cmd_eval(const std::vector<std::string>& pairs, double segment, const std::string& out) {
  if (pairs.size() % 2 != 0 || pairs.empty()) throw std::invalid_argument("eval takes ESTIMATE GROUND_TRUTH pairs");
  std::vector<std::string> names;
  std::vector<ErrorStats> stats;
  for (std::size_t i = 0; i < pairs.size(); i += 2) {
    const ErrorStats s = relative_error(read_poses(pairs[i]), read_poses(pairs[i + 1]), segment);
    names.push_back(fs::path(pairs[i]).stem().string());
    stats.push_back(s);
    std::printf("%s\tμ %.3f σ %.3f\n", names.back().c_str(), s.mean, s.stddev);
  }
  if (!out.empty()) {
    OutputGuard guard;
    guard.track(out);
    write_text(out, format_stats_table(names, stats));
    guard.commit();
  }
  return 0;
}

int cmd_bench(const Common& c, std::size_t trials, const std::string& scene, const fs::path& out) {
  const Config cfg = load(c);
  BenchSpec spec;
  spec.trials = trials;
  spec.scene = scene;
  spec.seed = c.seed;
  spec.intrinsics = cfg.intrinsics;
  spec.cfg = cfg.odometry;
  const BenchReport report = bench_rejectors(spec);
  const std::string table = format_bench_table(report);
  std::cout << table;
  if (!out.empty()) {
    OutputGuard guard;
    guard.track(out);
    fs::create_directories(out);
    write_text(out / "bench.tsv", table);
    write_text(out / "trials.tsv", format_bench_trials(report));
    write_text(out / "bench.svg", bench_svg(report));
    guard.commit();
  }
  return 0;
}

int cmd_plot(const std::vector<std::string>& files, const fs::path& out) {
  std::vector<NamedTrajectory> trajs;
  for (const auto& f : files) trajs.push_back({fs::path(f).stem().string(), read_poses(f)});
  OutputGuard guard;
  guard.track(out);
  write_text(out, trajectory_svg(trajs));
  guard.commit();
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"beamtrim: lidar odometry with normal covariance filtering and neighbor beam rejection"};
  app.require_subcommand(1);
  Common common;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", common.config_path, "key = value configuration file")->check(CLI::ExistingFile);
    sub->add_option("--seed", common.seed, "random seed");
  };

  std::string scene = "corridor";
  std::size_t frames = 50;
  std::string out;

  auto* sim = app.add_subcommand("simulate", "simulate a drive through a scene");
  add_common(sim);
  sim->add_option("--scene", scene)->check(CLI::IsMember(standard_scene_names()));
  sim->add_option("--frames", frames);
  sim->add_option("--out", out, "output directory")->required();

  std::string scans_dir, variant = "salo", rejector;
  auto* run = app.add_subcommand("run", "run odometry and write a pose file");
  add_common(run);
  run->add_option("--scans", scans_dir, "directory written by `simulate` or with a scans/ folder of .bin files");
  run->add_option("--scene", scene, "simulate this scene instead of reading scans");
  run->add_option("--frames", frames);
  run->add_option("--variant", variant)->check(CLI::IsMember({"bl", "ncf", "salo"}));
  run->add_option("--rejector", rejector)->check(CLI::IsMember({"dst", "geom", "geom+trim"}));
  run->add_option("--out", out, "output pose file")->required();

  std::vector<std::string> eval_files;
  double segment = 100.0;
  std::string eval_out;
  auto* eval = app.add_subcommand("eval", "relative error of estimate/ground-truth pose file pairs");
  eval->add_option("files", eval_files, "ESTIMATE GROUND_TRUTH [ESTIMATE GROUND_TRUTH ...]")->required();
  eval->add_option("--segment", segment, "segment length in meters");
  eval->add_option("--out", eval_out, "tab-separated table");

  std::size_t trials = 100;
  std::string bench_scene = "street";
  auto* bench = app.add_subcommand("bench-rejectors", "dst vs geom translation error under init noise");
  add_common(bench);
  bench->add_option("--trials", trials);
  bench->add_option("--scene", bench_scene)->check(CLI::IsMember(standard_scene_names()));
  bench->add_option("--out", out, "output directory for bench.tsv, trials.tsv and bench.svg");

  std::vector<std::string> plot_files;
  auto* plot = app.add_subcommand("plot-traj", "top-down SVG of pose files");
  plot->add_option("files", plot_files)->required()->check(CLI::ExistingFile);
  plot->add_option("--out", out, "output SVG")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*sim) return cmd_simulate(common, scene, frames, out);
    if (*run) {
      if (scans_dir.empty() && run->count("--scene") == 0) throw std::invalid_argument("run needs --scans or --scene");
      return cmd_run(common, scans_dir, scene, frames, variant, rejector, out);
    }
    if (*eval) return cmd_eval(eval_files, segment, eval_out);
    if (*bench) return cmd_bench(common, trials, bench_scene, out);
    if (*plot) return cmd_plot(plot_files, out);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
