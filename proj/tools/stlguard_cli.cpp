// Command-line driver for the benchmark harness.
//
//   stlguard run          --config cfg.json --out results/
//   stlguard ablate-noise --config cfg.json --sigma-t 0.01 --sigma-yaw 1
//   stlguard sweep-beta   --config cfg.json --betas 0,1,5,10,50
//   stlguard plot         --episodes results/episodes.json --scene-seed 3 --out scene3.svg
//   stlguard scene        --config cfg.json --seed 3

#include <filesystem>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "stlguard/error.hpp"
#include "stlguard/harness.hpp"
#include "stlguard/json_io.hpp"

namespace fs = std::filesystem;
using namespace stlguard;

namespace {

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

BenchmarkConfig load_config(const std::string& path) {
  return path.empty() ? BenchmarkConfig{} : benchmark_config_from_json(read_file(path));
}

void ensure_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw Error("cannot create directory '" + dir.string() + "': " + ec.message());
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
  if (!out) throw Error("failed writing '" + path.string() + "'");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Specification-guided decoding benchmark"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir;

  auto* run = app.add_subcommand("run", "Compare decoding strategies over generated scenes");
  run->add_option("--config", config_path, "Benchmark configuration (JSON)")->required()->check(CLI::ExistingFile);
  run->add_option("--out", out_dir, "Output directory for metrics.csv and episodes.json")->required();

  double sigma_t = kAblationSigmaTranslation;
  double sigma_yaw_deg = 1.0;
  auto* ablate = app.add_subcommand("ablate-noise", "HCD/RCD under exact vs noisy execution");
  ablate->add_option("--config", config_path, "Benchmark configuration (JSON)")->required()->check(CLI::ExistingFile);
  ablate->add_option("--sigma-t", sigma_t, "Translational noise per step (m)")->check(CLI::NonNegativeNumber);
  ablate->add_option("--sigma-yaw", sigma_yaw_deg, "Rotational noise per step (deg)")->check(CLI::NonNegativeNumber);
  ablate->add_option("--out", out_dir, "Optional output directory for ablation.csv");

  std::vector<double> betas{0, 1, 5, 10, 50};
  double alpha = 1.0;
  auto* sweep = app.add_subcommand("sweep-beta", "RCD satisfaction and success across beta");
  sweep->add_option("--config", config_path, "Benchmark configuration (JSON)")->required()->check(CLI::ExistingFile);
  sweep->add_option("--betas", betas, "Comma-separated beta values")->delimiter(',')->check(CLI::NonNegativeNumber);
  sweep->add_option("--alpha", alpha, "RCD alpha")->check(CLI::PositiveNumber);
  sweep->add_option("--out", out_dir, "Optional output directory for beta_sweep.csv");

  std::string episodes_path;
  std::string svg_path;
  std::uint64_t scene_seed = 0;
  std::string spec_filter;
  auto* plot = app.add_subcommand("plot", "Top-down SVG of every recorded episode in one scene");
  plot->add_option("--episodes", episodes_path, "episodes.json written by run")->required()->check(CLI::ExistingFile);
  plot->add_option("--scene-seed", scene_seed, "Scene seed to draw")->required();
  plot->add_option("--out", svg_path, "Output SVG path")->required();
  plot->add_option("--spec", spec_filter, "Only episodes of this spec (avoid|geofence)");

  std::uint64_t seed = 0;
  auto* scene_cmd = app.add_subcommand("scene", "Print the generated scene for a seed as JSON");
  scene_cmd->add_option("--config", config_path, "Benchmark configuration (JSON)")->check(CLI::ExistingFile);
  scene_cmd->add_option("--seed", seed, "Scene seed")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run) {
      const BenchmarkConfig cfg = load_config(config_path);
      const BenchmarkResult result = run_benchmark(cfg);
      ensure_dir(out_dir);
      export_csv(fs::path(out_dir) / "metrics.csv", result.rows);
      export_episodes_json(fs::path(out_dir) / "episodes.json", result.episodes, cfg.scene);
      write_csv(std::cout, result.rows);
    } else if (*ablate) {
      const BenchmarkConfig cfg = load_config(config_path);
      const NoiseAblation result = run_noise_ablation(cfg, sigma_t, sigma_yaw_deg * std::numbers::pi / 180.0);
      std::ostringstream csv;
      write_ablation_csv(csv, result);
      if (!out_dir.empty()) {
        ensure_dir(out_dir);
        write_text(fs::path(out_dir) / "ablation.csv", csv.str());
      }
      std::cout << csv.str();
    } else if (*sweep) {
      const BenchmarkConfig cfg = load_config(config_path);
      const auto rows = run_beta_sweep(cfg, betas, alpha);
      std::ostringstream csv;
      write_beta_sweep_csv(csv, rows);
      if (!out_dir.empty()) {
        ensure_dir(out_dir);
        write_text(fs::path(out_dir) / "beta_sweep.csv", csv.str());
      }
      std::cout << csv.str();
    } else if (*plot) {
      const EpisodesDocument doc = parse_episodes_json(read_file(episodes_path));
      std::vector<EpisodeResult> selected;
      for (const EpisodeResult& e : doc.episodes) {
        if (e.scene_seed != scene_seed) continue;
        if (!spec_filter.empty() && e.spec_kind != spec_kind_from_name(spec_filter)) continue;
        selected.push_back(e);
      }
      if (selected.empty()) throw Error("no episodes with scene seed " + std::to_string(scene_seed));
      export_trajectory_svg(svg_path, selected, generate_scene(doc.scene_config, scene_seed));
    } else if (*scene_cmd) {
      const BenchmarkConfig cfg = load_config(config_path);
      std::cout << scene_to_json(generate_scene(cfg.scene, seed)) << '\n';
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
