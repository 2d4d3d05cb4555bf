#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <numbers>
#include <string>
#include <vector>

#include "stlguard/decode.hpp"
#include "stlguard/scene.hpp"

namespace stlguard {

struct BenchmarkConfig {
  std::size_t n_episodes = 200;
  std::vector<Strategy> strategies{Unconstrained{}, Filtering{}, Hcd{}, Rcd{1.0, 2.0}};
  std::vector<SpecKind> spec_kinds{SpecKind::Avoid, SpecKind::Geofence};
  SceneGenConfig scene;
  PolicyConfig policy;
  DynamicsConfig dynamics;
  SamplerSpec sampler;
  std::size_t max_steps = 200;
  std::uint64_t base_seed = 0;

  void validate() const;
  RolloutConfig rollout() const;
};

struct MetricsRow {
  std::string strategy;
  SpecKind spec = SpecKind::Avoid;
  double stl_sat_rate = 0.0;  // percent
  double success_rate = 0.0;  // percent
  double mean_steps = 0.0;
  std::size_t n = 0;

  friend bool operator==(const MetricsRow&, const MetricsRow&) = default;
};

struct BenchmarkResult {
  std::vector<MetricsRow> rows;
  /// Grouped by (strategy, spec) in config order; within a group episode i
  /// uses scene seed base_seed + i.
  std::vector<EpisodeResult> episodes;
  double spec_eval_seconds = 0.0;
  std::size_t spec_evals = 0;

  double mean_spec_eval_seconds() const { return spec_evals ? spec_eval_seconds / static_cast<double>(spec_evals) : 0.0; }
};

/// Aggregates one (strategy, spec) group. Throws ConfigError for an empty group.
MetricsRow summarize(const std::vector<EpisodeResult>& group);

/// Every (strategy, spec) pair over the same scene seeds
/// base_seed .. base_seed + n_episodes - 1.
BenchmarkResult run_benchmark(const BenchmarkConfig& cfg);

inline constexpr double kAblationSigmaTranslation = 0.01;                    // m
inline constexpr double kAblationSigmaYaw = 1.0 * std::numbers::pi / 180.0;  // rad

struct NoiseAblation {
  BenchmarkResult exact;
  BenchmarkResult noisy;
};

/// HCD and RCD strategies of cfg (others are dropped), run once with exact
/// execution and once with noisy execution on the same scenes and sampling
/// streams. Decoding predicts with the noise-free model in both arms.
/// Throws ConfigError if cfg has no HCD or RCD strategy.
NoiseAblation run_noise_ablation(const BenchmarkConfig& cfg, double sigma_translation = kAblationSigmaTranslation,
                                 double sigma_yaw = kAblationSigmaYaw);

struct BetaSweepRow {
  double beta = 0.0;
  MetricsRow metrics;
};

/// RCD(alpha, beta) for each beta, over the identical scene set; rows sorted
/// by ascending beta, then spec in config order.
std::vector<BetaSweepRow> run_beta_sweep(const BenchmarkConfig& cfg, std::vector<double> betas, double alpha);

// ---------------------------------------------------------------------------
// Exports

/// Header  strategy,spec,stl_sat_rate,success_rate,mean_steps,n  then one line per row.
void write_csv(std::ostream& os, const std::vector<MetricsRow>& rows);
void write_ablation_csv(std::ostream& os, const NoiseAblation& ablation);
void write_beta_sweep_csv(std::ostream& os, const std::vector<BetaSweepRow>& rows);

/// Episodes document: {"scene_config": {...}, "episodes": [...]}.
std::string episodes_json(const std::vector<EpisodeResult>& episodes, const SceneGenConfig& scene_cfg);
struct EpisodesDocument {
  SceneGenConfig scene_config;
  std::vector<EpisodeResult> episodes;
};
EpisodesDocument parse_episodes_json(const std::string& text);

/// Top-down view: world bounds, geofence rooms (green outline), avoid boxes
/// (red), start and goal markers, one polyline per episode with one vertex
/// per recorded state.
std::string trajectory_svg(const std::vector<EpisodeResult>& episodes, const Scene& scene);

void export_csv(const std::filesystem::path& path, const std::vector<MetricsRow>& rows);
void export_episodes_json(const std::filesystem::path& path, const std::vector<EpisodeResult>& episodes,
                          const SceneGenConfig& scene_cfg);
void export_trajectory_svg(const std::filesystem::path& path, const std::vector<EpisodeResult>& episodes,
                           const Scene& scene);

/// Stroke color used for a strategy's paths.
std::string strategy_color(const Strategy& s);

}  // namespace stlguard
