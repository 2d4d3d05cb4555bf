#include "stlguard/harness.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>

#include "stlguard/error.hpp"
#include "stlguard/json_io.hpp"

namespace stlguard {
namespace {

std::string number_text(double v) {
  std::array<char, 64> buf{};
  auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), end);
}

std::string fixed(double v, int digits) {
  std::array<char, 64> buf{};
  auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v, std::chars_format::fixed, digits);
  return std::string(buf.data(), end);
}

std::ofstream open_for_write(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open '" + path.string() + "' for writing");
  return out;
}

void finish(std::ofstream& out, const std::filesystem::path& path) {
  out.flush();
  if (!out) throw Error("failed writing '" + path.string() + "'");
}

bool is_hcd_or_rcd(const Strategy& s) { return std::holds_alternative<Hcd>(s) || std::holds_alternative<Rcd>(s); }

}  // namespace

void BenchmarkConfig::validate() const {
  if (n_episodes < 1) throw ConfigError("n_episodes must be >= 1");
  if (strategies.empty()) throw ConfigError("at least one strategy is required");
  if (spec_kinds.empty()) throw ConfigError("at least one spec kind is required");
  if (max_steps < 1) throw ConfigError("max_steps must be >= 1");
  for (const Strategy& s : strategies) stlguard::validate(s);
  scene.validate();
  policy.validate();
  dynamics.validate();
  sampler.validate();
}

RolloutConfig BenchmarkConfig::rollout() const {
  RolloutConfig r;
  r.policy = policy;
  r.dynamics = dynamics;
  r.sampler = sampler;
  r.max_steps = max_steps;
  return r;
}

MetricsRow summarize(const std::vector<EpisodeResult>& group) {
  if (group.empty()) throw ConfigError("cannot summarize an empty episode group");
  MetricsRow row;
  row.strategy = label(group.front().strategy);
  row.spec = group.front().spec_kind;
  row.n = group.size();
  std::size_t satisfied = 0;
  std::size_t succeeded = 0;
  std::size_t steps = 0;
  for (const EpisodeResult& r : group) {
    satisfied += r.stl_satisfied ? 1 : 0;
    succeeded += r.success ? 1 : 0;
    steps += r.steps;
  }
  const double n = static_cast<double>(row.n);
  row.stl_sat_rate = 100.0 * static_cast<double>(satisfied) / n;
  row.success_rate = 100.0 * static_cast<double>(succeeded) / n;
  row.mean_steps = static_cast<double>(steps) / n;
  return row;
}

BenchmarkResult run_benchmark(const BenchmarkConfig& cfg) {
  cfg.validate();
  std::vector<Scene> scenes;
  scenes.reserve(cfg.n_episodes);
  for (std::size_t i = 0; i < cfg.n_episodes; ++i) scenes.push_back(generate_scene(cfg.scene, cfg.base_seed + i));

  const RolloutConfig rollout = cfg.rollout();
  BenchmarkResult out;
  for (const Strategy& strategy : cfg.strategies) {
    for (SpecKind spec : cfg.spec_kinds) {
      std::vector<EpisodeResult> group;
      group.reserve(scenes.size());
      for (const Scene& scene : scenes) {
        EpisodeRngs rngs = episode_rngs(cfg.sampler.seed, scene.seed, spec);
        group.push_back(rollout_episode(strategy, scene, spec, rollout, rngs));
        out.spec_eval_seconds += group.back().spec_eval_seconds;
        out.spec_evals += group.back().spec_evals;
      }
      out.rows.push_back(summarize(group));
      std::move(group.begin(), group.end(), std::back_inserter(out.episodes));
    }
  }
  return out;
}

NoiseAblation run_noise_ablation(const BenchmarkConfig& cfg, double sigma_translation, double sigma_yaw) {
  BenchmarkConfig exact = cfg;
  exact.strategies.clear();
  std::copy_if(cfg.strategies.begin(), cfg.strategies.end(), std::back_inserter(exact.strategies), is_hcd_or_rcd);
  if (exact.strategies.empty()) throw ConfigError("noise ablation needs at least one hcd or rcd strategy");
  exact.dynamics.noise_translation_sigma = 0.0;
  exact.dynamics.noise_yaw_sigma = 0.0;

  BenchmarkConfig noisy = exact;
  noisy.dynamics.noise_translation_sigma = sigma_translation;
  noisy.dynamics.noise_yaw_sigma = sigma_yaw;
  return {run_benchmark(exact), run_benchmark(noisy)};
}

std::vector<BetaSweepRow> run_beta_sweep(const BenchmarkConfig& cfg, std::vector<double> betas, double alpha) {
  if (betas.empty()) throw ConfigError("beta sweep needs at least one beta");
  std::sort(betas.begin(), betas.end());
  BenchmarkConfig sweep = cfg;
  sweep.strategies.clear();
  for (double beta : betas) sweep.strategies.push_back(Rcd{alpha, beta});
  const BenchmarkResult result = run_benchmark(sweep);

  std::vector<BetaSweepRow> rows;
  rows.reserve(result.rows.size());
  for (std::size_t i = 0; i < result.rows.size(); ++i) {
    rows.push_back({betas[i / cfg.spec_kinds.size()], result.rows[i]});
  }
  return rows;
}

void write_csv(std::ostream& os, const std::vector<MetricsRow>& rows) {
  os << "strategy,spec,stl_sat_rate,success_rate,mean_steps,n\n";
  for (const MetricsRow& r : rows) {
    os << '"' << r.strategy << "\"," << name(r.spec) << ',' << number_text(r.stl_sat_rate) << ','
       << number_text(r.success_rate) << ',' << number_text(r.mean_steps) << ',' << r.n << '\n';
  }
}

void write_ablation_csv(std::ostream& os, const NoiseAblation& ablation) {
  os << "strategy,spec,exact_stl_sat_rate,noisy_stl_sat_rate,exact_success_rate,noisy_success_rate,n\n";
  for (std::size_t i = 0; i < ablation.exact.rows.size(); ++i) {
    const MetricsRow& e = ablation.exact.rows[i];
    const MetricsRow& n = ablation.noisy.rows[i];
    os << '"' << e.strategy << "\"," << name(e.spec) << ',' << number_text(e.stl_sat_rate) << ','
       << number_text(n.stl_sat_rate) << ',' << number_text(e.success_rate) << ',' << number_text(n.success_rate)
       << ',' << e.n << '\n';
  }
}

void write_beta_sweep_csv(std::ostream& os, const std::vector<BetaSweepRow>& rows) {
  os << "beta,spec,stl_sat_rate,success_rate,mean_steps,n\n";
  for (const BetaSweepRow& r : rows) {
    os << number_text(r.beta) << ',' << name(r.metrics.spec) << ',' << number_text(r.metrics.stl_sat_rate) << ','
       << number_text(r.metrics.success_rate) << ',' << number_text(r.metrics.mean_steps) << ',' << r.metrics.n
       << '\n';
  }
}

std::string episodes_json(const std::vector<EpisodeResult>& episodes, const SceneGenConfig& scene_cfg) {
  nlohmann::json doc{{"scene_config", scene_cfg}, {"episodes", episodes}};
  return doc.dump(1) + "\n";
}

EpisodesDocument parse_episodes_json(const std::string& text) {
  try {
    const auto doc = nlohmann::json::parse(text);
    EpisodesDocument out;
    doc.at("scene_config").get_to(out.scene_config);
    doc.at("episodes").get_to(out.episodes);
    return out;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("invalid episodes document: ") + e.what());
  }
}

std::string strategy_color(const Strategy& s) {
  if (std::holds_alternative<Unconstrained>(s)) return "#7f7f7f";
  if (std::holds_alternative<Filtering>(s)) return "#1f77b4";
  if (std::holds_alternative<Hcd>(s)) return "#ff7f0e";
  return "#9467bd";
}

std::string trajectory_svg(const std::vector<EpisodeResult>& episodes, const Scene& scene) {
  constexpr double kScale = 60.0;  // px per m
  constexpr double kMargin = 20.0;
  const Box& b = scene.bounds;
  const double width = b.width() * kScale + 2 * kMargin;
  const double height = b.height() * kScale + 2 * kMargin;
  const auto px = [&](double x) { return fixed(kMargin + (x - b.x_lo) * kScale, 2); };
  const auto pz = [&](double z) { return fixed(kMargin + (b.z_hi - z) * kScale, 2); };
  const auto rect = [&](const Box& r, const std::string& style) {
    return "<rect x=\"" + px(r.x_lo) + "\" y=\"" + pz(r.z_hi) + "\" width=\"" + fixed(r.width() * kScale, 2) +
           "\" height=\"" + fixed(r.height() * kScale, 2) + "\" " + style + "/>\n";
  };

  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << fixed(width, 0) << "\" height=\""
     << fixed(height, 0) << "\" viewBox=\"0 0 " << fixed(width, 0) << ' ' << fixed(height, 0) << "\">\n";
  os << "<title>scene " << scene.seed << "</title>\n";
  os << rect(b, "class=\"bounds\" fill=\"white\" stroke=\"black\" stroke-width=\"2\"");
  for (const Box& r : scene.geofence_rooms) {
    os << rect(r, "class=\"room\" fill=\"none\" stroke=\"green\" stroke-width=\"3\"");
  }
  for (const Box& r : scene.avoid_boxes) {
    os << rect(r, "class=\"avoid\" fill=\"red\" fill-opacity=\"0.6\" stroke=\"red\"");
  }
  for (const EpisodeResult& e : episodes) {
    os << "<polyline class=\"path\" data-strategy=\"" << label(e.strategy) << "\" data-spec=\""
       << name(e.spec_kind) << "\" fill=\"none\" stroke=\"" << strategy_color(e.strategy)
       << "\" stroke-width=\"2\" points=\"";
    for (std::size_t i = 0; i < e.states.size(); ++i) {
      os << (i ? " " : "") << px(e.states[i].x) << ',' << pz(e.states[i].z);
    }
    os << "\"/>\n";
  }
  os << "<circle class=\"start\" cx=\"" << px(scene.start.x) << "\" cy=\"" << pz(scene.start.z)
     << "\" r=\"6\" fill=\"white\" stroke=\"black\" stroke-width=\"2\"/>\n";
  os << "<circle class=\"goal\" cx=\"" << px(scene.goal.x()) << "\" cy=\"" << pz(scene.goal.y()) << "\" r=\""
     << fixed(kSuccessRadius * kScale, 2) << "\" fill=\"gold\" fill-opacity=\"0.25\" stroke=\"goldenrod\"/>\n";
  os << "<circle class=\"goal-center\" cx=\"" << px(scene.goal.x()) << "\" cy=\"" << pz(scene.goal.y())
     << "\" r=\"5\" fill=\"goldenrod\"/>\n";
  os << "</svg>\n";
  return os.str();
}

void export_csv(const std::filesystem::path& path, const std::vector<MetricsRow>& rows) {
  auto out = open_for_write(path);
  write_csv(out, rows);
  finish(out, path);
}

void export_episodes_json(const std::filesystem::path& path, const std::vector<EpisodeResult>& episodes,
                          const SceneGenConfig& scene_cfg) {
  auto out = open_for_write(path);
  out << episodes_json(episodes, scene_cfg);
  finish(out, path);
}

void export_trajectory_svg(const std::filesystem::path& path, const std::vector<EpisodeResult>& episodes,
                           const Scene& scene) {
  auto out = open_for_write(path);
  out << trajectory_svg(episodes, scene);
  finish(out, path);
}

}  // namespace stlguard
