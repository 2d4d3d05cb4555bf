#include <doctest.h>

#include <regex>
#include <sstream>

#include <nlohmann/json.hpp>

#include "stlguard/error.hpp"
#include "stlguard/harness.hpp"
#include "stlguard/json_io.hpp"

using namespace stlguard;

namespace {

BenchmarkConfig small_config(std::size_t n = 20) {
  BenchmarkConfig cfg;
  cfg.n_episodes = n;
  return cfg;
}

const MetricsRow& row(const std::vector<MetricsRow>& rows, const std::string& strategy, SpecKind spec) {
  for (const MetricsRow& r : rows) {
    if (r.strategy == strategy && r.spec == spec) return r;
  }
  FAIL("missing row ", strategy);
  throw;
}

std::size_t count(const std::string& text, const std::string& needle) {
  std::size_t n = 0;
  for (auto pos = text.find(needle); pos != std::string::npos; pos = text.find(needle, pos + 1)) ++n;
  return n;
}

}  // namespace

TEST_CASE("empty result gives a header-only csv") {
  std::ostringstream os;
  write_csv(os, {});
  CHECK(os.str() == "strategy,spec,stl_sat_rate,success_rate,mean_steps,n\n");
}

TEST_CASE("csv rows") {
  std::ostringstream os;
  write_csv(os, {MetricsRow{"rcd(alpha=1,beta=5)", SpecKind::Geofence, 97.5, 50, 12.25, 40}});
  CHECK(os.str() ==
        "strategy,spec,stl_sat_rate,success_rate,mean_steps,n\n"
        "\"rcd(alpha=1,beta=5)\",geofence,97.5,50,12.25,40\n");
}

TEST_CASE("summary arithmetic") {
  std::vector<EpisodeResult> group(4);
  for (std::size_t i = 0; i < group.size(); ++i) {
    group[i].strategy = Hcd{};
    group[i].spec_kind = SpecKind::Avoid;
    group[i].steps = 10 * (i + 1);
  }
  group[0].stl_satisfied = group[1].stl_satisfied = group[2].stl_satisfied = true;
  group[3].success = true;
  const MetricsRow r = summarize(group);
  CHECK(r.strategy == "hcd");
  CHECK(r.stl_sat_rate == 75.0);
  CHECK(r.success_rate == 25.0);
  CHECK(r.mean_steps == 25.0);
  CHECK(r.n == 4);
  CHECK_THROWS_AS(summarize({}), ConfigError);
}

TEST_CASE("benchmark is deterministic and paired") {
  const BenchmarkConfig cfg = small_config();
  const BenchmarkResult a = run_benchmark(cfg);
  const BenchmarkResult b = run_benchmark(cfg);
  CHECK(a.rows == b.rows);
  CHECK(a.episodes == b.episodes);
  REQUIRE(a.rows.size() == cfg.strategies.size() * cfg.spec_kinds.size());
  REQUIRE(a.episodes.size() == a.rows.size() * cfg.n_episodes);
  for (std::size_t g = 0; g < a.rows.size(); ++g) {
    for (std::size_t i = 0; i < cfg.n_episodes; ++i) {
      const EpisodeResult& e = a.episodes[g * cfg.n_episodes + i];
      CHECK(e.scene_seed == cfg.base_seed + i);
      CHECK(e.states.front() == generate_scene(cfg.scene, e.scene_seed).start);
    }
  }
  for (const MetricsRow& r : a.rows) CHECK(r.n == cfg.n_episodes);
  CHECK(a.spec_evals > 0);
}

TEST_CASE("unconstrained decoding violates on the default scenes") {
  const BenchmarkResult res = run_benchmark(small_config(200));
  CHECK(row(res.rows, "unconstrained", SpecKind::Avoid).stl_sat_rate < 95.0);
  CHECK(row(res.rows, "unconstrained", SpecKind::Geofence).stl_sat_rate < 95.0);
  CHECK(row(res.rows, "hcd", SpecKind::Avoid).stl_sat_rate == 100.0);
  CHECK(row(res.rows, "filtering", SpecKind::Geofence).stl_sat_rate == 100.0);
}

TEST_CASE("beta sweep rows are sorted and zero beta matches unconstrained") {
  BenchmarkConfig cfg = small_config(30);
  const auto sweep = run_beta_sweep(cfg, {5, 0, 1}, 1.0);
  REQUIRE(sweep.size() == 6);
  CHECK(sweep[0].beta == 0);
  CHECK(sweep[1].beta == 0);
  CHECK(sweep[2].beta == 1);
  CHECK(sweep[4].beta == 5);
  CHECK(sweep[0].metrics.spec == SpecKind::Avoid);
  CHECK(sweep[1].metrics.spec == SpecKind::Geofence);
  cfg.strategies = {Unconstrained{}};
  const BenchmarkResult base = run_benchmark(cfg);
  for (std::size_t s = 0; s < 2; ++s) {
    CHECK(sweep[s].metrics.stl_sat_rate == base.rows[s].stl_sat_rate);
    CHECK(sweep[s].metrics.success_rate == base.rows[s].success_rate);
    CHECK(sweep[s].metrics.mean_steps == base.rows[s].mean_steps);
  }
}

TEST_CASE("noise ablation with zero sigma reproduces the exact run") {
  BenchmarkConfig cfg = small_config(20);
  const NoiseAblation ab = run_noise_ablation(cfg, 0.0, 0.0);
  CHECK(ab.exact.rows == ab.noisy.rows);
  CHECK(ab.exact.episodes == ab.noisy.episodes);
  cfg.strategies = {Hcd{}, Rcd{1.0, 2.0}};
  CHECK(run_benchmark(cfg).rows == ab.exact.rows);
  const NoiseAblation noisy = run_noise_ablation(small_config(20));
  CHECK_FALSE(noisy.exact.episodes == noisy.noisy.episodes);
  cfg.strategies = {Unconstrained{}};
  CHECK_THROWS_AS(run_noise_ablation(cfg), ConfigError);
}

TEST_CASE("episodes survive a json round trip") {
  const BenchmarkConfig cfg = small_config(5);
  const BenchmarkResult res = run_benchmark(cfg);
  const std::string text = episodes_json(res.episodes, cfg.scene);
  const EpisodesDocument doc = parse_episodes_json(text);
  CHECK(doc.scene_config == cfg.scene);
  CHECK(doc.episodes == res.episodes);
  CHECK(episodes_json(doc.episodes, doc.scene_config) == text);
  CHECK_THROWS_AS(parse_episodes_json("{\"episodes\": 3}"), ConfigError);
}

TEST_CASE("scene and config json round trips") {
  const Scene scene = generate_scene(SceneGenConfig{}, 12);
  CHECK(scene_from_json(scene_to_json(scene)) == scene);
  BenchmarkConfig cfg;
  cfg.strategies = {Filtering{Action::RotateRight}, Rcd{0.5, 3.0}};
  cfg.sampler.mode = SamplerMode::TopK;
  cfg.sampler.k = 3;
  const BenchmarkConfig back = benchmark_config_from_json(benchmark_config_to_json(cfg));
  CHECK(back.strategies == cfg.strategies);
  CHECK(back.sampler == cfg.sampler);
  CHECK(back.scene == cfg.scene);
  CHECK(back.n_episodes == cfg.n_episodes);
}

TEST_CASE("config parsing rejects bad input") {
  CHECK_THROWS_AS(benchmark_config_from_json("{"), ConfigError);
  CHECK_THROWS_AS(benchmark_config_from_json(R"({"n_episodes": 0})"), ConfigError);
  CHECK_THROWS_AS(benchmark_config_from_json(R"({"strategies": [{"type": "beam"}]})"), ConfigError);
  CHECK_NOTHROW(benchmark_config_from_json("{}"));
}

TEST_CASE("svg has one vertex per recorded state") {
  BenchmarkConfig cfg = small_config(1);
  const BenchmarkResult res = run_benchmark(cfg);
  const Scene scene = generate_scene(cfg.scene, 0);
  const std::string svg = trajectory_svg(res.episodes, scene);
  CHECK(svg.rfind("<svg", 0) == 0);
  CHECK(count(svg, "<polyline class=\"path\"") == res.episodes.size());
  const std::regex points("points=\"([^\"]*)\"");
  std::size_t i = 0;
  for (auto it = std::sregex_iterator(svg.begin(), svg.end(), points); it != std::sregex_iterator(); ++it, ++i) {
    REQUIRE(i < res.episodes.size());
    const std::string pts = (*it)[1];
    CHECK(count(pts, ",") == res.episodes[i].states.size());
  }
  CHECK(i == res.episodes.size());
  CHECK(count(svg, "class=\"start\"") == 1);
  CHECK(count(svg, "class=\"goal\"") == 1);
}
