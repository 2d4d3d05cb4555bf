#include "stlguard/json_io.hpp"

#include <algorithm>
#include <initializer_list>
#include <string_view>

#include "stlguard/error.hpp"

namespace stlguard {
namespace {

using nlohmann::json;

void require_object(const json& j, std::string_view what) {
  if (!j.is_object()) throw ConfigError(std::string(what) + " must be a JSON object");
}

void check_keys(const json& j, std::initializer_list<std::string_view> allowed, std::string_view what) {
  require_object(j, what);
  for (const auto& [key, value] : j.items()) {
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
      throw ConfigError("unknown key '" + key + "' in " + std::string(what));
    }
  }
}

template <typename T>
void read(const json& j, const char* key, T& out) {
  if (auto it = j.find(key); it != j.end()) it->get_to(out);
}

template <typename F>
auto wrap_errors(F&& f) {
  try {
    return f();
  } catch (const json::exception& e) {
    throw ConfigError(std::string("invalid JSON document: ") + e.what());
  }
}

}  // namespace

void to_json(json& j, const Box& b) {
  j = json{{"x_lo", b.x_lo}, {"x_hi", b.x_hi}, {"z_lo", b.z_lo}, {"z_hi", b.z_hi}};
}

void from_json(const json& j, Box& b) {
  check_keys(j, {"x_lo", "x_hi", "z_lo", "z_hi"}, "box");
  j.at("x_lo").get_to(b.x_lo);
  j.at("x_hi").get_to(b.x_hi);
  j.at("z_lo").get_to(b.z_lo);
  j.at("z_hi").get_to(b.z_hi);
}

void to_json(json& j, const State& s) { j = json{{"x", s.x}, {"z", s.z}, {"theta", s.theta}}; }

void from_json(const json& j, State& s) {
  check_keys(j, {"x", "z", "theta"}, "state");
  j.at("x").get_to(s.x);
  j.at("z").get_to(s.z);
  read(j, "theta", s.theta);
}

void to_json(json& j, const Scene& s) {
  j = json{{"seed", s.seed},
           {"bounds", s.bounds},
           {"avoid_boxes", s.avoid_boxes},
           {"geofence_rooms", s.geofence_rooms},
           {"start", s.start},
           {"goal", json{{"x", s.goal.x()}, {"z", s.goal.y()}}}};
}

void from_json(const json& j, Scene& s) {
  check_keys(j, {"seed", "bounds", "avoid_boxes", "geofence_rooms", "start", "goal"}, "scene");
  j.at("seed").get_to(s.seed);
  j.at("bounds").get_to(s.bounds);
  j.at("avoid_boxes").get_to(s.avoid_boxes);
  j.at("geofence_rooms").get_to(s.geofence_rooms);
  j.at("start").get_to(s.start);
  const json& g = j.at("goal");
  check_keys(g, {"x", "z"}, "goal");
  s.goal = {g.at("x").get<double>(), g.at("z").get<double>()};
}

void to_json(json& j, const SceneGenConfig& c) {
  j = json{{"world_size", c.world_size},
           {"n_avoid", c.n_avoid},
           {"n_rooms", c.n_rooms},
           {"goal_min_dist", c.goal_min_dist},
           {"conflict_bias", c.conflict_bias}};
}

void from_json(const json& j, SceneGenConfig& c) {
  check_keys(j, {"world_size", "n_avoid", "n_rooms", "goal_min_dist", "conflict_bias"}, "scene config");
  read(j, "world_size", c.world_size);
  read(j, "n_avoid", c.n_avoid);
  read(j, "n_rooms", c.n_rooms);
  read(j, "goal_min_dist", c.goal_min_dist);
  read(j, "conflict_bias", c.conflict_bias);
}

void to_json(json& j, const PolicyConfig& c) {
  j = json{{"goal_weight", c.goal_weight},
           {"heading_weight", c.heading_weight},
           {"done_distance", c.done_distance},
           {"temperature", c.temperature},
           {"reverse_penalty", c.reverse_penalty}};
}

void from_json(const json& j, PolicyConfig& c) {
  check_keys(j, {"goal_weight", "heading_weight", "done_distance", "temperature", "reverse_penalty"},
             "policy config");
  read(j, "goal_weight", c.goal_weight);
  read(j, "heading_weight", c.heading_weight);
  read(j, "done_distance", c.done_distance);
  read(j, "temperature", c.temperature);
  read(j, "reverse_penalty", c.reverse_penalty);
}

void to_json(json& j, const DynamicsConfig& c) {
  j = json{{"forward_step", c.forward_step},
           {"yaw_step", c.yaw_step},
           {"noise_translation_sigma", c.noise_translation_sigma},
           {"noise_yaw_sigma", c.noise_yaw_sigma}};
}

void from_json(const json& j, DynamicsConfig& c) {
  check_keys(j, {"forward_step", "yaw_step", "noise_translation_sigma", "noise_yaw_sigma"}, "dynamics config");
  read(j, "forward_step", c.forward_step);
  read(j, "yaw_step", c.yaw_step);
  read(j, "noise_translation_sigma", c.noise_translation_sigma);
  read(j, "noise_yaw_sigma", c.noise_yaw_sigma);
}

void to_json(json& j, const SamplerSpec& c) {
  j = json{{"mode", std::string(name(c.mode))}, {"k", c.k}, {"seed", c.seed}};
}

void from_json(const json& j, SamplerSpec& c) {
  check_keys(j, {"mode", "k", "seed"}, "sampler");
  if (auto it = j.find("mode"); it != j.end()) c.mode = sampler_mode_from_name(it->get<std::string>());
  read(j, "k", c.k);
  read(j, "seed", c.seed);
}

void to_json(json& j, const Strategy& s) {
  if (std::holds_alternative<Unconstrained>(s)) {
    j = json{{"kind", "unconstrained"}};
  } else if (const auto* f = std::get_if<Filtering>(&s)) {
    j = json{{"kind", "filtering"}, {"default_action", std::string(name(f->default_action))}};
  } else if (std::holds_alternative<Hcd>(s)) {
    j = json{{"kind", "hcd"}};
  } else {
    const auto& r = std::get<Rcd>(s);
    j = json{{"kind", "rcd"}, {"alpha", r.alpha}, {"beta", r.beta}};
  }
}

void from_json(const json& j, Strategy& s) {
  const std::string kind = j.is_string() ? j.get<std::string>() : j.at("kind").get<std::string>();
  const json fields = j.is_object() ? j : json::object();
  if (kind == "unconstrained") {
    check_keys(fields, {"kind"}, "strategy");
    s = Unconstrained{};
  } else if (kind == "filtering") {
    check_keys(fields, {"kind", "default_action"}, "strategy");
    Filtering f;
    if (auto it = fields.find("default_action"); it != fields.end()) {
      f.default_action = action_from_name(it->get<std::string>());
    }
    s = f;
  } else if (kind == "hcd") {
    check_keys(fields, {"kind"}, "strategy");
    s = Hcd{};
  } else if (kind == "rcd") {
    check_keys(fields, {"kind", "alpha", "beta"}, "strategy");
    Rcd r;
    read(fields, "alpha", r.alpha);
    read(fields, "beta", r.beta);
    s = r;
  } else {
    throw ConfigError("unknown strategy kind '" + kind + "'");
  }
  validate(s);
}

void to_json(json& j, const EpisodeResult& r) {
  json states = json::array();
  for (const State& s : r.states) states.push_back(json::array({s.x, s.z, s.theta}));
  json actions = json::array();
  for (Action a : r.actions) actions.push_back(std::string(name(a)));
  j = json{{"scene_seed", r.scene_seed},
           {"strategy", r.strategy},
           {"strategy_label", label(r.strategy)},
           {"spec", std::string(name(r.spec_kind))},
           {"stl_satisfied", r.stl_satisfied},
           {"success", r.success},
           {"steps", r.steps},
           {"min_robustness", r.min_robustness},
           {"flagged_infeasible", r.flagged_infeasible},
           {"states", std::move(states)},
           {"actions", std::move(actions)}};
}

void from_json(const json& j, EpisodeResult& r) {
  check_keys(j,
             {"scene_seed", "strategy", "strategy_label", "spec", "stl_satisfied", "success", "steps",
              "min_robustness", "flagged_infeasible", "states", "actions"},
             "episode");
  j.at("scene_seed").get_to(r.scene_seed);
  j.at("strategy").get_to(r.strategy);
  r.spec_kind = spec_kind_from_name(j.at("spec").get<std::string>());
  j.at("stl_satisfied").get_to(r.stl_satisfied);
  j.at("success").get_to(r.success);
  j.at("steps").get_to(r.steps);
  j.at("min_robustness").get_to(r.min_robustness);
  j.at("flagged_infeasible").get_to(r.flagged_infeasible);
  r.states.clear();
  for (const json& s : j.at("states")) {
    if (!s.is_array() || s.size() != 3) throw ConfigError("episode state must be [x, z, theta]");
    r.states.push_back({s[0].get<double>(), s[1].get<double>(), s[2].get<double>()});
  }
  r.actions.clear();
  for (const json& a : j.at("actions")) r.actions.push_back(action_from_name(a.get<std::string>()));
}

void to_json(json& j, const BenchmarkConfig& c) {
  json kinds = json::array();
  for (SpecKind k : c.spec_kinds) kinds.push_back(std::string(name(k)));
  j = json{{"n_episodes", c.n_episodes}, {"strategies", c.strategies}, {"spec_kinds", std::move(kinds)},
           {"scene", c.scene},           {"policy", c.policy},         {"dynamics", c.dynamics},
           {"sampler", c.sampler},       {"max_steps", c.max_steps},   {"base_seed", c.base_seed}};
}

void from_json(const json& j, BenchmarkConfig& c) {
  check_keys(j,
             {"n_episodes", "strategies", "spec_kinds", "scene", "policy", "dynamics", "sampler", "max_steps",
              "base_seed"},
             "benchmark config");
  read(j, "n_episodes", c.n_episodes);
  read(j, "strategies", c.strategies);
  if (auto it = j.find("spec_kinds"); it != j.end()) {
    c.spec_kinds.clear();
    for (const json& k : *it) c.spec_kinds.push_back(spec_kind_from_name(k.get<std::string>()));
  }
  read(j, "scene", c.scene);
  read(j, "policy", c.policy);
  read(j, "dynamics", c.dynamics);
  read(j, "sampler", c.sampler);
  read(j, "max_steps", c.max_steps);
  read(j, "base_seed", c.base_seed);
}

std::string scene_to_json(const Scene& scene) { return json(scene).dump(2); }

Scene scene_from_json(const std::string& text) {
  Scene s = wrap_errors([&] { return json::parse(text).get<Scene>(); });
  s.validate();
  return s;
}

BenchmarkConfig benchmark_config_from_json(const std::string& text) {
  BenchmarkConfig c = wrap_errors([&] { return json::parse(text).get<BenchmarkConfig>(); });
  c.validate();
  return c;
}

std::string benchmark_config_to_json(const BenchmarkConfig& cfg) { return json(cfg).dump(2); }

}  // namespace stlguard
