#pragma once

#include <string>

#include <json.hpp>

#include "stlguard/decode.hpp"
#include "stlguard/harness.hpp"
#include "stlguard/scene.hpp"

// JSON mappings for the public value types. Readers fill missing keys with
// defaults and reject unknown keys with ConfigError.

namespace stlguard {

void to_json(nlohmann::json& j, const Box& b);
void from_json(const nlohmann::json& j, Box& b);
void to_json(nlohmann::json& j, const State& s);
void from_json(const nlohmann::json& j, State& s);
void to_json(nlohmann::json& j, const Scene& s);
void from_json(const nlohmann::json& j, Scene& s);
void to_json(nlohmann::json& j, const SceneGenConfig& c);
void from_json(const nlohmann::json& j, SceneGenConfig& c);
void to_json(nlohmann::json& j, const PolicyConfig& c);
void from_json(const nlohmann::json& j, PolicyConfig& c);
void to_json(nlohmann::json& j, const DynamicsConfig& c);
void from_json(const nlohmann::json& j, DynamicsConfig& c);
void to_json(nlohmann::json& j, const SamplerSpec& c);
void from_json(const nlohmann::json& j, SamplerSpec& c);
void to_json(nlohmann::json& j, const Strategy& s);
void from_json(const nlohmann::json& j, Strategy& s);
void to_json(nlohmann::json& j, const EpisodeResult& r);
void from_json(const nlohmann::json& j, EpisodeResult& r);
void to_json(nlohmann::json& j, const BenchmarkConfig& c);
void from_json(const nlohmann::json& j, BenchmarkConfig& c);

/// Scene document; the loader validates every scene invariant.
std::string scene_to_json(const Scene& scene);
Scene scene_from_json(const std::string& text);

/// Parses and validates a benchmark configuration document.
BenchmarkConfig benchmark_config_from_json(const std::string& text);
std::string benchmark_config_to_json(const BenchmarkConfig& cfg);

}  // namespace stlguard
