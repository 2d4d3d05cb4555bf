#include "stlguard/decode.hpp"

#include <array>
#include <charconv>
#include <chrono>

#include "stlguard/error.hpp"

namespace stlguard {
namespace {

std::string number_text(double v) {
  std::array<char, 64> buf{};
  auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), end);
}

DynamicsConfig noise_free(const DynamicsConfig& dyn) {
  DynamicsConfig out = dyn;
  out.noise_translation_sigma = 0.0;
  out.noise_yaw_sigma = 0.0;
  return out;
}

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

}  // namespace

std::string label(const Strategy& s) {
  return std::visit(overloaded{
                        [](const Unconstrained&) -> std::string { return "unconstrained"; },
                        [](const Filtering& f) -> std::string {
                          return f.default_action == Action::RotateLeft
                                     ? "filtering"
                                     : "filtering(" + std::string(name(f.default_action)) + ")";
                        },
                        [](const Hcd&) -> std::string { return "hcd"; },
                        [](const Rcd& r) -> std::string {
                          return "rcd(alpha=" + number_text(r.alpha) + ",beta=" + number_text(r.beta) + ")";
                        },
                    },
                    s);
}

void validate(const Strategy& s) {
  if (const auto* f = std::get_if<Filtering>(&s)) {
    if (!preserves_position(f->default_action)) {
      throw ConfigError("filtering fallback must keep the position fixed (RotateLeft, RotateRight or Done)");
    }
  }
  if (const auto* r = std::get_if<Rcd>(&s)) {
    if (!(r->alpha > 0.0)) throw ConfigError("rcd alpha must be positive");
    if (!(r->beta >= 0.0)) throw ConfigError("rcd beta must be >= 0");
  }
}

ActionVector successor_robustness(const State& s, const stl::OnlineMonitor& monitor, const DynamicsConfig& dyn) {
  const auto successors = predict_successors(s, noise_free(dyn));
  ActionVector r;
  for (Action a : kActions) r(index(a)) = monitor.peek(state_sample(successors[index(a)]));
  return r;
}

Logits mask_logits_hcd(const Logits& logits, const State& s, const stl::OnlineMonitor& monitor,
                       const DynamicsConfig& dyn) {
  return mask_violations(logits, successor_robustness(s, monitor, dyn));
}

Logits reweight_logits_rcd(const Logits& logits, const State& s, const stl::OnlineMonitor& monitor,
                           const DynamicsConfig& dyn, double alpha, double beta) {
  if (beta == 0.0) return logits;
  return shift_by_robustness(logits, successor_robustness(s, monitor, dyn), alpha, beta);
}

Action filter_action(const Logits& logits, const State& s, const stl::OnlineMonitor& monitor,
                     const DynamicsConfig& dyn, Action fallback, const SamplerSpec& sampler, Rng& rng) {
  const Action proposed = sample(logits, sampler, rng);
  const State next = step(s, proposed, noise_free(dyn));
  return monitor.peek(state_sample(next)) < 0.0 ? fallback : proposed;
}

std::pair<Action, DecodeStepTrace> decode_step(const Strategy& strategy, const State& s,
                                               const stl::OnlineMonitor& monitor, const StepContext& ctx,
                                               Rng& rng) {
  DecodeStepTrace trace;
  trace.raw_logits = compute_logits(s, ctx.scene, ctx.policy, noise_free(ctx.dynamics));

  const auto t0 = std::chrono::steady_clock::now();
  trace.robustness_per_action = successor_robustness(s, monitor, ctx.dynamics);
  trace.spec_eval_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  for (std::size_t i = 0; i < kNumActions; ++i) {
    trace.violated_mask[i] = trace.robustness_per_action(static_cast<Eigen::Index>(i)) < 0.0;
  }

  std::visit(overloaded{
                 [&](const Unconstrained&) {
                   trace.adjusted_logits = trace.raw_logits;
                   trace.chosen = sample(trace.adjusted_logits, ctx.sampler, rng);
                 },
                 [&](const Filtering& f) {
                   trace.adjusted_logits = trace.raw_logits;
                   const Action proposed = sample(trace.raw_logits, ctx.sampler, rng);
                   trace.chosen = trace.violated_mask[index(proposed)] ? f.default_action : proposed;
                 },
                 [&](const Hcd&) {
                   trace.adjusted_logits = mask_violations(trace.raw_logits, trace.robustness_per_action);
                   if (std::all_of(trace.violated_mask.begin(), trace.violated_mask.end(), [](bool v) { return v; })) {
                     trace.infeasible = true;
                     trace.chosen = kActions[static_cast<std::size_t>(argmax(trace.robustness_per_action))];
                   } else {
                     trace.chosen = sample(trace.adjusted_logits, ctx.sampler, rng);
                   }
                 },
                 [&](const Rcd& r) {
                   trace.adjusted_logits =
                       shift_by_robustness(trace.raw_logits, trace.robustness_per_action, r.alpha, r.beta);
                   trace.chosen = sample(trace.adjusted_logits, ctx.sampler, rng);
                 },
             },
             strategy);
  return {trace.chosen, trace};
}

bool operator==(const EpisodeResult& a, const EpisodeResult& b) {
  return a.scene_seed == b.scene_seed && a.strategy == b.strategy && a.spec_kind == b.spec_kind &&
         a.stl_satisfied == b.stl_satisfied && a.success == b.success && a.steps == b.steps &&
         a.min_robustness == b.min_robustness && a.flagged_infeasible == b.flagged_infeasible &&
         a.states == b.states && a.actions == b.actions;
}

EpisodeRngs episode_rngs(std::uint64_t sampler_seed, std::uint64_t scene_seed, SpecKind spec) {
  const auto lo = [](std::uint64_t v) { return static_cast<std::uint32_t>(v); };
  const auto hi = [](std::uint64_t v) { return static_cast<std::uint32_t>(v >> 32); };
  const auto kind = static_cast<std::uint32_t>(spec);
  std::seed_seq sampling{lo(sampler_seed), hi(sampler_seed), lo(scene_seed), hi(scene_seed), kind, 1u};
  std::seed_seq noise{lo(sampler_seed), hi(sampler_seed), lo(scene_seed), hi(scene_seed), kind, 2u};
  return {Rng(sampling), Rng(noise)};
}

EpisodeResult rollout_episode(const Strategy& strategy, const Scene& scene, SpecKind spec,
                              const RolloutConfig& cfg, EpisodeRngs& rngs) {
  validate(strategy);
  cfg.dynamics.validate();
  cfg.policy.validate();
  cfg.sampler.validate();
  if (cfg.max_steps < 1) throw ConfigError("max_steps must be >= 1");

  const stl::Formula formula = build_spec(scene, spec);
  stl::OnlineMonitor monitor(formula);
  const bool noisy = cfg.dynamics.noise_translation_sigma > 0.0 || cfg.dynamics.noise_yaw_sigma > 0.0;
  const StepContext ctx{scene, cfg.policy, cfg.dynamics, cfg.sampler};

  EpisodeResult result;
  result.scene_seed = scene.seed;
  result.strategy = strategy;
  result.spec_kind = spec;
  result.states.reserve(cfg.max_steps + 1);
  result.actions.reserve(cfg.max_steps);

  State s = scene.start;
  result.states.push_back(s);
  monitor.append(state_sample(s));

  for (std::size_t k = 0; k < cfg.max_steps; ++k) {
    auto [action, trace] = decode_step(strategy, s, monitor, ctx, rngs.sampling);
    result.flagged_infeasible = result.flagged_infeasible || trace.infeasible;
    result.spec_eval_seconds += trace.spec_eval_seconds;
    ++result.spec_evals;
    if (cfg.keep_traces) result.traces.push_back(trace);
    result.actions.push_back(action);
    if (action == Action::Done) break;
    s = noisy ? step_noisy(s, action, cfg.dynamics, rngs.noise) : step(s, action, cfg.dynamics);
    result.states.push_back(s);
    monitor.append(state_sample(s));
  }

  result.steps = result.actions.size();
  const stl::Trajectory traj = state_trajectory(result.states);
  result.min_robustness = stl::robustness(formula, traj, 0);
  result.stl_satisfied = result.min_robustness >= 0.0;
  const std::optional<Action> last =
      result.actions.empty() ? std::nullopt : std::optional<Action>(result.actions.back());
  result.success = check_success(traj, last, scene);
  return result;
}

}  // namespace stlguard
