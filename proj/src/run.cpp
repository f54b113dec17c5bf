#include <numeric>
#include <stdexcept>

#include "maximin/strategies.hpp"

namespace maximin {

namespace {

RunResult finish(const GameInstance& instance, const StrategyState& state, std::size_t recommended,
                 StopReason reason, double epsilon) {
  RunResult result;
  result.tau = state.t;
  result.draws.reserve(state.stats.size());
  for (const ArmStats& s : state.stats) result.draws.push_back(s.count);
  if (std::accumulate(result.draws.begin(), result.draws.end(), std::uint64_t{0}) != result.tau)
    throw std::logic_error("draw counts do not sum to the stopping time");
  result.recommended = recommended;
  result.stopped_by = reason;
  result.correct = is_eps_optimal(instance, recommended, epsilon);
  return result;
}

RunResult run_racing(const GameInstance& instance, const StrategyConfig& config, SamplingEnv& env) {
  StrategyState state = racing_init(instance.layout());
  for (;;) {
    if (const auto rec = racing_terminate(state, config))
      return finish(instance, state, rec->action, rec->reason, config.epsilon);
    std::uint64_t needed = 0;
    for (bool a : state.active) needed += a ? 1 : 0;
    if (state.t + needed > config.sample_cap) {
      // Same choice as the r0 fallback: best active action by its worst active arm.
      StrategyConfig forced = config;
      forced.racing_round_cap = state.round;
      return finish(instance, state, racing_terminate(state, forced)->action, StopReason::cap, config.epsilon);
    }
    racing_round(state, config, env, instance);
  }
}

RunResult run_baseline(const GameInstance& instance, const StrategyConfig& config, SamplingEnv& env) {
  StrategyState state(instance.layout());
  for (const ArmId arm : state.layout.arms()) state.record(arm, env.sample(instance, arm));
  for (;;) {
    const BaselineStep step = kl_lucb_baseline_step(state, config);
    if (step.recommendation) return finish(instance, state, *step.recommendation, StopReason::confidence, config.epsilon);
    if (state.t + 2 > config.sample_cap)
      return finish(instance, state, 1 - step.worst.action, StopReason::cap, config.epsilon);
    state.record(step.worst, env.sample(instance, step.worst));
    state.record(step.challenger, env.sample(instance, step.challenger));
  }
}

RunResult run_lucb_family(const GameInstance& instance, Algorithm algorithm, const StrategyConfig& config,
                          SamplingEnv& env) {
  StrategyState state(instance.layout());
  for (const ArmId arm : state.layout.arms()) state.record(arm, env.sample(instance, arm));
  const bool single_draw = config.two_action != TwoActionMode::off;
  for (;;) {
    const std::vector<ConfidenceInterval> ci = current_intervals(state, config);
    const std::optional<std::size_t> rec =
        algorithm == Algorithm::m_chernoff ? chernoff_stop(state, config) : mlucb_stop(state, ci, config.epsilon);
    if (rec) return finish(instance, state, *rec, StopReason::confidence, config.epsilon);
    if (state.t + (single_draw ? 1 : 2) > config.sample_cap)
      return finish(instance, state, empirical_maximin(state), StopReason::cap, config.epsilon);

    if (single_draw) {
      const ArmId arm = mlucb_two_action_select(state, ci, config.two_action);
      state.record(arm, env.sample(instance, arm));
    } else {
      const ArmPair pair = mlucb_select(state, ci);
      state.record(pair.h, env.sample(instance, pair.h));
      state.record(pair.s, env.sample(instance, pair.s));
    }
  }
}

}  // namespace

RunResult run_strategy(const GameInstance& instance, Algorithm algorithm, const StrategyConfig& config,
                       SamplingEnv& env) {
  config.validate();
  StrategyConfig cfg = config;
  switch (algorithm) {
    case Algorithm::m_lucb: cfg.interval = IntervalKind::hoeffding; break;
    case Algorithm::m_kl_lucb:
    case Algorithm::m_chernoff:
    case Algorithm::kl_lucb_baseline: cfg.interval = IntervalKind::kl; break;
    case Algorithm::m_racing: break;
  }
  if (algorithm == Algorithm::m_chernoff && cfg.epsilon > 0.0)
    throw ValidationError("m-chernoff supports epsilon = 0 only");
  if (algorithm == Algorithm::kl_lucb_baseline && !instance.is_two_by_two())
    throw ValidationError("the kl-lucb baseline needs a 2x2 instance");
  if (cfg.two_action != TwoActionMode::off) {
    if (instance.num_actions() != 2) throw ValidationError("the single-draw variant needs exactly two actions");
    if (algorithm == Algorithm::m_racing || algorithm == Algorithm::kl_lucb_baseline)
      throw ValidationError("the single-draw variant applies to the M-LUCB family only");
  }

  switch (algorithm) {
    case Algorithm::m_racing: return run_racing(instance, cfg, env);
    case Algorithm::kl_lucb_baseline: return run_baseline(instance, cfg, env);
    default: return run_lucb_family(instance, algorithm, cfg, env);
  }
}

}  // namespace maximin
