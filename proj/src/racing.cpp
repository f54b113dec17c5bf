#include <cmath>
#include <limits>
#include <stdexcept>

#include "maximin/strategies.hpp"

namespace maximin {

namespace {

// Active arm of `action` with the largest (or smallest) mean; ties to the lowest response.
std::optional<ArmId> extreme_active(const StrategyState& state, std::size_t action, bool largest) {
  std::optional<ArmId> best;
  for (std::size_t j = 0; j < state.layout.num_responses(action); ++j) {
    const ArmId arm{action, j};
    if (!state.is_active(arm)) continue;
    if (!best) {
      best = arm;
      continue;
    }
    const double m = state.at(arm).mean();
    const double b = state.at(*best).mean();
    if (largest ? m > b : m < b) best = arm;
  }
  return best;
}

std::size_t active_in(const StrategyState& state, std::size_t action) {
  std::size_t n = 0;
  for (std::size_t j = 0; j < state.layout.num_responses(action); ++j) n += state.is_active({action, j}) ? 1 : 0;
  return n;
}

void check_round_invariant(const StrategyState& state) {
  for (std::size_t p = 0; p < state.stats.size(); ++p) {
    if (state.active[p] && state.stats[p].count != state.round)
      throw std::logic_error("racing invariant violated: active arm count differs from the round number");
  }
}

}  // namespace

StrategyState racing_init(const Layout& layout) { return StrategyState(layout); }

void racing_eliminate(StrategyState& state, const StrategyConfig& config) {
  if (state.round == 0) return;
  const double r = static_cast<double>(state.round);
  const double beta = exploration_beta(config.rate, state.round, config.delta);
  const std::size_t k = state.layout.num_actions();

  // High arms: at most one removal per action.
  for (std::size_t i = 0; i < k; ++i) {
    if (active_in(state, i) < 2) continue;
    const ArmId hi = *extreme_active(state, i, true);
    const ArmId lo = *extreme_active(state, i, false);
    if (r * elimination_divergence(state.at(hi).mean(), state.at(lo).mean()) >= beta)
      state.active[state.layout.flat(hi)] = false;
  }

  // Action elimination at the global empirical minimum.
  if (state.active_groups() < 2) return;
  std::optional<ArmId> lowest;
  for (std::size_t i = 0; i < k; ++i) {
    const auto lo = extreme_active(state, i, false);
    if (lo && (!lowest || state.at(*lo).mean() < state.at(*lowest).mean())) lowest = lo;
  }
  double rival = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < k; ++i) {
    if (i == lowest->action) continue;
    if (const auto lo = extreme_active(state, i, false)) rival = std::max(rival, state.at(*lo).mean());
  }
  if (r * elimination_divergence(rival, state.at(*lowest).mean()) >= beta) {
    for (std::size_t j = 0; j < state.layout.num_responses(lowest->action); ++j)
      state.active[state.layout.flat({lowest->action, j})] = false;
  }
}

void racing_round(StrategyState& state, const StrategyConfig& config, SamplingEnv& env,
                  const GameInstance& instance) {
  if (state.active_groups() < 2) throw std::logic_error("racing round needs at least two active actions");
  for (std::size_t p = 0; p < state.stats.size(); ++p) {
    if (!state.active[p]) continue;
    const ArmId arm = state.layout.arm(p);
    state.record(arm, env.sample(instance, arm));
  }
  ++state.round;
  if (config.debug_checks) check_round_invariant(state);
  racing_eliminate(state, config);
  if (config.debug_checks) check_round_invariant(state);
}

double racing_r0(double epsilon, double delta, std::size_t k_bar) {
  if (epsilon <= 0.0) return std::numeric_limits<double>::infinity();
  return 2.0 / (epsilon * epsilon) * std::log(4.0 * static_cast<double>(k_bar) / delta);
}

std::optional<std::uint64_t> racing_round_limit(const StrategyConfig& config, std::size_t k_bar) {
  if (config.racing_round_cap) return config.racing_round_cap;
  const double r0 = racing_r0(config.epsilon, config.delta, k_bar);
  if (!std::isfinite(r0)) return std::nullopt;
  return std::max<std::uint64_t>(1, static_cast<std::uint64_t>(std::ceil(r0)));
}

std::optional<Recommendation> racing_terminate(const StrategyState& state, const StrategyConfig& config) {
  const std::size_t k = state.layout.num_actions();
  if (state.active_groups() == 1) {
    for (std::size_t i = 0; i < k; ++i)
      if (active_in(state, i) > 0) return Recommendation{i, StopReason::confidence};
  }
  const auto limit = racing_round_limit(config, state.layout.num_arms());
  if (!limit || state.round < *limit) return std::nullopt;
  std::size_t best = 0;
  double best_value = -1.0;
  for (std::size_t i = 0; i < k; ++i) {
    const auto lo = extreme_active(state, i, false);
    if (!lo) continue;
    const double v = state.at(*lo).mean();
    if (v > best_value) {
      best_value = v;
      best = i;
    }
  }
  return Recommendation{best, StopReason::cap};
}

double c_K(const Layout& layout, bool refined) {
  if (refined) return static_cast<double>(layout.num_actions() * layout.max_responses());
  const double kbar = static_cast<double>(layout.num_arms());
  return kbar * kbar;
}

}  // namespace maximin
