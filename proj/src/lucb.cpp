#include <algorithm>
#include <limits>
#include <stdexcept>

#include "maximin/strategies.hpp"

namespace maximin {

namespace {

void require_all_drawn(const StrategyState& state) {
  if (!state.all_drawn()) throw std::logic_error("every arm must be drawn once before a decision");
}

std::size_t lowest_lcb_response(const StrategyState& state, const std::vector<ConfidenceInterval>& ci,
                                std::size_t action) {
  std::size_t best = 0;
  for (std::size_t j = 1; j < state.layout.num_responses(action); ++j)
    if (ci[state.layout.flat({action, j})].lower < ci[state.layout.flat({action, best})].lower) best = j;
  return best;
}

}  // namespace

ArmPair mlucb_select(const StrategyState& state, const std::vector<ConfidenceInterval>& intervals) {
  require_all_drawn(state);
  const std::size_t leader = empirical_maximin(state);
  ArmPair pair{{leader, lowest_lcb_response(state, intervals, leader)}, {}};
  double best_ucb = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < state.layout.num_actions(); ++i) {
    if (i == leader) continue;
    const ArmId candidate{i, lowest_lcb_response(state, intervals, i)};
    const double u = intervals[state.layout.flat(candidate)].upper;
    if (u > best_ucb) {
      best_ucb = u;
      pair.s = candidate;
    }
  }
  return pair;
}

ArmPair mlucb_select(const StrategyState& state, const StrategyConfig& config) {
  return mlucb_select(state, current_intervals(state, config));
}

std::optional<std::size_t> mlucb_stop(const StrategyState& state, const std::vector<ConfidenceInterval>& intervals,
                                      double epsilon) {
  require_all_drawn(state);
  const std::size_t k = state.layout.num_actions();
  std::vector<double> min_lower(k, std::numeric_limits<double>::infinity());
  std::vector<double> min_upper(k, std::numeric_limits<double>::infinity());
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < state.layout.num_responses(i); ++j) {
      const ConfidenceInterval& ci = intervals[state.layout.flat({i, j})];
      min_lower[i] = std::min(min_lower[i], ci.lower);
      min_upper[i] = std::min(min_upper[i], ci.upper);
    }
  }
  double criterion = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < k; ++i) {
    double rival = -std::numeric_limits<double>::infinity();
    for (std::size_t other = 0; other < k; ++other)
      if (other != i) rival = std::max(rival, min_upper[other]);
    criterion = std::min(criterion, rival - min_lower[i]);
  }
  if (criterion < epsilon) return empirical_maximin(state);
  return std::nullopt;
}

std::optional<std::size_t> mlucb_stop(const StrategyState& state, const StrategyConfig& config) {
  return mlucb_stop(state, current_intervals(state, config), config.epsilon);
}

ArmId mlucb_two_action_select(const StrategyState& state, const std::vector<ConfidenceInterval>& intervals,
                              TwoActionMode mode) {
  if (state.layout.num_actions() != 2) throw std::invalid_argument("two-action variant needs exactly two actions");
  const ArmPair pair = mlucb_select(state, intervals);
  const std::uint64_t nh = state.at(pair.h).count;
  const std::uint64_t ns = state.at(pair.s).count;
  if (mode == TwoActionMode::most_drawn) return ns > nh ? pair.s : pair.h;
  return ns < nh ? pair.s : pair.h;
}

ArmId mlucb_two_action_select(const StrategyState& state, const StrategyConfig& config) {
  return mlucb_two_action_select(state, current_intervals(state, config), config.two_action);
}

ChernoffValue chernoff_statistic(const StrategyState& state) {
  require_all_drawn(state);
  const Layout& layout = state.layout;
  const std::size_t n = layout.num_arms();
  // Only cross-action pairs are used; z[p*n+q] = Z_{p,q}.
  std::vector<std::size_t> action_of(n);
  for (std::size_t p = 0; p < n; ++p) action_of[p] = layout.arm(p).action;
  std::vector<double> z(n * n, 0.0);
  for (std::size_t p = 0; p < n; ++p) {
    for (std::size_t q = p + 1; q < n; ++q) {
      if (action_of[q] == action_of[p]) continue;
      const double v = glrt_statistic(state.stats[p], state.stats[q]);
      z[p * n + q] = v;
      z[q * n + p] = -v;
    }
  }
  ChernoffValue best{-std::numeric_limits<double>::infinity(), 0};
  for (std::size_t i = 0; i < layout.num_actions(); ++i) {
    double over_rivals = std::numeric_limits<double>::infinity();
    for (std::size_t other = 0; other < layout.num_actions(); ++other) {
      if (other == i) continue;
      double over_responses = -std::numeric_limits<double>::infinity();
      for (std::size_t jp = 0; jp < layout.num_responses(other); ++jp) {
        const std::size_t q = layout.flat({other, jp});
        double weakest = std::numeric_limits<double>::infinity();
        for (std::size_t j = 0; j < layout.num_responses(i); ++j)
          weakest = std::min(weakest, z[layout.flat({i, j}) * n + q]);
        over_responses = std::max(over_responses, weakest);
      }
      over_rivals = std::min(over_rivals, over_responses);
    }
    if (over_rivals > best.value) best = {over_rivals, i};
  }
  return best;
}

std::optional<std::size_t> chernoff_stop(const StrategyState& state, const StrategyConfig& config) {
  if (config.epsilon > 0.0) throw std::invalid_argument("the GLRT stopping rule is only defined for epsilon = 0");
  const ChernoffValue cv = chernoff_statistic(state);
  const double beta = exploration_beta(config.rate, std::max<std::uint64_t>(state.t, 1), config.delta);
  if (cv.value > beta) return cv.action;
  return std::nullopt;
}

}  // namespace maximin
