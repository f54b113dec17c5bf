#include <stdexcept>

#include "maximin/strategies.hpp"

namespace maximin {

// LUCB mirrored to find the lowest-mean arm among the four. The maximin
// action is then the one not containing that arm.
BaselineStep kl_lucb_baseline_step(const StrategyState& state, const StrategyConfig& config) {
  const Layout& layout = state.layout;
  if (!(layout.num_actions() == 2 && layout.num_responses(0) == 2 && layout.num_responses(1) == 2))
    throw std::invalid_argument("the KL-LUCB baseline is defined for 2x2 games only");
  StrategyConfig kl_config = config;
  kl_config.interval = IntervalKind::kl;
  const std::vector<ConfidenceInterval> ci = current_intervals(state, kl_config);

  std::size_t worst = 0;
  for (std::size_t p = 1; p < state.stats.size(); ++p)
    if (state.stats[p].mean() < state.stats[worst].mean()) worst = p;
  std::size_t challenger = worst == 0 ? 1 : 0;
  for (std::size_t p = 0; p < state.stats.size(); ++p)
    if (p != worst && ci[p].lower < ci[challenger].lower) challenger = p;

  BaselineStep step{layout.arm(worst), layout.arm(challenger), std::nullopt};
  if (ci[worst].upper < ci[challenger].lower) step.recommendation = 1 - step.worst.action;
  return step;
}

}  // namespace maximin
