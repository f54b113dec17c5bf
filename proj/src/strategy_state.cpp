#include <algorithm>
#include <cctype>
#include <stdexcept>
#include <string>

#include "maximin/strategies.hpp"

namespace maximin {

std::string_view to_string(Algorithm algorithm) {
  switch (algorithm) {
    case Algorithm::m_lucb: return "m-lucb";
    case Algorithm::m_kl_lucb: return "m-kl-lucb";
    case Algorithm::m_chernoff: return "m-chernoff";
    case Algorithm::m_racing: return "m-racing";
    case Algorithm::kl_lucb_baseline: return "kl-lucb";
  }
  return "unknown";
}

Algorithm parse_algorithm(std::string_view name) {
  std::string n(name);
  std::replace(n.begin(), n.end(), '_', '-');
  std::transform(n.begin(), n.end(), n.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (n == "m-lucb") return Algorithm::m_lucb;
  if (n == "m-kl-lucb" || n == "m-kllucb") return Algorithm::m_kl_lucb;
  if (n == "m-chernoff") return Algorithm::m_chernoff;
  if (n == "m-racing") return Algorithm::m_racing;
  if (n == "kl-lucb" || n == "kl-lucb-baseline") return Algorithm::kl_lucb_baseline;
  throw ValidationError("unknown algorithm '" + std::string(name) + "'");
}

void StrategyConfig::validate() const {
  if (!(delta > 0.0 && delta < 1.0)) throw ValidationError("delta must lie in (0,1)");
  if (!(epsilon >= 0.0)) throw ValidationError("epsilon must be non-negative");
  if (sample_cap < 1) throw ValidationError("sample cap must be positive");
}

StrategyState::StrategyState(Layout l) : layout(std::move(l)), stats(layout.num_arms()), active(layout.num_arms(), true) {}

void StrategyState::record(ArmId arm, int observation) {
  at(arm).add(observation);
  ++t;
}

bool StrategyState::all_drawn() const {
  return std::all_of(stats.begin(), stats.end(), [](const ArmStats& s) { return s.count > 0; });
}

std::size_t StrategyState::active_groups() const {
  std::size_t groups = 0;
  for (std::size_t i = 0; i < layout.num_actions(); ++i) {
    for (std::size_t j = 0; j < layout.num_responses(i); ++j) {
      if (is_active({i, j})) {
        ++groups;
        break;
      }
    }
  }
  return groups;
}

std::vector<ConfidenceInterval> current_intervals(const StrategyState& state, const StrategyConfig& config) {
  const double beta = exploration_beta(config.rate, std::max<std::uint64_t>(state.t, 1), config.delta);
  std::vector<ConfidenceInterval> out;
  out.reserve(state.stats.size());
  for (const ArmStats& s : state.stats) {
    if (s.count == 0) throw std::logic_error("confidence interval requested for an undrawn arm");
    out.push_back(config.interval == IntervalKind::kl ? kl_interval(s, beta)
                                                      : hoeffding_interval(s, beta, config.clip_hoeffding));
  }
  return out;
}

std::size_t empirical_maximin(const StrategyState& state) {
  std::size_t best = 0;
  double best_value = -1.0;
  for (std::size_t i = 0; i < state.layout.num_actions(); ++i) {
    double worst = 2.0;
    for (std::size_t j = 0; j < state.layout.num_responses(i); ++j) worst = std::min(worst, state.at({i, j}).mean());
    if (worst > best_value) {
      best_value = worst;
      best = i;
    }
  }
  return best;
}

}  // namespace maximin
