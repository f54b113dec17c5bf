#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "maximin/bounds.hpp"
#include "maximin/model.hpp"
#include "maximin/rng.hpp"

namespace maximin {

enum class Algorithm { m_lucb, m_kl_lucb, m_chernoff, m_racing, kl_lucb_baseline };

std::string_view to_string(Algorithm algorithm);
Algorithm parse_algorithm(std::string_view name);

enum class IntervalKind { hoeffding, kl };

// Two-action variant of M-LUCB: draw one of {H_t, S_t} per step.
enum class TwoActionMode { off, least_drawn, most_drawn };

struct StrategyConfig {
  double delta = 0.1;
  double epsilon = 0.0;
  ExplorationRate rate = ExplorationRate::practical();
  IntervalKind interval = IntervalKind::hoeffding;
  bool clip_hoeffding = false;
  TwoActionMode two_action = TwoActionMode::off;
  // Replaces the racing round limit r0 = (2/eps^2) log(4 Kbar / delta).
  std::optional<std::uint64_t> racing_round_cap;
  std::uint64_t sample_cap = 10'000'000;
  // Re-verify state invariants after every step; throws std::logic_error.
  bool debug_checks = false;

  void validate() const;
};

// Everything an algorithm knows mid-run. It holds no true means.
struct StrategyState {
  Layout layout;
  std::vector<ArmStats> stats;  // flat arm order
  std::uint64_t t = 0;

  // Racing only: active arms and completed rounds.
  std::vector<bool> active;
  std::uint64_t round = 0;

  StrategyState() = default;
  explicit StrategyState(Layout l);

  const ArmStats& at(ArmId arm) const { return stats[layout.flat(arm)]; }
  ArmStats& at(ArmId arm) { return stats[layout.flat(arm)]; }
  bool is_active(ArmId arm) const { return active[layout.flat(arm)]; }
  void record(ArmId arm, int observation);
  bool all_drawn() const;
  std::size_t active_groups() const;
};

// Confidence intervals for every arm at beta(t, delta), flat order.
std::vector<ConfidenceInterval> current_intervals(const StrategyState& state, const StrategyConfig& config);

// argmax_i min_j empirical mean; ties to the lowest index.
std::size_t empirical_maximin(const StrategyState& state);

struct ArmPair {
  ArmId h;  // LCB-minimising response of the empirical maximin action
  ArmId s;  // max-UCB challenger among the other actions
};

ArmPair mlucb_select(const StrategyState& state, const StrategyConfig& config);
ArmPair mlucb_select(const StrategyState& state, const std::vector<ConfidenceInterval>& intervals);

// Stops when min_i [max_{i'!=i} min_j' U_{i',j'} - min_j L_{i,j}] < epsilon;
// the recommendation is the empirical maximin action.
std::optional<std::size_t> mlucb_stop(const StrategyState& state, const StrategyConfig& config);
std::optional<std::size_t> mlucb_stop(const StrategyState& state, const std::vector<ConfidenceInterval>& intervals,
                                      double epsilon);

// Least-drawn of {H_t, S_t} (ties to H_t), or most-drawn when asked.
ArmId mlucb_two_action_select(const StrategyState& state, const StrategyConfig& config);
ArmId mlucb_two_action_select(const StrategyState& state, const std::vector<ConfidenceInterval>& intervals,
                              TwoActionMode mode);

struct ChernoffValue {
  double value;        // max_i min_{i'!=i} max_j' min_j Z_{(i,j),(i',j')}
  std::size_t action;  // outer argmax
};

ChernoffValue chernoff_statistic(const StrategyState& state);
// GLRT stopping rule; only defined for epsilon = 0.
std::optional<std::size_t> chernoff_stop(const StrategyState& state, const StrategyConfig& config);

// Racing.
StrategyState racing_init(const Layout& layout);
// Elimination tests on the current round's means (no draws).
void racing_eliminate(StrategyState& state, const StrategyConfig& config);
// Draw every active arm once, then eliminate.
void racing_round(StrategyState& state, const StrategyConfig& config, SamplingEnv& env,
                  const GameInstance& instance);

struct Recommendation {
  std::size_t action;
  StopReason reason;
};

std::optional<Recommendation> racing_terminate(const StrategyState& state, const StrategyConfig& config);
// r0 = (2/eps^2) log(4 Kbar / delta); +inf for eps = 0.
double racing_r0(double epsilon, double delta, std::size_t k_bar);
// Round at which racing stops without a winner: ceil(r0), or the override.
std::optional<std::uint64_t> racing_round_limit(const StrategyConfig& config, std::size_t k_bar);

// Constant in the racing threshold log(4 C_K t / delta): Kbar^2, or K * max_i K_i if refined.
double c_K(const Layout& layout, bool refined = false);

// KL-LUCB for the worst of four arms.
struct BaselineStep {
  ArmId worst;
  ArmId challenger;
  std::optional<std::size_t> recommendation;
};

BaselineStep kl_lucb_baseline_step(const StrategyState& state, const StrategyConfig& config);

RunResult run_strategy(const GameInstance& instance, Algorithm algorithm, const StrategyConfig& config,
                       SamplingEnv& env);

}  // namespace maximin
