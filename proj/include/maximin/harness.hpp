#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "maximin/bounds.hpp"
#include "maximin/model.hpp"
#include "maximin/strategies.hpp"

namespace maximin {

enum class OutputFormat { csv, json };

OutputFormat parse_output_format(std::string_view name);

// Fills instance-dependent rate constants: K1 and K for chernoff-pac, Kbar for
// chernoff-kbar, C_K for racing, and C_alpha for corollary1 when C is unset (0).
ExplorationRate instantiate_rate(const ExplorationRate& rate, const GameInstance& instance, bool refined_ck = false);

// A corollary1 rate whose C is computed per instance by instantiate_rate.
inline ExplorationRate unresolved_corollary1(double alpha) {
  if (!(alpha > 0.0)) throw ValidationError("corollary1 rate needs alpha > 0");
  ExplorationRate r;
  r.kind = RateKind::corollary1;
  r.alpha = alpha;
  r.C = 0.0;
  return r;
}

struct NamedInstance {
  std::string name;
  GameInstance instance;
};

struct ExperimentConfig {
  std::vector<NamedInstance> instances;
  std::vector<Algorithm> algorithms;
  double delta = 0.1;
  double epsilon = 0.0;
  std::uint64_t reps = 10000;
  std::uint64_t seed = 1;
  ExplorationRate rate = ExplorationRate::practical();
  // Worker threads; 0 means one per hardware thread. MAXIMIN_THREADS overrides.
  std::size_t parallelism = 0;
  OutputFormat out = OutputFormat::csv;
  std::uint64_t cap = 10'000'000;
  // Single-draw mode for the M-LUCB family on two-action instances; other
  // cells ignore it.
  TwoActionMode two_action = TwoActionMode::off;
  // Racing rate constant K * max K_i instead of Kbar^2.
  bool refined_ck = false;

  void validate() const;
};

// Keys: instances (paths, resolved against base_dir, or inline {"name", "means"}
// objects), algorithms, delta, epsilon, reps, seed, rate, alpha, C, b, c,
// parallelism, out, cap, two_action, refined_ck.
ExperimentConfig parse_experiment_config(std::string_view json_text, const std::filesystem::path& base_dir = {});
ExperimentConfig load_experiment_config(const std::filesystem::path& path);

struct ArmSummary {
  ArmId arm;
  double mean_draws = 0.0;
  double se_draws = 0.0;
  friend bool operator==(const ArmSummary&, const ArmSummary&) = default;
};

struct CellReport {
  std::string instance;
  Algorithm algorithm = Algorithm::m_lucb;
  std::vector<std::size_t> row_sizes;
  std::vector<ArmSummary> arms;  // flat order
  double mean_tau = 0.0;
  double se_tau = 0.0;
  double error_rate = 0.0;
  std::uint64_t reps = 0;
  std::uint64_t errors = 0;
  std::uint64_t cap_hits = 0;
  friend bool operator==(const CellReport&, const CellReport&) = default;
};

struct AggregateReport {
  std::vector<CellReport> cells;
  friend bool operator==(const AggregateReport&, const AggregateReport&) = default;
};

// Threads actually used: MAXIMIN_THREADS if set, else the configured value,
// else hardware concurrency.
std::size_t effective_parallelism(const ExperimentConfig& config);

// The configuration for one cell, as handed to run_strategy.
StrategyConfig cell_strategy_config(const ExperimentConfig& config, const GameInstance& instance, Algorithm algorithm);

// Replication k of cell (instance i, algorithm a) runs on
// derive_seed(seed, i, id(a), k), with id the algorithm's enum value. The
// report depends only on the config, never on thread count or scheduling.
AggregateReport run_experiment(const ExperimentConfig& config);

// Reduces per-replication results in index order.
CellReport aggregate(const std::string& instance, Algorithm algorithm, const Layout& layout,
                     const std::vector<RunResult>& results);

std::string emit(const AggregateReport& report, OutputFormat format);
AggregateReport parse_report_json(std::string_view json_text);

}  // namespace maximin
