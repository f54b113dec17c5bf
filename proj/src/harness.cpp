#include "maximin/harness.hpp"

#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <mutex>
#include <sstream>
#include <thread>

#include "json.hpp"
#include "maximin/rng.hpp"

namespace maximin {

using nlohmann::json;

OutputFormat parse_output_format(std::string_view name) {
  if (name == "csv") return OutputFormat::csv;
  if (name == "json") return OutputFormat::json;
  throw ValidationError("unknown output format '" + std::string(name) + "' (expected csv or json)");
}

void ExperimentConfig::validate() const {
  if (instances.empty()) throw ValidationError("experiment needs at least one instance");
  if (algorithms.empty()) throw ValidationError("experiment needs at least one algorithm");
  if (reps < 1) throw ValidationError("reps must be at least 1");
  if (!(delta > 0.0 && delta < 1.0)) throw ValidationError("delta must lie in (0,1)");
  if (!(epsilon >= 0.0)) throw ValidationError("epsilon must be non-negative");
  if (cap < 1) throw ValidationError("cap must be at least 1");
}

namespace {

TwoActionMode parse_two_action(std::string_view name) {
  if (name == "off") return TwoActionMode::off;
  if (name == "least-drawn" || name == "least_drawn") return TwoActionMode::least_drawn;
  if (name == "most-drawn" || name == "most_drawn") return TwoActionMode::most_drawn;
  throw ValidationError("unknown two_action mode '" + std::string(name) + "'");
}

template <typename T>
T get_or(const json& doc, const char* key, T fallback) {
  if (!doc.contains(key)) return fallback;
  try {
    return doc.at(key).get<T>();
  } catch (const json::exception&) {
    throw ValidationError(std::string("config field \"") + key + "\" has the wrong type");
  }
}

ExplorationRate rate_from(const json& doc) {
  const RateKind kind = parse_rate_kind(get_or<std::string>(doc, "rate", "practical"));
  switch (kind) {
    case RateKind::practical: return ExplorationRate::practical();
    case RateKind::corollary1: {
      const double alpha = get_or(doc, "alpha", 1.0);
      if (!doc.contains("C")) return unresolved_corollary1(alpha);
      return ExplorationRate::corollary1(get_or(doc, "C", 1.0), alpha);
    }
    case RateKind::corollary2: return ExplorationRate::corollary2(get_or(doc, "b", 0.0), get_or(doc, "c", 0.0));
    default:
      // Instance-dependent constants are filled per cell.
      ExplorationRate r;
      r.kind = kind;
      return r;
  }
}

double std_error(double sum_sq_dev, std::uint64_t n) {
  if (n < 2) return 0.0;
  const double nn = static_cast<double>(n);
  return std::sqrt(sum_sq_dev / (nn - 1.0) / nn);
}

}  // namespace

ExplorationRate instantiate_rate(const ExplorationRate& rate, const GameInstance& instance, bool refined_ck) {
  const Layout& layout = instance.layout();
  switch (rate.kind) {
    case RateKind::corollary1:
      if (rate.C > 0.0) return rate;
      return ExplorationRate::corollary1(compute_C_alpha(rate.alpha, layout.num_arms()), rate.alpha);
    case RateKind::chernoff_pac:
      return ExplorationRate::chernoff_pac(static_cast<double>(layout.max_responses()),
                                           static_cast<double>(layout.num_actions()));
    case RateKind::chernoff_kbar: return ExplorationRate::chernoff_kbar(static_cast<double>(layout.num_arms()));
    case RateKind::racing: return ExplorationRate::racing(c_K(layout, refined_ck));
    default: return rate;
  }
}

ExperimentConfig parse_experiment_config(std::string_view json_text, const std::filesystem::path& base_dir) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ValidationError(std::string("experiment config is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ValidationError("experiment config must be a JSON object");
  ExperimentConfig cfg;

  if (!doc.contains("instances") || !doc["instances"].is_array())
    throw ValidationError("experiment config needs an \"instances\" array");
  std::size_t k = 0;
  for (const json& entry : doc["instances"]) {
    if (entry.is_string()) {
      std::filesystem::path p = entry.get<std::string>();
      if (p.is_relative() && !base_dir.empty()) p = base_dir / p;
      cfg.instances.push_back({p.stem().string(), load_instance_file(p)});
    } else if (entry.is_object()) {
      cfg.instances.push_back({get_or<std::string>(entry, "name", "instance" + std::to_string(k)),
                               load_instance(entry.dump())});
    } else {
      throw ValidationError("each instance must be a path or an inline object");
    }
    ++k;
  }

  if (!doc.contains("algorithms") || !doc["algorithms"].is_array())
    throw ValidationError("experiment config needs an \"algorithms\" array");
  for (const json& a : doc["algorithms"]) {
    if (!a.is_string()) throw ValidationError("algorithm names must be strings");
    cfg.algorithms.push_back(parse_algorithm(a.get<std::string>()));
  }

  cfg.delta = get_or(doc, "delta", cfg.delta);
  cfg.epsilon = get_or(doc, "epsilon", cfg.epsilon);
  cfg.reps = get_or(doc, "reps", cfg.reps);
  cfg.seed = get_or(doc, "seed", cfg.seed);
  cfg.rate = rate_from(doc);
  cfg.parallelism = get_or(doc, "parallelism", cfg.parallelism);
  cfg.out = parse_output_format(get_or<std::string>(doc, "out", "csv"));
  cfg.cap = get_or(doc, "cap", cfg.cap);
  cfg.two_action = parse_two_action(get_or<std::string>(doc, "two_action", "off"));
  cfg.refined_ck = get_or(doc, "refined_ck", cfg.refined_ck);
  cfg.validate();
  return cfg;
}

ExperimentConfig load_experiment_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open experiment config " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_experiment_config(buf.str(), path.parent_path());
}

std::size_t effective_parallelism(const ExperimentConfig& config) {
  if (const char* env = std::getenv("MAXIMIN_THREADS")) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
  }
  if (config.parallelism > 0) return config.parallelism;
  return std::max(1u, std::thread::hardware_concurrency());
}

StrategyConfig cell_strategy_config(const ExperimentConfig& config, const GameInstance& instance, Algorithm algorithm) {
  StrategyConfig sc;
  sc.delta = config.delta;
  sc.epsilon = config.epsilon;
  sc.rate = instantiate_rate(config.rate, instance, config.refined_ck);
  sc.sample_cap = config.cap;
  const bool lucb_family =
      algorithm == Algorithm::m_lucb || algorithm == Algorithm::m_kl_lucb || algorithm == Algorithm::m_chernoff;
  if (lucb_family && instance.num_actions() == 2) sc.two_action = config.two_action;
  return sc;
}

CellReport aggregate(const std::string& instance, Algorithm algorithm, const Layout& layout,
                     const std::vector<RunResult>& results) {
  CellReport cell;
  cell.instance = instance;
  cell.algorithm = algorithm;
  cell.row_sizes = layout.row_sizes();
  cell.reps = results.size();
  const std::size_t arms = layout.num_arms();
  const double n = static_cast<double>(results.size());

  // Integer sums are exact; deviations are summed in replication order.
  std::vector<std::uint64_t> draw_sum(arms, 0);
  std::uint64_t tau_sum = 0;
  for (const RunResult& r : results) {
    for (std::size_t p = 0; p < arms; ++p) draw_sum[p] += r.draws[p];
    tau_sum += r.tau;
    cell.errors += r.correct ? 0 : 1;
    cell.cap_hits += r.stopped_by == StopReason::cap ? 1 : 0;
  }
  cell.mean_tau = static_cast<double>(tau_sum) / n;
  double tau_dev = 0.0;
  for (const RunResult& r : results) tau_dev += (static_cast<double>(r.tau) - cell.mean_tau) * (static_cast<double>(r.tau) - cell.mean_tau);
  cell.se_tau = std_error(tau_dev, results.size());
  cell.error_rate = static_cast<double>(cell.errors) / n;

  for (std::size_t p = 0; p < arms; ++p) {
    ArmSummary s;
    s.arm = layout.arm(p);
    s.mean_draws = static_cast<double>(draw_sum[p]) / n;
    double dev = 0.0;
    for (const RunResult& r : results) {
      const double d = static_cast<double>(r.draws[p]) - s.mean_draws;
      dev += d * d;
    }
    s.se_draws = std_error(dev, results.size());
    cell.arms.push_back(s);
  }
  return cell;
}

AggregateReport run_experiment(const ExperimentConfig& config) {
  config.validate();
  struct Cell {
    std::size_t instance;
    Algorithm algorithm;
    StrategyConfig strategy;
  };
  std::vector<Cell> cells;
  for (std::size_t i = 0; i < config.instances.size(); ++i) {
    for (const Algorithm a : config.algorithms) {
      const GameInstance& inst = config.instances[i].instance;
      StrategyConfig sc = cell_strategy_config(config, inst, a);
      // Surface configuration errors before any thread starts.
      if (a == Algorithm::m_chernoff && sc.epsilon > 0.0) throw ValidationError("m-chernoff supports epsilon = 0 only");
      if (a == Algorithm::kl_lucb_baseline && !inst.is_two_by_two())
        throw ValidationError("kl-lucb needs a 2x2 instance (" + config.instances[i].name + ")");
      cells.push_back({i, a, sc});
    }
  }

  const std::uint64_t reps = config.reps;
  std::vector<std::vector<RunResult>> results(cells.size(), std::vector<RunResult>(reps));
  const std::uint64_t total = cells.size() * reps;
  std::atomic<std::uint64_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;

  const auto worker = [&] {
    for (;;) {
      const std::uint64_t task = next.fetch_add(1);
      if (task >= total) return;
      const std::size_t c = static_cast<std::size_t>(task / reps);
      const std::uint64_t k = task % reps;
      const Cell& cell = cells[c];
      try {
        SamplingEnv env(derive_seed(config.seed, cell.instance, static_cast<std::uint64_t>(cell.algorithm), k));
        results[c][k] = run_strategy(config.instances[cell.instance].instance, cell.algorithm, cell.strategy, env);
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next.store(total);
        return;
      }
    }
  };

  const std::size_t threads = std::min<std::uint64_t>(effective_parallelism(config), total);
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (std::thread& t : pool) t.join();
  }
  if (failure) std::rethrow_exception(failure);

  AggregateReport report;
  for (std::size_t c = 0; c < cells.size(); ++c) {
    const NamedInstance& ni = config.instances[cells[c].instance];
    report.cells.push_back(aggregate(ni.name, cells[c].algorithm, ni.instance.layout(), results[c]));
  }
  return report;
}

}  // namespace maximin
