#include "maximin/cli.hpp"

#include <algorithm>
#include <optional>
#include <ostream>

#include "CLI11.hpp"
#include "maximin/complexity.hpp"
#include "maximin/harness.hpp"
#include "maximin/rng.hpp"

namespace maximin {

namespace {

struct RateFlags {
  std::string name = "practical";
  double alpha = 1.0;
  std::optional<double> C;
  double b = 0.0;
  double c = 0.0;
  bool refined_ck = false;

  void attach(CLI::App& app) {
    app.add_option("--rate", name, "exploration rate: practical, corollary1, corollary2, chernoff-pac, chernoff-kbar, racing")
        ->capture_default_str();
    app.add_option("--alpha", alpha, "corollary1 exponent")->capture_default_str();
    app.add_option("--C", C, "corollary1 constant (computed from alpha and Kbar if omitted)");
    app.add_option("--b", b, "corollary2 loglog(1/delta) weight")->capture_default_str();
    app.add_option("--c", c, "corollary2 loglog(e t) weight")->capture_default_str();
    app.add_flag("--refined-ck", refined_ck, "racing rate with C_K = K max K_i instead of Kbar^2");
  }

  ExplorationRate build(const GameInstance& instance) const {
    ExplorationRate r;
    switch (parse_rate_kind(name)) {
      case RateKind::practical: r = ExplorationRate::practical(); break;
      case RateKind::corollary1: r = C ? ExplorationRate::corollary1(*C, alpha) : unresolved_corollary1(alpha); break;
      case RateKind::corollary2: r = ExplorationRate::corollary2(b, c); break;
      default: r.kind = parse_rate_kind(name); break;
    }
    return instantiate_rate(r, instance, refined_ck);
  }
};

int cmd_run(const std::string& instance_path, const std::string& algo, double delta, double epsilon,
            std::uint64_t seed, const RateFlags& rate, bool single_draw, bool most_drawn, std::uint64_t cap,
            bool debug_checks, std::ostream& out) {
  const GameInstance instance = load_instance_file(instance_path);
  StrategyConfig config;
  config.delta = delta;
  config.epsilon = epsilon;
  config.rate = rate.build(instance);
  config.sample_cap = cap;
  config.debug_checks = debug_checks;
  if (single_draw) config.two_action = most_drawn ? TwoActionMode::most_drawn : TwoActionMode::least_drawn;
  SamplingEnv env(seed);
  const RunResult result = run_strategy(instance, parse_algorithm(algo), config, env);
  out << run_result_to_json(result, instance.layout()) << "\n";
  return 0;
}

}  // namespace

int cli_main(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Maximin action identification in two-round zero-sum stochastic games"};
  app.require_subcommand(1);

  // run
  CLI::App* run = app.add_subcommand("run", "run one strategy once and print the RunResult as JSON");
  std::string run_instance;
  std::string run_algo;
  double run_delta = 0.1;
  double run_epsilon = 0.0;
  std::uint64_t run_seed = 42;
  RateFlags run_rate;
  bool single_draw = false;
  bool most_drawn = false;
  std::uint64_t run_cap = 10'000'000;
  bool debug_checks = false;
  run->add_option("--instance", run_instance, "instance JSON file")->required();
  run->add_option("--algo", run_algo, "m-lucb, m-kl-lucb, m-chernoff, m-racing or kl-lucb")->required();
  run->add_option("--delta", run_delta, "risk level")->capture_default_str();
  run->add_option("--epsilon", run_epsilon, "slack")->capture_default_str();
  run->add_option("--seed", run_seed, "sampling seed")->capture_default_str();
  run_rate.attach(*run);
  run->add_flag("--two-action-single-draw", single_draw, "draw one of H_t, S_t per step (two actions only)");
  run->add_flag("--most-drawn", most_drawn, "with --two-action-single-draw, draw the most-drawn arm instead");
  run->add_option("--cap", run_cap, "hard sample cap")->capture_default_str();
  run->add_flag("--debug-checks", debug_checks, "re-verify state invariants at every step");

  // experiment
  CLI::App* experiment = app.add_subcommand("experiment", "run a Monte Carlo experiment from a JSON config");
  std::string config_path;
  std::optional<std::uint64_t> exp_reps;
  std::optional<std::uint64_t> exp_seed;
  std::optional<std::size_t> exp_threads;
  std::optional<std::string> exp_out;
  experiment->add_option("--config", config_path, "experiment config JSON")->required();
  experiment->add_option("--reps", exp_reps, "override the replication count");
  experiment->add_option("--seed", exp_seed, "override the master seed");
  experiment->add_option("--threads", exp_threads, "override parallelism");
  experiment->add_option("--out", exp_out, "override the output format (csv or json)");

  // complexity
  CLI::App* complexity = app.add_subcommand("complexity", "upper-bound complexity terms as JSON");
  std::string cx_instance;
  double cx_delta = 0.1;
  double cx_epsilon = 0.0;
  RateFlags cx_rate;
  complexity->add_option("--instance", cx_instance, "instance JSON file")->required();
  complexity->add_option("--delta", cx_delta, "risk level")->capture_default_str();
  complexity->add_option("--epsilon", cx_epsilon, "slack for the racing terms")->capture_default_str();
  cx_rate.attach(*complexity);

  // lowerbound
  CLI::App* lowerbound = app.add_subcommand("lowerbound", "T*(mu), w*(mu) and T* d(delta, 1-delta) for a 2x2 game");
  std::string lb_instance;
  double lb_delta = 0.1;
  lowerbound->add_option("--instance", lb_instance, "instance JSON file")->required();
  lowerbound->add_option("--delta", lb_delta, "risk level in (0, 1/2)")->capture_default_str();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return 1;
  }

  try {
    if (run->parsed()) {
      return cmd_run(run_instance, run_algo, run_delta, run_epsilon, run_seed, run_rate, single_draw, most_drawn,
                     run_cap, debug_checks, out);
    }
    if (experiment->parsed()) {
      ExperimentConfig config = load_experiment_config(config_path);
      if (exp_reps) config.reps = *exp_reps;
      if (exp_seed) config.seed = *exp_seed;
      if (exp_threads) config.parallelism = *exp_threads;
      if (exp_out) config.out = parse_output_format(*exp_out);
      config.validate();
      out << emit(run_experiment(config), config.out);
      return 0;
    }
    if (complexity->parsed()) {
      const GameInstance instance = load_instance_file(cx_instance);
      const ComplexityReport report = complexity_report(instance, cx_rate.build(instance), cx_delta, cx_epsilon);
      out << complexity_report_to_json(report, instance.layout()) << "\n";
      return 0;
    }
    if (lowerbound->parsed()) {
      const GameInstance instance = load_instance_file(lb_instance);
      out << lower_bound_to_json(instance, lb_delta) << "\n";
      return 0;
    }
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    err << "runtime error: " << e.what() << "\n";
    return 2;
  }
  return 1;
}

}  // namespace maximin
