#include "maximin/complexity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "json.hpp"

namespace maximin {

namespace {

struct TopTwo {
  std::size_t best;
  double first;   // best worst-case value
  double second;  // runner-up worst-case value
};

TopTwo top_two(const GameInstance& instance) {
  const MaximinValue mv = true_maximin(instance);
  double second = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < mv.worst.size(); ++i)
    if (i != mv.action) second = std::max(second, mv.worst[i]);
  if (!(mv.value > second)) throw ValidationError("the maximin gap is zero; complexity terms are undefined");
  return {mv.action, mv.value, second};
}

nlohmann::json per_arm(const std::vector<double>& flat, const Layout& layout) {
  nlohmann::json rows = nlohmann::json::array();
  for (std::size_t i = 0; i < layout.num_actions(); ++i) {
    nlohmann::json row = nlohmann::json::array();
    for (std::size_t j = 0; j < layout.num_responses(i); ++j) row.push_back(flat[layout.flat({i, j})]);
    rows.push_back(row);
  }
  return rows;
}

// Starting point for the search. For the polynomial rate the closed form
// x = (1+alpha)/c1 (log a + 2 log log a), a = (1+alpha) c2^(1/(1+alpha)) / c1,
// satisfies c1 x >= log(c2 x^(1+alpha)) whenever a > 4.85.
double t_bound_seed(double h, const ExplorationRate& rate, double delta) {
  if (rate.kind == RateKind::corollary1) {
    const double c1 = 1.0 / (4.0 * h);
    const double c2 = rate.C / delta;
    const double a = (1.0 + rate.alpha) * std::pow(c2, 1.0 / (1.0 + rate.alpha)) / c1;
    if (a > 4.85) return (1.0 + rate.alpha) / c1 * (std::log(a) + 2.0 * std::log(std::log(a)));
  }
  // Fixed-point iterations of t <- 4 H beta(t).
  double t = 1.0;
  for (int k = 0; k < 8; ++k) {
    const double next = 4.0 * h * exploration_beta(rate, static_cast<std::uint64_t>(std::ceil(t)), delta);
    if (!(next < 1e18)) break;
    t = std::max(1.0, next);
  }
  return t;
}

}  // namespace

std::vector<double> c_p_terms(const GameInstance& instance) {
  const TopTwo top = top_two(instance);
  const double c = 0.5 * (top.first + top.second);
  const MaximinValue mv = true_maximin(instance);
  std::vector<double> terms;
  terms.reserve(instance.num_arms());
  for (std::size_t i = 0; i < instance.num_actions(); ++i) {
    const double low = mv.worst[i];
    for (std::size_t j = 0; j < instance.layout().num_responses(i); ++j) {
      const double to_center = (low - c) * (low - c);
      const double within = (instance.mean({i, j}) - low) * (instance.mean({i, j}) - low);
      const double denom = std::max(to_center, within);
      if (!(denom > 0.0)) throw ValidationError("zero denominator in c_P (tied means)");
      terms.push_back(1.0 / denom);
    }
  }
  return terms;
}

double h_star(const GameInstance& instance) {
  double total = 0.0;
  for (double c : c_p_terms(instance)) total += c;
  return total;
}

std::uint64_t t_bound(double h, const ExplorationRate& rate, double delta, std::uint64_t cap) {
  if (!(h > 0.0) || !std::isfinite(h)) throw ValidationError("t_bound needs a positive finite complexity");
  const auto holds = [&](std::uint64_t t) { return 4.0 * h * exploration_beta(rate, t, delta) < static_cast<double>(t); };
  if (holds(1)) return 1;

  // t - 4 H beta(t) is convex on [1, inf) for every rate (beta is concave in t),
  // so once it fails at t = 1 the qualifying set is an upper ray.
  std::uint64_t lo = 1;
  std::uint64_t hi = std::max<std::uint64_t>(2, static_cast<std::uint64_t>(std::min(t_bound_seed(h, rate, delta), 1e18)));
  while (!holds(hi)) {
    lo = hi;
    if (hi > cap / 2) throw std::runtime_error("t_bound: no solution below the search cap");
    hi *= 2;
  }
  while (hi - lo > 1) {
    const std::uint64_t mid = lo + (hi - lo) / 2;
    (holds(mid) ? hi : lo) = mid;
  }
  while (hi > 1 && holds(hi - 1)) --hi;
  if (!holds(hi) || (hi > 1 && holds(hi - 1))) throw std::logic_error("t_bound: defining inequality re-check failed");
  return hi;
}

std::uint64_t t_bound(const GameInstance& instance, const ExplorationRate& rate, double delta) {
  return t_bound(h_star(instance), rate, delta);
}

double theorem4_term(const GameInstance& instance) {
  const Mu4 m = sort_two_by_two(instance).mu;
  const double g1 = (m[0] - m[2]) * (m[0] - m[2]);
  const double g2 = (m[1] - m[2]) * (m[1] - m[2]);
  const double g3 = std::max(g1, (m[3] - m[2]) * (m[3] - m[2]));
  return 8.0 * (2.0 / g1 + 1.0 / g2 + 1.0 / g3);
}

std::vector<double> racing_terms(const GameInstance& instance, double eps) {
  if (!(eps >= 0.0)) throw ValidationError("epsilon must be non-negative");
  const TopTwo top = top_two(instance);
  const MaximinValue mv = true_maximin(instance);
  const auto div = [](double x, double y) { return elimination_divergence(std::max(x, y), std::min(x, y)); };
  const double floor = eps * eps / 2.0;

  std::vector<double> terms;
  terms.reserve(instance.num_arms());
  for (std::size_t i = 0; i < instance.num_actions(); ++i) {
    const double low = mv.worst[i];
    // Worst arm of the best action: first occurrence of its minimum.
    std::size_t low_j = 0;
    for (std::size_t j = 1; j < instance.layout().num_responses(i); ++j)
      if (instance.mean({i, j}) < instance.mean({i, low_j})) low_j = j;
    for (std::size_t j = 0; j < instance.layout().num_responses(i); ++j) {
      double rate = floor;
      if (i == top.best && j == low_j) {
        rate = std::max(rate, div(top.first, top.second));
      } else {
        rate = std::max({rate, div(top.first, low), div(instance.mean({i, j}), low)});
      }
      if (!(rate > 0.0)) throw ValidationError("racing term undefined: every divergence is zero for some arm");
      terms.push_back(1.0 / rate);
    }
  }
  return terms;
}

ComplexityReport complexity_report(const GameInstance& instance, const ExplorationRate& rate, double delta,
                                   double eps) {
  ComplexityReport report;
  report.c_p = c_p_terms(instance);
  for (double c : report.c_p) report.h_star += c;
  report.t_bound = t_bound(report.h_star, rate, delta);
  if (instance.is_two_by_two()) report.theorem4_term = theorem4_term(instance);
  report.racing_terms = racing_terms(instance, eps);
  return report;
}

std::string complexity_report_to_json(const ComplexityReport& report, const Layout& layout) {
  nlohmann::json j;
  j["h_star"] = report.h_star;
  j["c_p"] = per_arm(report.c_p, layout);
  j["t_bound"] = report.t_bound;
  j["theorem4_term"] = report.theorem4_term ? nlohmann::json(*report.theorem4_term) : nlohmann::json(nullptr);
  j["racing_terms"] = per_arm(report.racing_terms, layout);
  return j.dump(2);
}

}  // namespace maximin
