#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "json.hpp"
#include "maximin/complexity.hpp"

namespace maximin {

namespace {

// w d(x, y), with an unsampled arm contributing nothing even if d is infinite.
double weighted_kl(double w, double x, double y) { return w > 0.0 ? w * kl_bernoulli(x, y) : 0.0; }

void check_sorted(const Mu4& mu) {
  for (double m : mu)
    if (!(m >= 0.0 && m <= 1.0)) throw ValidationError("means must lie in [0,1]");
  if (!(mu[0] > mu[2])) throw ValidationError("lower bound needs a strict maximin gap (mu1 > mu3)");
  if (!(mu[0] <= mu[1] && mu[2] <= mu[3])) throw ValidationError("responses must be sorted within each action");
}

void check_weights(const WeightVector& w) {
  if (w.size() != 4) throw std::invalid_argument("weight vector must have four entries");
}

// Golden-section maximisation of a concave function on [a, b].
template <typename F>
double golden_max(F&& f, double a, double b, double tol) {
  const double r = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = b - r * (b - a);
  double x2 = a + r * (b - a);
  double f1 = f(x1);
  double f2 = f(x2);
  while (b - a > tol) {
    if (f1 < f2) {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + r * (b - a);
      f2 = f(x2);
    } else {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - r * (b - a);
      f1 = f(x1);
    }
  }
  return 0.5 * (a + b);
}

nlohmann::json weights_per_arm(const SortedTwoByTwo& sorted, const WeightVector& w) {
  nlohmann::json rows = {{0.0, 0.0}, {0.0, 0.0}};
  for (std::size_t k = 0; k < 4; ++k) rows[sorted.arm[k].action][sorted.arm[k].response] = w[k];
  return rows;
}

}  // namespace

SortedTwoByTwo sort_two_by_two(const GameInstance& instance) {
  if (!instance.is_two_by_two()) throw ValidationError("this computation needs a 2x2 instance");
  const MaximinValue mv = true_maximin(instance);
  const std::size_t best = mv.action;
  const std::size_t other = 1 - best;
  if (!(mv.worst[best] > mv.worst[other])) throw ValidationError("the maximin gap is zero");
  SortedTwoByTwo s;
  std::size_t k = 0;
  for (const std::size_t i : {best, other}) {
    const bool swap = instance.mean({i, 1}) < instance.mean({i, 0});
    for (const std::size_t j : {std::size_t{0}, std::size_t{1}}) {
      const ArmId arm{i, swap ? 1 - j : j};
      s.arm[k] = arm;
      s.mu[k] = instance.mean(arm);
      ++k;
    }
  }
  return s;
}

double weighted_mean_w(const std::vector<double>& mu, const WeightVector& w, const std::vector<std::size_t>& subset) {
  double num = 0.0;
  double den = 0.0;
  for (const std::size_t a : subset) {
    if (a >= mu.size() || a >= w.size()) throw std::invalid_argument("subset index out of range");
    num += w[a] * mu[a];
    den += w[a];
  }
  if (!(den > 0.0)) throw std::invalid_argument("weighted mean over a subset with zero total weight");
  return num / den;
}

double f_a(const Mu4& mu, const WeightVector& w, std::size_t a) {
  check_weights(w);
  if (a > 1) throw std::invalid_argument("f_a is defined for a in {0, 1}");
  if (!(w[a] + w[2] > 0.0)) return 0.0;
  const double pooled = (w[a] * mu[a] + w[2] * mu[2]) / (w[a] + w[2]);
  if (mu[3] >= pooled) return weighted_kl(w[a], mu[a], pooled) + weighted_kl(w[2], mu[2], pooled);
  const double pooled3 = (w[a] * mu[a] + w[2] * mu[2] + w[3] * mu[3]) / (w[a] + w[2] + w[3]);
  return weighted_kl(w[a], mu[a], pooled3) + weighted_kl(w[2], mu[2], pooled3) + weighted_kl(w[3], mu[3], pooled3);
}

double alt_projection_value(const Mu4& mu, const WeightVector& w) { return std::min(f_a(mu, w, 0), f_a(mu, w, 1)); }

TStar t_star(const Mu4& mu) {
  check_sorted(mu);
  const auto objective = [&mu](const WeightVector& w) { return alt_projection_value(mu, w); };
  const SimplexSearchResult best = maximize_on_simplex(objective, 4);
  if (!(best.value > 0.0)) throw std::runtime_error("degenerate instance: the lower-bound objective is zero");
  return {1.0 / best.value, best.value, best.point};
}

TStar t_star(const GameInstance& instance) { return t_star(sort_two_by_two(instance).mu); }

TStar t_star_particular(const Mu4& mu) {
  check_sorted(mu);
  if (!(mu[3] > mu[1])) throw ValidationError("the particular case needs mu4 > mu2");

  const auto branch = [&mu](std::size_t a, double wa, double w3) {
    if (!(wa + w3 > 0.0)) return 0.0;
    const double pooled = (wa * mu[a] + w3 * mu[2]) / (wa + w3);
    return weighted_kl(wa, mu[a], pooled) + weighted_kl(w3, mu[2], pooled);
  };
  // For fixed w3 the two branches move in opposite directions as w1 = x,
  // w2 = 1 - w3 - x varies, so the inner optimum sits at their crossing.
  const auto split = [&](double w3) {
    const double s = 1.0 - w3;
    double lo = 0.0;
    double hi = s;
    for (int it = 0; it < 200 && hi - lo > 1e-16; ++it) {
      const double x = 0.5 * (lo + hi);
      (branch(0, x, w3) < branch(1, s - x, w3) ? lo : hi) = x;
    }
    return 0.5 * (lo + hi);
  };
  const auto value_at = [&](double w3) {
    const double x = split(w3);
    return std::min(branch(0, x, w3), branch(1, 1.0 - w3 - x, w3));
  };

  const double w3 = golden_max(value_at, 0.0, 1.0, 1e-12);
  const double w1 = split(w3);
  TStar result;
  result.w = {w1, 1.0 - w3 - w1, w3, 0.0};
  result.objective = alt_projection_value(mu, result.w);
  if (!(result.objective > 0.0)) throw std::runtime_error("degenerate instance: the lower-bound objective is zero");
  result.t_star = 1.0 / result.objective;
  return result;
}

TStar t_star_particular(const GameInstance& instance) { return t_star_particular(sort_two_by_two(instance).mu); }

double lower_bound(const GameInstance& instance, double delta) {
  if (!(delta > 0.0 && delta < 0.5)) throw ValidationError("lower bound needs delta in (0, 1/2)");
  return t_star(instance).t_star * kl_bernoulli(delta, 1.0 - delta);
}

std::string lower_bound_to_json(const GameInstance& instance, double delta) {
  if (!(delta > 0.0 && delta < 0.5)) throw ValidationError("lower bound needs delta in (0, 1/2)");
  const SortedTwoByTwo sorted = sort_two_by_two(instance);
  const TStar ts = t_star(sorted.mu);
  const double kl = kl_bernoulli(delta, 1.0 - delta);
  nlohmann::json j;
  j["t_star"] = ts.t_star;
  j["w_star"] = weights_per_arm(sorted, ts.w);
  j["w_star_sorted"] = ts.w;
  j["kl_delta"] = kl;
  j["bound"] = ts.t_star * kl;
  return j.dump(2);
}

}  // namespace maximin
