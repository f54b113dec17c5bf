#include "maximin/bounds.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace maximin {

double kl_bernoulli(double x, double y) {
  if (x == y) return 0.0;
  if (y <= 0.0 || y >= 1.0) return std::numeric_limits<double>::infinity();
  double value = 0.0;
  if (x > 0.0) value += x * std::log(x / y);
  if (x < 1.0) value += (1.0 - x) * std::log((1.0 - x) / (1.0 - y));
  return value > 0.0 ? value : 0.0;
}

double elimination_divergence(double x, double y) {
  if (x < y) return 0.0;
  const double mid = 0.5 * (x + y);
  return kl_bernoulli(x, mid) + kl_bernoulli(y, mid);
}

ConfidenceInterval hoeffding_interval(const ArmStats& stats, double beta, bool clip) {
  if (stats.count == 0) throw std::invalid_argument("confidence interval needs at least one observation");
  if (beta < 0.0) throw std::invalid_argument("beta must be non-negative");
  const double m = stats.mean();
  const double half = std::sqrt(beta / (2.0 * static_cast<double>(stats.count)));
  ConfidenceInterval ci{m - half, m + half};
  if (clip) {
    ci.lower = std::max(0.0, ci.lower);
    ci.upper = std::min(1.0, ci.upper);
  }
  return ci;
}

namespace {

// Moves `inside` (count*d(m,.) <= beta) towards `outside` until the bracket is
// narrower than the tolerance and the residual at `inside` is within 1e-8.
// The target is convex on each side of m, so a Newton step taken from
// `outside` never overshoots the root; once it stalls, a probe half a
// tolerance inwards closes the bracket. Falls back to halving otherwise.
double kl_bisect(double m, double n, double beta, double inside, double outside) {
  const auto g = [&](double q) { return n * kl_bernoulli(m, q) - beta; };
  double g_out = g(outside);
  for (int iter = 0; iter < 100; ++iter) {
    const bool narrow = std::abs(outside - inside) <= kKlIntervalTolerance;
    if (narrow && g(inside) >= -kKlResidualTolerance) break;
    double x = 0.5 * (inside + outside);
    bool newton = false;
    if (std::isfinite(g_out)) {
      const double slope = n * (outside - m) / (outside * (1.0 - outside));
      const double step = outside - g_out / slope;
      if ((step - inside) * (outside - step) > 0.0) {
        x = step;
        newton = true;
      }
    }
    if (x == inside || x == outside) break;
    const double gx = g(x);
    if (gx <= 0.0) {
      inside = x;
      continue;
    }
    const bool stalled = newton && std::abs(outside - x) < 1e-3 * std::abs(outside - inside);
    outside = x;
    g_out = gx;
    if (stalled || std::abs(outside - inside) < 1e-6) {
      const double probe = outside + (inside < outside ? -0.5 : 0.5) * kKlIntervalTolerance;
      if ((probe - inside) * (outside - probe) <= 0.0) continue;
      const double gp = g(probe);
      if (gp <= 0.0) {
        inside = probe;
      } else {
        outside = probe;
        g_out = gp;
      }
    }
  }
  return inside;
}

}  // namespace

ConfidenceInterval kl_interval(const ArmStats& stats, double beta) {
  if (stats.count == 0) throw std::invalid_argument("confidence interval needs at least one observation");
  if (beta < 0.0) throw std::invalid_argument("beta must be non-negative");
  const double m = stats.mean();
  const double n = static_cast<double>(stats.count);
  if (beta == 0.0) return {m, m};
  ConfidenceInterval ci{m, m};
  // Pinsker: count*d(m,q) >= 2*count*(q-m)^2, so m +- sqrt(beta/(2 count)) is never inside.
  const double half = std::sqrt(beta / (2.0 * n));
  ci.upper = m >= 1.0 ? 1.0 : kl_bisect(m, n, beta, m, std::min(1.0, m + half));
  ci.lower = m <= 0.0 ? 0.0 : kl_bisect(m, n, beta, m, std::max(0.0, m - half));
  return ci;
}

RateKind parse_rate_kind(std::string_view name) {
  if (name == "practical") return RateKind::practical;
  if (name == "corollary1") return RateKind::corollary1;
  if (name == "corollary2") return RateKind::corollary2;
  if (name == "chernoff-pac" || name == "chernoff_pac") return RateKind::chernoff_pac;
  if (name == "chernoff-kbar" || name == "chernoff_kbar") return RateKind::chernoff_kbar;
  if (name == "racing") return RateKind::racing;
  throw ValidationError("unknown exploration rate '" + std::string(name) + "'");
}

std::string_view to_string(RateKind kind) {
  switch (kind) {
    case RateKind::corollary1: return "corollary1";
    case RateKind::corollary2: return "corollary2";
    case RateKind::practical: return "practical";
    case RateKind::chernoff_pac: return "chernoff-pac";
    case RateKind::chernoff_kbar: return "chernoff-kbar";
    case RateKind::racing: return "racing";
  }
  return "unknown";
}

ExplorationRate ExplorationRate::corollary1(double C, double alpha) {
  if (!(C > 0.0) || !(alpha > 0.0)) throw ValidationError("corollary1 rate needs C > 0 and alpha > 0");
  ExplorationRate r;
  r.kind = RateKind::corollary1;
  r.C = C;
  r.alpha = alpha;
  return r;
}

ExplorationRate ExplorationRate::corollary2(double b, double c) {
  if (!(b >= 0.0) || !(c >= 0.0)) throw ValidationError("corollary2 rate needs b >= 0 and c >= 0");
  ExplorationRate r;
  r.kind = RateKind::corollary2;
  r.b = b;
  r.c = c;
  return r;
}

ExplorationRate ExplorationRate::chernoff_pac(double k1, double k) {
  if (!(k1 >= 1.0) || !(k >= 2.0)) throw ValidationError("chernoff-pac rate needs K1 >= 1 and K >= 2");
  ExplorationRate r;
  r.kind = RateKind::chernoff_pac;
  r.k1 = k1;
  r.k = k;
  return r;
}

ExplorationRate ExplorationRate::chernoff_kbar(double kbar) {
  if (!(kbar >= 1.0)) throw ValidationError("chernoff-kbar rate needs Kbar >= 1");
  ExplorationRate r;
  r.kind = RateKind::chernoff_kbar;
  r.kbar = kbar;
  return r;
}

ExplorationRate ExplorationRate::racing(double ck) {
  if (!(ck > 0.0)) throw ValidationError("racing rate needs C_K > 0");
  ExplorationRate r;
  r.kind = RateKind::racing;
  r.ck = ck;
  return r;
}

double exploration_beta(const ExplorationRate& rate, std::uint64_t t, double delta) {
  if (t < 1) throw std::invalid_argument("exploration rate needs t >= 1");
  if (!(delta > 0.0 && delta < 1.0)) throw std::invalid_argument("delta must lie in (0,1)");
  const double tt = static_cast<double>(t);
  const double log_inv_delta = -std::log(delta);
  switch (rate.kind) {
    case RateKind::practical: return std::log(std::log(tt) + 1.0) + log_inv_delta;
    case RateKind::corollary1:
      if (!(rate.C > 0.0)) throw std::invalid_argument("corollary1 rate has no constant C yet");
      return std::log(rate.C) + (1.0 + rate.alpha) * std::log(tt) + log_inv_delta;
    case RateKind::corollary2:
      return log_inv_delta + rate.b * std::log(log_inv_delta) + rate.c * std::log(std::log(std::numbers::e * tt));
    case RateKind::chernoff_pac: return std::log(2.0 * rate.k1 * (rate.k - 1.0) * tt) + log_inv_delta;
    case RateKind::chernoff_kbar: return std::log(4.0 * rate.kbar * rate.kbar * tt) + log_inv_delta;
    case RateKind::racing: return std::log(4.0 * rate.ck * tt) + log_inv_delta;
  }
  throw std::invalid_argument("unknown exploration rate kind");
}

namespace {

// Partial sums of log(t)/t^(1+a) and log(t)^2/t^(1+a) for t <= n, with bounds
// on the remaining tail. Both summands are convex for t >= 16, so each term is
// at most its integral over [t-1/2, t+1/2] and at least its trapezoid integral.
struct SeriesBounds {
  double s1_lower, s1_upper, s2_lower, s2_upper;
};

SeriesBounds series_bounds(double alpha, std::uint64_t n) {
  double s1 = 0.0, s2 = 0.0;
  // Sum small terms last to limit rounding.
  for (std::uint64_t t = n; t >= 2; --t) {
    const double lt = std::log(static_cast<double>(t));
    const double p = std::exp(-(1.0 + alpha) * lt);
    s1 += lt * p;
    s2 += lt * lt * p;
  }
  auto tail = [alpha](double x) {
    const double l = std::log(x);
    const double p = std::exp(-alpha * l);
    const double t1 = p * (l / alpha + 1.0 / (alpha * alpha));
    const double t2 = p * (l * l / alpha + 2.0 * l / (alpha * alpha) + 2.0 / (alpha * alpha * alpha));
    return std::pair{t1, t2};
  };
  const auto [u1, u2] = tail(static_cast<double>(n) + 0.5);
  const auto [l1, l2] = tail(static_cast<double>(n + 1));
  const double ln1 = std::log(static_cast<double>(n + 1));
  const double half = 0.5 * std::exp(-(1.0 + alpha) * ln1);
  return {s1 + l1 + half * ln1, s1 + u1, s2 + l2 + half * ln1 * ln1, s2 + u2};
}

constexpr std::uint64_t kMaxSeriesTerms = std::uint64_t{1} << 27;

}  // namespace

double corollary1_series_upper(double alpha, double C) {
  if (!(alpha > 0.0) || !(C > 0.0)) throw std::invalid_argument("need alpha > 0 and C > 0");
  std::uint64_t n = 1u << 12;
  for (;;) {
    const SeriesBounds sb = series_bounds(alpha, n);
    const double lc = std::log(C);
    const double upper = lc * (lc >= 0 ? sb.s1_upper : sb.s1_lower) + (1.0 + alpha) * sb.s2_upper;
    const double lower = lc * (lc >= 0 ? sb.s1_lower : sb.s1_upper) + (1.0 + alpha) * sb.s2_lower;
    if (upper - lower < 1e-9 || n >= kMaxSeriesTerms) return upper;
    n *= 4;
  }
}

double compute_C_alpha(double alpha, std::size_t k_bar) {
  if (!(alpha > 0.0)) throw std::invalid_argument("alpha must be positive");
  if (k_bar < 1) throw std::invalid_argument("Kbar must be positive");
  const double scale = std::numbers::e * static_cast<double>(k_bar);

  std::uint64_t n = 1u << 12;
  for (;;) {
    const SeriesBounds sb = series_bounds(alpha, n);
    // RHS(C) = scale * (log C * S1 + (1+alpha) * S2) is affine in log C.
    double C = 1.0;
    bool converged = false;
    for (int iter = 0; iter < 10000; ++iter) {
      const double next = scale * (std::log(C) * sb.s1_upper + (1.0 + alpha) * sb.s2_upper);
      if (std::abs(next - C) <= 1e-12 * next) {
        C = next;
        converged = true;
        break;
      }
      C = next;
    }
    if (!converged) throw std::runtime_error("C_alpha fixed-point iteration did not converge");
    const double width =
        scale * (std::log(C) * (sb.s1_upper - sb.s1_lower) + (1.0 + alpha) * (sb.s2_upper - sb.s2_lower));
    if (width < 1e-6) {
      // Step just above the fixed point, where RHS(C) < C (slope of RHS is below 1 there).
      double certified = C * (1.0 + 1e-9);
      for (int k = 0; k < 60; ++k) {
        const double rhs = scale * (std::log(certified) * sb.s1_upper + (1.0 + alpha) * sb.s2_upper);
        if (rhs <= certified) return certified;
        certified = rhs * (1.0 + 1e-9);
      }
      throw std::runtime_error("C_alpha could not be certified");
    }
    if (n >= kMaxSeriesTerms) throw std::runtime_error("C_alpha series truncation did not reach 1e-6");
    n *= 4;
  }
}

double weighted_mean_pair(const ArmStats& p, const ArmStats& q) {
  const std::uint64_t n = p.count + q.count;
  if (n == 0) throw std::invalid_argument("weighted mean needs at least one observation");
  return static_cast<double>(p.sum + q.sum) / static_cast<double>(n);
}

double glrt_statistic(const ArmStats& p, const ArmStats& q) {
  if (p.count == 0 || q.count == 0) throw std::invalid_argument("GLRT statistic needs both arms drawn");
  const double mp = p.mean();
  const double mq = q.mean();
  if (mp < mq) return -glrt_statistic(q, p);
  const double m = weighted_mean_pair(p, q);
  return static_cast<double>(p.count) * kl_bernoulli(mp, m) + static_cast<double>(q.count) * kl_bernoulli(mq, m);
}

}  // namespace maximin
