#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>

#include "maximin/model.hpp"

namespace maximin {

// Binary relative entropy d(x,y) in nats, with 0*log 0 = 0.
// Returns +inf when y is 0 or 1 and x != y.
double kl_bernoulli(double x, double y);

// I(x,y) = [d(x,(x+y)/2) + d(y,(x+y)/2)] if x >= y, else 0.
double elimination_divergence(double x, double y);

struct ConfidenceInterval {
  double lower = 0.0;
  double upper = 0.0;
};

// mean -/+ sqrt(beta / (2 count)). Unclipped unless `clip` is set.
ConfidenceInterval hoeffding_interval(const ArmStats& stats, double beta, bool clip = false);

// {q : count * d(mean, q) <= beta}. Each endpoint is bracketed to within
// kKlIntervalTolerance by bisection with Newton acceleration, is feasible, and
// leaves a residual of at most kKlResidualTolerance (unless double precision
// runs out next to 0 or 1).
ConfidenceInterval kl_interval(const ArmStats& stats, double beta);

inline constexpr double kKlIntervalTolerance = 1e-10;
inline constexpr double kKlResidualTolerance = 1e-8;

enum class RateKind {
  corollary1,     // log(C t^(1+alpha) / delta)
  corollary2,     // log(1/delta) + b loglog(1/delta) + c loglog(e t)
  practical,      // log((log t + 1) / delta)
  chernoff_pac,   // log(2 K1 (K-1) t / delta)
  chernoff_kbar,  // log(4 Kbar^2 t / delta)
  racing,         // log(4 C_K t / delta)
};

RateKind parse_rate_kind(std::string_view name);
std::string_view to_string(RateKind kind);

struct ExplorationRate {
  RateKind kind = RateKind::practical;
  double alpha = 1.0;
  double C = 1.0;
  double b = 0.0;
  double c = 0.0;
  double k1 = 2.0;
  double k = 2.0;
  double kbar = 4.0;
  double ck = 1.0;

  static ExplorationRate practical() { return {}; }
  static ExplorationRate corollary1(double C, double alpha);
  static ExplorationRate corollary2(double b, double c);
  static ExplorationRate chernoff_pac(double k1, double k);
  static ExplorationRate chernoff_kbar(double kbar);
  static ExplorationRate racing(double ck);
};

// beta(t, delta); t >= 1, delta in (0,1). Natural logarithms.
double exploration_beta(const ExplorationRate& rate, std::uint64_t t, double delta);

// Smallest practical C with e*Kbar * sum_t log(t) log(C t^(1+alpha)) / t^(1+alpha) <= C.
double compute_C_alpha(double alpha, std::size_t k_bar);

// Certified upper bound on the series sum_{t>=1} log(t) log(C t^(1+alpha)) / t^(1+alpha),
// i.e. without the e*Kbar factor. Exposed for verification.
double corollary1_series_upper(double alpha, double C);

double weighted_mean_pair(const ArmStats& p, const ArmStats& q);

// Z_{P,Q}: >= 0 iff mean_P >= mean_Q, and Z_{P,Q} = -Z_{Q,P}.
double glrt_statistic(const ArmStats& p, const ArmStats& q);

}  // namespace maximin
