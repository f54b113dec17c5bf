#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "maximin/bounds.hpp"
#include "maximin/model.hpp"

namespace maximin {

// ---- Upper-bound terms ----------------------------------------------------

// Per-arm c_P = 1 / max[(mu_{i,1} - c)^2, (mu_{i,j} - mu_{i,1})^2] in flat
// order, where mu_{i,1} is the worst response of action i and c is the midpoint
// of the best and second-best worst-case values. Throws ValidationError on a
// zero maximin gap or a zero denominator.
std::vector<double> c_p_terms(const GameInstance& instance);
double h_star(const GameInstance& instance);

// inf { t >= 1 : 4 H beta(t, delta) < t }. Throws std::runtime_error if no t
// up to `cap` qualifies.
std::uint64_t t_bound(double h, const ExplorationRate& rate, double delta,
                      std::uint64_t cap = std::uint64_t{1} << 50);
std::uint64_t t_bound(const GameInstance& instance, const ExplorationRate& rate, double delta);

// 8 [2/(m11-m21)^2 + 1/(m12-m21)^2 + 1/max((m11-m21)^2, (m22-m21)^2)] for a 2x2
// game, with rows and responses sorted internally.
double theorem4_term(const GameInstance& instance);

// Per-arm limsup E[draws]/log(1/delta) for racing, flat order:
// 1/max(eps^2/2, I(mu_{(1)}, mu_{i,1}), I(mu_{i,j}, mu_{i,1})), except the worst
// arm of the best action, which gets 1/max(eps^2/2, I(mu_{(1)}, mu_{(2)})).
// Divergences are taken on (larger, smaller) pairs. Throws ValidationError if
// some arm's terms are all zero.
std::vector<double> racing_terms(const GameInstance& instance, double eps);

struct ComplexityReport {
  double h_star = 0.0;
  std::vector<double> c_p;
  std::uint64_t t_bound = 0;
  std::optional<double> theorem4_term;
  std::vector<double> racing_terms;
};

ComplexityReport complexity_report(const GameInstance& instance, const ExplorationRate& rate, double delta,
                                   double eps = 0.0);
std::string complexity_report_to_json(const ComplexityReport& report, const Layout& layout);

// ---- Lower bound (2x2) ----------------------------------------------------

// (mu1, mu2, mu3, mu4) = (m11, m12, m21, m22) after sorting: row 1 is the
// maximin action, responses ascending within each row.
using Mu4 = std::array<double, 4>;
using WeightVector = std::vector<double>;

struct SortedTwoByTwo {
  Mu4 mu{};
  std::array<ArmId, 4> arm{};  // instance arm behind each coordinate
};

SortedTwoByTwo sort_two_by_two(const GameInstance& instance);

// sum_{a in subset} w_a mu_a / sum_{a in subset} w_a. Throws on zero weight.
double weighted_mean_w(const std::vector<double>& mu, const WeightVector& w, const std::vector<std::size_t>& subset);

// F_a(mu, w) for a in {0, 1} (the first two coordinates). Returns 0 when
// w_a + w_3 = 0, since the alternative can then move those arms for free.
double f_a(const Mu4& mu, const WeightVector& w, std::size_t a);

// min(F_1, F_2) = inf over alternatives of sum_a w_a d(mu_a, mu'_a).
double alt_projection_value(const Mu4& mu, const WeightVector& w);

struct TStar {
  double t_star = 0.0;    // 1 / objective
  double objective = 0.0;  // sup_w min(F_1, F_2)
  WeightVector w;          // in Mu4 coordinates
};

TStar t_star(const Mu4& mu);
TStar t_star(const GameInstance& instance);

// Reduced problem with w_4 = 0, valid when mu4 > mu2. Throws ValidationError otherwise.
TStar t_star_particular(const Mu4& mu);
TStar t_star_particular(const GameInstance& instance);

// T*(mu) d(delta, 1 - delta); delta in (0, 1/2).
double lower_bound(const GameInstance& instance, double delta);

std::string lower_bound_to_json(const GameInstance& instance, double delta);

// ---- Simplex search ---------------------------------------------------------

// Euclidean projection onto {w >= 0, sum w = 1}.
WeightVector project_to_simplex(const std::vector<double>& x);

struct SimplexSearchOptions {
  std::size_t random_starts = 16;  // on top of the barycenter and near-vertex starts
  double tolerance = 1e-12;        // objective spread at which a run stops
  std::size_t max_evaluations = 20000;  // per start
  std::uint64_t seed = 0x5eed;
};

struct SimplexSearchResult {
  WeightVector point;
  double value = 0.0;
  std::size_t starts = 0;
};

// Multi-start Nelder-Mead maximisation of f over the probability simplex of
// the given dimension; iterates are projected back onto the simplex.
SimplexSearchResult maximize_on_simplex(const std::function<double(const WeightVector&)>& f, std::size_t dim,
                                        const SimplexSearchOptions& options = {});

}  // namespace maximin
