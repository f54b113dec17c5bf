#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "maximin/complexity.hpp"
#include "maximin/rng.hpp"

namespace maximin {

WeightVector project_to_simplex(const std::vector<double>& x) {
  if (x.empty()) throw std::invalid_argument("cannot project an empty vector");
  std::vector<double> u = x;
  std::sort(u.begin(), u.end(), std::greater<>());
  double cumulative = 0.0;
  double theta = 0.0;
  for (std::size_t k = 0; k < u.size(); ++k) {
    cumulative += u[k];
    const double t = (cumulative - 1.0) / static_cast<double>(k + 1);
    if (u[k] - t > 0.0) theta = t;
  }
  WeightVector w(x.size());
  for (std::size_t k = 0; k < x.size(); ++k) w[k] = std::max(0.0, x[k] - theta);
  return w;
}

namespace {

using Point = std::vector<double>;

// Nelder-Mead over the free coordinates y (the last weight is 1 - sum y).
// Points off the simplex are evaluated at their projection and pay a
// distance penalty, so the search is pulled back to the feasible set.
class Search {
 public:
  Search(const std::function<double(const WeightVector&)>& f, std::size_t dim, const SimplexSearchOptions& opt)
      : f_(f), dim_(dim), opt_(opt) {}

  double cost(const Point& y, WeightVector* w_out = nullptr) {
    ++evaluations_;
    Point x(y);
    x.push_back(1.0 - std::accumulate(y.begin(), y.end(), 0.0));
    WeightVector w = project_to_simplex(x);
    double dist2 = 0.0;
    for (std::size_t k = 0; k < dim_; ++k) dist2 += (x[k] - w[k]) * (x[k] - w[k]);
    const double value = -f_(w) + std::sqrt(dist2);
    if (w_out) *w_out = std::move(w);
    return value;
  }

  // One Nelder-Mead run from `start` with the given initial edge length.
  Point run(const Point& start, double step, double& best_cost) {
    const std::size_t n = dim_ - 1;
    std::vector<Point> vertex(n + 1, start);
    for (std::size_t k = 0; k < n; ++k) vertex[k + 1][k] += (start[k] + step <= 1.0 ? step : -step);
    std::vector<double> value(n + 1);
    for (std::size_t k = 0; k <= n; ++k) value[k] = cost(vertex[k]);

    std::vector<std::size_t> order(n + 1);
    const std::size_t budget = evaluations_ + opt_.max_evaluations;
    while (evaluations_ < budget) {
      std::iota(order.begin(), order.end(), 0);
      std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return value[a] < value[b]; });
      const std::size_t best = order.front();
      const std::size_t worst = order.back();
      const std::size_t second_worst = order[n - 1];

      double size = 0.0;
      for (std::size_t k = 0; k <= n; ++k)
        for (std::size_t c = 0; c < n; ++c) size = std::max(size, std::abs(vertex[k][c] - vertex[best][c]));
      if (value[worst] - value[best] <= opt_.tolerance && size <= 1e-9) break;
      if (size <= 1e-15) break;

      Point centroid(n, 0.0);
      for (std::size_t k = 0; k <= n; ++k) {
        if (k == worst) continue;
        for (std::size_t c = 0; c < n; ++c) centroid[c] += vertex[k][c] / static_cast<double>(n);
      }
      const auto along = [&](double coef) {
        Point p(n);
        for (std::size_t c = 0; c < n; ++c) p[c] = centroid[c] + coef * (vertex[worst][c] - centroid[c]);
        return p;
      };

      const Point reflected = along(-1.0);
      const double fr = cost(reflected);
      if (fr < value[best]) {
        const Point expanded = along(-2.0);
        const double fe = cost(expanded);
        if (fe < fr) {
          vertex[worst] = expanded;
          value[worst] = fe;
        } else {
          vertex[worst] = reflected;
          value[worst] = fr;
        }
        continue;
      }
      if (fr < value[second_worst]) {
        vertex[worst] = reflected;
        value[worst] = fr;
        continue;
      }
      const bool outside = fr < value[worst];
      const Point contracted = along(outside ? -0.5 : 0.5);
      const double fc = cost(contracted);
      if (fc < (outside ? fr : value[worst])) {
        vertex[worst] = contracted;
        value[worst] = fc;
        continue;
      }
      for (std::size_t k = 0; k <= n; ++k) {
        if (k == best) continue;
        for (std::size_t c = 0; c < n; ++c) vertex[k][c] = vertex[best][c] + 0.5 * (vertex[k][c] - vertex[best][c]);
        value[k] = cost(vertex[k]);
      }
    }
    const std::size_t best =
        static_cast<std::size_t>(std::min_element(value.begin(), value.end()) - value.begin());
    best_cost = value[best];
    return vertex[best];
  }

  // Restarts from the best vertex with shrinking steps until no progress.
  Point polish(Point start, double& best_cost) {
    best_cost = cost(start);
    double step = 0.1;
    for (int restart = 0; restart < 8; ++restart) {
      double c = 0.0;
      Point p = run(start, step, c);
      const bool improved = c < best_cost - opt_.tolerance;
      if (c < best_cost) {
        best_cost = c;
        start = p;
      }
      if (!improved && restart > 0) break;
      step = std::max(step * 0.3, 1e-6);
    }
    return start;
  }

 private:
  const std::function<double(const WeightVector&)>& f_;
  std::size_t dim_;
  const SimplexSearchOptions& opt_;
  std::size_t evaluations_ = 0;
};

}  // namespace

SimplexSearchResult maximize_on_simplex(const std::function<double(const WeightVector&)>& f, std::size_t dim,
                                        const SimplexSearchOptions& options) {
  if (dim < 2) throw std::invalid_argument("simplex search needs dimension >= 2");

  std::vector<WeightVector> starts;
  starts.emplace_back(dim, 1.0 / static_cast<double>(dim));
  for (std::size_t k = 0; k < dim; ++k) {
    WeightVector w(dim, 0.3 / static_cast<double>(dim - 1));
    w[k] = 0.7;
    starts.push_back(w);
  }
  SamplingEnv rng(options.seed);
  for (std::size_t s = 0; s < options.random_starts; ++s) {
    // Uniform on the simplex: normalised exponentials.
    WeightVector w(dim);
    double total = 0.0;
    for (double& x : w) {
      x = -std::log(1.0 - rng.next_unit());
      total += x;
    }
    for (double& x : w) x /= total;
    starts.push_back(w);
  }

  Search search(f, dim, options);
  SimplexSearchResult result;
  double best_cost = std::numeric_limits<double>::infinity();
  for (const WeightVector& w : starts) {
    double c = 0.0;
    const Point y = search.polish(Point(w.begin(), w.end() - 1), c);
    if (c < best_cost) {
      best_cost = c;
      WeightVector projected;
      search.cost(y, &projected);
      result.point = projected;
    }
  }
  result.value = f(result.point);
  result.starts = starts.size();
  return result;
}

}  // namespace maximin
