#include "plaus/dominance.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

#include <Eigen/Dense>

#include "plaus/errors.hpp"

namespace plaus {

namespace {

constexpr double kHullTolerance = 1e-9;
constexpr double kScoreTolerance = 1e-12;
constexpr double kMaxGridPoints = 2e7;

}  // namespace

WorldSet::WorldSet(std::size_t k, std::vector<std::vector<int>> worlds) : k_(k) {
  if (worlds.empty()) throw InvalidArgument("world set is empty");
  std::set<std::vector<int>> unique;
  for (auto& w : worlds) {
    if (w.size() != k) throw InvalidArgument("world vector length differs from k");
    for (int v : w) {
      if (v != 0 && v != 1) throw InvalidArgument("world entries must be 0 or 1");
    }
    if (unique.insert(w).second) worlds_.push_back(std::move(w));
  }
}

double total_score(const ScoringRule& rule, std::span<const int> world,
                   std::span<const double> forecast) {
  double s = 0.0;
  for (std::size_t i = 0; i < world.size(); ++i) s += rule.raw(world[i] != 0, forecast[i]);
  return s;
}

std::vector<double> project_onto_hull(std::span<const double> point, const WorldSet& worlds) {
  const std::size_t k = worlds.k();
  if (point.size() != k) throw InvalidArgument("forecast length differs from k");
  const std::size_t count = worlds.worlds().size();
  // Shift so the target point is the origin; find the hull's min-norm point.
  Eigen::MatrixXd points(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(count));
  for (std::size_t j = 0; j < count; ++j) {
    for (std::size_t i = 0; i < k; ++i) points(i, j) = worlds.worlds()[j][i] - point[i];
  }
  const double scale = std::max(1.0, points.colwise().squaredNorm().maxCoeff());

  std::vector<Eigen::Index> active;
  std::vector<double> weights;
  {
    Eigen::Index start = 0;
    points.colwise().squaredNorm().minCoeff(&start);
    active.push_back(start);
    weights.push_back(1.0);
  }
  Eigen::VectorXd x = points.col(active[0]);

  for (int major = 0; major < 10000; ++major) {
    Eigen::Index entering = 0;
    const double best = (x.transpose() * points).minCoeff(&entering);
    if (best >= x.squaredNorm() - 1e-14 * scale) break;
    if (std::find(active.begin(), active.end(), entering) != active.end()) break;
    active.push_back(entering);
    weights.push_back(0.0);

    for (int minor = 0; minor < 10000; ++minor) {
      // Affine minimizer over the active set: min |P a| subject to sum a = 1.
      const auto s = static_cast<Eigen::Index>(active.size());
      Eigen::MatrixXd system = Eigen::MatrixXd::Zero(s + 1, s + 1);
      for (Eigen::Index a = 0; a < s; ++a) {
        for (Eigen::Index b = 0; b < s; ++b) {
          system(a, b) = points.col(active[a]).dot(points.col(active[b]));
        }
        system(a, s) = 1.0;
        system(s, a) = 1.0;
      }
      Eigen::VectorXd rhs = Eigen::VectorXd::Zero(s + 1);
      rhs(s) = 1.0;
      const Eigen::VectorXd alpha = system.completeOrthogonalDecomposition().solve(rhs);

      bool interior = true;
      for (Eigen::Index a = 0; a < s; ++a) interior &= alpha(a) > 1e-12;
      if (interior) {
        for (Eigen::Index a = 0; a < s; ++a) weights[a] = alpha(a);
        break;
      }
      double theta = 1.0;
      for (Eigen::Index a = 0; a < s; ++a) {
        if (alpha(a) <= 1e-12) theta = std::min(theta, weights[a] / (weights[a] - alpha(a)));
      }
      std::vector<Eigen::Index> kept;
      std::vector<double> kept_weights;
      for (Eigen::Index a = 0; a < s; ++a) {
        const double w = (1.0 - theta) * weights[a] + theta * alpha(a);
        if (w > 1e-12) {
          kept.push_back(active[a]);
          kept_weights.push_back(w);
        }
      }
      double total = 0.0;
      for (double w : kept_weights) total += w;
      for (double& w : kept_weights) w /= total;
      active = std::move(kept);
      weights = std::move(kept_weights);
    }
    x.setZero();
    for (std::size_t a = 0; a < active.size(); ++a) x += weights[a] * points.col(active[a]);
  }

  std::vector<double> projection(k);
  for (std::size_t i = 0; i < k; ++i) projection[i] = std::clamp(point[i] + x(i), 0.0, 1.0);
  return projection;
}

std::optional<std::vector<double>> grid_dominating_point(std::span<const double> forecast,
                                                         const WorldSet& worlds,
                                                         const ScoringRule& rule,
                                                         double resolution) {
  const std::size_t k = worlds.k();
  if (forecast.size() != k) throw InvalidArgument("forecast length differs from k");
  const long long steps = std::llround(1.0 / resolution);
  if (std::pow(static_cast<double>(steps + 1), static_cast<double>(k)) > kMaxGridPoints) {
    throw ResourceGuardError("grid search over " + std::to_string(k) +
                             " statements is beyond desk scale");
  }
  std::vector<double> reference;
  for (const auto& w : worlds.worlds()) reference.push_back(total_score(rule, w, forecast));

  std::vector<long long> digits(k, 0);
  std::vector<double> candidate(k, 0.0);
  while (true) {
    for (std::size_t i = 0; i < k; ++i) {
      candidate[i] = static_cast<double>(digits[i]) / static_cast<double>(steps);
    }
    bool no_worse = true, strictly_better = false;
    for (std::size_t w = 0; w < worlds.worlds().size() && no_worse; ++w) {
      const double s = total_score(rule, worlds.worlds()[w], candidate);
      no_worse = s <= reference[w] + kScoreTolerance;
      strictly_better |= s < reference[w] - kScoreTolerance;
    }
    if (no_worse && strictly_better) return candidate;
    std::size_t pos = 0;
    while (pos < k && ++digits[pos] > steps) digits[pos++] = 0;
    if (pos == k) break;
  }
  return std::nullopt;
}

DominanceResult dominance_check(std::span<const double> forecasts, const WorldSet& worlds,
                                const ScoringRule& rule) {
  if (!rule.strictly_proper()) {
    throw InvalidArgument("dominance needs a strictly proper rule, got " + rule.name());
  }
  if (forecasts.size() != worlds.k()) throw InvalidArgument("forecast length differs from k");
  for (double f : forecasts) {
    if (!(f >= 0.0 && f <= 1.0)) throw DomainError("forecast outside [0,1]");
  }

  DominanceResult result;
  const std::vector<double> projection = project_onto_hull(forecasts, worlds);
  double d2 = 0.0;
  for (std::size_t i = 0; i < forecasts.size(); ++i) {
    d2 += (projection[i] - forecasts[i]) * (projection[i] - forecasts[i]);
  }
  result.hull_distance = std::sqrt(d2);
  result.dominated = result.hull_distance > kHullTolerance;
  for (const auto& w : worlds.worlds()) {
    result.forecast_scores.push_back(total_score(rule, w, forecasts));
  }

  const bool grid_feasible =
      std::pow(101.0, static_cast<double>(worlds.k())) <= kMaxGridPoints;
  std::optional<std::vector<double>> grid_witness;
  if (grid_feasible) grid_witness = grid_dominating_point(forecasts, worlds, rule);

  if (result.dominated) {
    if (&rule == &brier_rule() || rule.name() == "brier") {
      result.witness = projection;
    } else if (grid_witness) {
      result.witness = *grid_witness;
    } else {
      throw ResourceGuardError("no witness construction for rule " + rule.name() +
                               " at k=" + std::to_string(worlds.k()));
    }
    for (const auto& w : worlds.worlds()) {
      result.witness_scores.push_back(total_score(rule, w, result.witness));
    }
  }
  if (grid_feasible) result.grid_confirmed = grid_witness.has_value() == result.dominated;
  return result;
}

}  // namespace plaus
