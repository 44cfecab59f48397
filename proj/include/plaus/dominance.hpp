#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "plaus/scoring.hpp"

namespace plaus {

// Admissible joint truth assignments for k statements.
class WorldSet {
 public:
  // Validates 0/1 entries and equal lengths; removes duplicates.
  WorldSet(std::size_t k, std::vector<std::vector<int>> worlds);

  std::size_t k() const noexcept { return k_; }
  const std::vector<std::vector<int>>& worlds() const noexcept { return worlds_; }

 private:
  std::size_t k_;
  std::vector<std::vector<int>> worlds_;
};

// Sum over statements of rule(world_i, forecast_i).
double total_score(const ScoringRule& rule, std::span<const int> world,
                   std::span<const double> forecast);

// Euclidean projection of `point` onto the convex hull of the worlds, by
// Wolfe's minimum-norm-point algorithm.
std::vector<double> project_onto_hull(std::span<const double> point, const WorldSet& worlds);

// Exhaustive search of the grid {0, r, 2r, ..., 1}^k for a vector scoring no
// worse in every world and strictly better in one. Returns the first found.
// Requires (1/r + 1)^k <= 2e7.
std::optional<std::vector<double>> grid_dominating_point(std::span<const double> forecast,
                                                         const WorldSet& worlds,
                                                         const ScoringRule& rule,
                                                         double resolution = 0.01);

struct DominanceResult {
  bool dominated = false;
  std::vector<double> witness;           // empty when not dominated
  double hull_distance = 0.0;            // Euclidean distance to the hull
  std::vector<double> forecast_scores;   // per world
  std::vector<double> witness_scores;    // per world, empty when not dominated
  std::optional<bool> grid_confirmed;    // unset when the grid is too large
};

// Forecasts are strictly dominated iff they lie outside the convex hull of
// the worlds. Brier witnesses are the Euclidean projection; log-score
// witnesses come from the grid (k <= 3). Improper rules are rejected.
DominanceResult dominance_check(std::span<const double> forecasts, const WorldSet& worlds,
                                const ScoringRule& rule);

}  // namespace plaus
