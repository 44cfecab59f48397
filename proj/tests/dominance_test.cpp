#include <doctest.h>

#include <cmath>
#include <limits>

#include <Eigen/Dense>

#include "plaus/dominance.hpp"
#include "plaus/errors.hpp"
#include "plaus/random_stream.hpp"

using namespace plaus;

namespace {

// Brute-force projection: affine projection onto every subset of worlds,
// keeping the closest candidate with nonnegative weights.
std::vector<double> subset_projection(const std::vector<double>& point, const WorldSet& worlds) {
  const auto& w = worlds.worlds();
  const std::size_t count = w.size();
  const std::size_t k = worlds.k();
  double best = std::numeric_limits<double>::infinity();
  std::vector<double> best_point;
  for (std::size_t mask = 1; mask < (std::size_t{1} << count); ++mask) {
    std::vector<std::size_t> idx;
    for (std::size_t j = 0; j < count; ++j) {
      if (mask & (std::size_t{1} << j)) idx.push_back(j);
    }
    const auto s = static_cast<Eigen::Index>(idx.size());
    Eigen::MatrixXd sys = Eigen::MatrixXd::Zero(s + 1, s + 1);
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(s + 1);
    for (Eigen::Index a = 0; a < s; ++a) {
      for (Eigen::Index b = 0; b < s; ++b) {
        double dot = 0.0;
        for (std::size_t i = 0; i < k; ++i) dot += w[idx[a]][i] * w[idx[b]][i];
        sys(a, b) = dot;
      }
      double pd = 0.0;
      for (std::size_t i = 0; i < k; ++i) pd += w[idx[a]][i] * point[i];
      rhs(a) = pd;
      sys(a, s) = 1.0;
      sys(s, a) = 1.0;
    }
    rhs(s) = 1.0;
    const Eigen::VectorXd sol = sys.completeOrthogonalDecomposition().solve(rhs);
    bool feasible = true;
    for (Eigen::Index a = 0; a < s; ++a) feasible &= sol(a) >= -1e-12;
    if (!feasible) continue;
    std::vector<double> q(k, 0.0);
    for (Eigen::Index a = 0; a < s; ++a) {
      for (std::size_t i = 0; i < k; ++i) q[i] += sol(a) * w[idx[a]][i];
    }
    double d = 0.0;
    for (std::size_t i = 0; i < k; ++i) d += (q[i] - point[i]) * (q[i] - point[i]);
    if (d < best) {
      best = d;
      best_point = q;
    }
  }
  return best_point;
}

WorldSet random_worlds(std::size_t k, std::size_t count, RandomStream& s) {
  std::vector<std::vector<int>> worlds;
  for (std::size_t j = 0; j < count; ++j) {
    std::vector<int> w(k);
    for (auto& v : w) v = static_cast<int>(s.uniform(0, 1));
    worlds.push_back(w);
  }
  return WorldSet(k, worlds);
}

}  // namespace

TEST_CASE("k = 1 with both worlds: nothing is dominated") {
  const WorldSet worlds(1, {{0}, {1}});
  for (int i = 0; i <= 10; ++i) {
    const std::vector<double> f = {i / 10.0};
    const auto r = dominance_check(f, worlds, brier_rule());
    CHECK_FALSE(r.dominated);
    CHECK(r.grid_confirmed == true);
  }
}

TEST_CASE("statement and negation: (0.8, 0.8) is dominated by (0.5, 0.5)") {
  const WorldSet worlds(2, {{1, 0}, {0, 1}});
  const std::vector<double> f = {0.8, 0.8};
  const auto r = dominance_check(f, worlds, brier_rule());
  CHECK(r.dominated);
  REQUIRE(r.witness.size() == 2);
  CHECK(r.witness[0] == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(r.witness[1] == doctest::Approx(0.5).epsilon(1e-12));
  for (double s : r.witness_scores) CHECK(s == doctest::Approx(0.5));
  for (double s : r.forecast_scores) CHECK(s == doctest::Approx(0.68));
  CHECK(r.grid_confirmed == true);
  CHECK(grid_dominating_point(f, worlds, brier_rule()).has_value());
}

TEST_CASE("statement and negation: (0.3, 0.7) lies on the hull") {
  const WorldSet worlds(2, {{1, 0}, {0, 1}});
  const std::vector<double> f = {0.3, 0.7};
  const auto r = dominance_check(f, worlds, brier_rule());
  CHECK_FALSE(r.dominated);
  CHECK(r.witness.empty());
  CHECK_FALSE(grid_dominating_point(f, worlds, brier_rule()).has_value());
  CHECK(r.grid_confirmed == true);
}

TEST_CASE("world set validation") {
  CHECK_THROWS_AS(WorldSet(2, {}), InvalidArgument);
  CHECK_THROWS_AS(WorldSet(2, {{1, 0, 1}}), InvalidArgument);
  CHECK_THROWS_AS(WorldSet(1, {{2}}), InvalidArgument);
  CHECK(WorldSet(2, {{1, 0}, {1, 0}, {0, 1}}).worlds().size() == 2);
  const WorldSet worlds(2, {{1, 0}, {0, 1}});
  const std::vector<double> f = {0.8, 0.8};
  CHECK_THROWS_AS(dominance_check(f, worlds, absolute_rule()), InvalidArgument);
}

TEST_CASE("log rule: dominated forecasts get a grid witness") {
  const WorldSet worlds(2, {{1, 0}, {0, 1}});
  const std::vector<double> f = {0.8, 0.8};
  const auto r = dominance_check(f, worlds, log_rule());
  CHECK(r.dominated);
  for (std::size_t w = 0; w < r.witness_scores.size(); ++w) {
    CHECK(r.witness_scores[w] < r.forecast_scores[w]);
  }
}

TEST_CASE("projection matches brute-force face enumeration") {
  RandomStream s(21, {});
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t k = 2 + trial % 4;
    const WorldSet worlds = random_worlds(k, 2 + trial % 6, s);
    std::vector<double> f(k);
    for (auto& v : f) v = s.next_unit();
    const auto fast = project_onto_hull(f, worlds);
    const auto slow = subset_projection(f, worlds);
    for (std::size_t i = 0; i < k; ++i) CHECK(fast[i] == doctest::Approx(slow[i]).epsilon(1e-9));
  }
}

TEST_CASE("witness soundness and de-domination, grid-verified at k <= 3") {
  RandomStream s(8, {});
  int dominated = 0;
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t k = 2 + trial % 2;
    const WorldSet worlds = random_worlds(k, 2 + trial % 3, s);
    std::vector<double> f(k);
    for (auto& v : f) v = std::round(s.next_unit() * 100.0) / 100.0;
    const auto r = dominance_check(f, worlds, brier_rule());
    REQUIRE(r.grid_confirmed.has_value());
    CHECK(*r.grid_confirmed);
    if (!r.dominated) continue;
    ++dominated;
    bool strict = false;
    for (std::size_t w = 0; w < worlds.worlds().size(); ++w) {
      CHECK(r.witness_scores[w] <= r.forecast_scores[w] + 1e-12);
      strict |= r.witness_scores[w] < r.forecast_scores[w] - 1e-12;
    }
    CHECK(strict);
    CHECK_FALSE(dominance_check(r.witness, worlds, brier_rule()).dominated);
  }
  CHECK(dominated > 10);
}

TEST_CASE("k = 12 runs without a grid") {
  std::vector<std::vector<int>> worlds;
  for (int j = 0; j < 12; ++j) {
    std::vector<int> w(12, 0);
    w[static_cast<std::size_t>(j)] = 1;  // exactly one statement is true
    worlds.push_back(w);
  }
  const WorldSet set(12, worlds);
  const std::vector<double> f(12, 0.2);  // sums to 2.4 > 1
  const auto r = dominance_check(f, set, brier_rule());
  CHECK(r.dominated);
  CHECK_FALSE(r.grid_confirmed.has_value());
  for (double v : r.witness) CHECK(v == doctest::Approx(1.0 / 12.0).epsilon(1e-9));
}
