#include <doctest.h>

#include <cmath>

#include "plaus/errors.hpp"
#include "plaus/scoring.hpp"

using namespace plaus;

TEST_CASE("brier examples") {
  CHECK(brier(true, 0.5) == 0.25);
  CHECK(brier(false, 0.0) == 0.0);
  CHECK(brier(true, 0.7) == doctest::Approx(0.09).epsilon(1e-12));
  CHECK_THROWS_AS(brier(true, 1.5), DomainError);
  CHECK_THROWS_AS(brier(true, -0.1), DomainError);
}

TEST_CASE("log score examples") {
  CHECK(log_score(true, 1.0 - kClampEpsilon) == doctest::Approx(kClampEpsilon).epsilon(1e-6));
  CHECK(log_score(true, 0.5) == doctest::Approx(std::log(2.0)));
  CHECK(log_score(false, 0.5) == doctest::Approx(std::log(2.0)));
  CHECK(log_score(true, 1.0) == 0.0);
  CHECK_THROWS_AS(log_score(true, 0.0), InfiniteScoreError);
  CHECK_THROWS_AS(log_score(false, 1.0), InfiniteScoreError);
}

TEST_CASE("rules are monotone in the forecast") {
  for (const ScoringRule* rule : {&brier_rule(), &log_rule(), &absolute_rule()}) {
    double prev_true = INFINITY, prev_false = -INFINITY;
    for (int i = 1; i < 1000; ++i) {
      const double x = i / 1000.0;
      CHECK((*rule)(true, x) <= prev_true);
      CHECK((*rule)(false, x) >= prev_false);
      prev_true = (*rule)(true, x);
      prev_false = (*rule)(false, x);
    }
  }
  CHECK_THROWS_AS(rule_by_name("spherical"), UnknownNameError);
}

TEST_CASE("propriety: brier and log pass, absolute loss fails") {
  const ProprietyReport b = check_propriety(brier_rule(), 0.001);
  CHECK(b.passes);
  CHECK(b.max_deviation <= 0.001);
  CHECK(b.beliefs.front() == 0.0);
  CHECK(b.beliefs.back() == 1.0);
  CHECK(b.beliefs.size() == 1001);

  const ProprietyReport l = check_propriety(log_rule(), 0.001);
  CHECK(l.passes);
  CHECK(l.max_deviation <= 0.001);

  const ProprietyReport a = check_propriety(absolute_rule(), 0.001);
  CHECK_FALSE(a.passes);
  CHECK(a.minimizer_at(0.3) == 0.0);
  // Expected absolute loss 0.3 (1 - x) + 0.7 x = 0.3 + 0.4 x is minimized at x = 0.
  CHECK(a.minimizer_at(0.8) == 1.0);

  CHECK_THROWS_AS(check_propriety(brier_rule(), 0.02), InvalidArgument);
  CHECK_THROWS_AS(check_propriety(brier_rule(), 0.0), InvalidArgument);
  CHECK_THROWS_AS(check_propriety(brier_rule(), 0.003), InvalidArgument);
}

TEST_CASE("propriety: a coarser grid on the analytic minimizer") {
  // For Brier, x*(y) = y exactly; a 0.01 grid must reproduce every belief.
  const ProprietyReport b = check_propriety(brier_rule(), 0.01);
  for (std::size_t i = 0; i < b.beliefs.size(); ++i) {
    CHECK(std::fabs(b.minimizers[i] - b.beliefs[i]) <= 1e-12);
  }
}

TEST_CASE("expected score: baselines") {
  const EvalOptions exact{};
  for (unsigned n = 1; n <= 8; ++n) {
    CHECK(expected_score(*make_constant(0.5), *make_parity(), *make_uniform_bits(), brier_rule(), n, exact).mean == 0.25);
    CHECK(expected_score(*make_exact_oracle(make_parity()), *make_parity(), *make_uniform_bits(), brier_rule(), n, exact).mean == 0.0);
    CHECK(expected_score(*make_constant(0.5), *make_parity(), *make_uniform_bits(), log_rule(), n, exact).mean ==
          doctest::Approx(std::log(2.0)).epsilon(1e-14));
  }
}

TEST_CASE("expected score: p = 0.9 on parity, n = 3") {
  // Independent enumeration: four of the eight strings have odd parity.
  double oracle = 0.0;
  for (int v = 0; v < 8; ++v) {
    const bool odd = __builtin_popcount(v) % 2 == 1;
    oracle += (odd ? 0.01 : 0.81) / 8.0;
  }
  CHECK(oracle == doctest::Approx(0.41).epsilon(1e-14));
  const ScoreEntry e = expected_score(*make_constant(0.9), *make_parity(), *make_uniform_bits(), brier_rule(), 3, {});
  CHECK(e.mean == doctest::Approx(oracle).epsilon(1e-14));
  CHECK(e.samples == 8);
  CHECK(e.std_error == 0.0);
}

TEST_CASE("expected score: errors") {
  EvalOptions mc{EvalMode::kMonteCarlo, 0, 1, 1, 1};
  CHECK_THROWS_AS(expected_score(*make_constant(0.5), *make_parity(), *make_uniform_bits(), brier_rule(), 3, mc),
                  InvalidArgument);
  CHECK_THROWS_AS(expected_score(*make_constant(0.5), *make_parity(), *make_uniform_bits(), brier_rule(), 21, {}),
                  ResourceGuardError);
  CHECK_THROWS_AS(expected_score(*make_constant(0.5), *make_primality(), *make_uniform_odd(), brier_rule(), 63, {}),
                  ResourceGuardError);
}

TEST_CASE("monte carlo is bit-identical across job counts") {
  const auto f = make_fermat(10, 100);
  EvalOptions a{EvalMode::kMonteCarlo, 20000, 7, 1, 1};
  EvalOptions b = a;
  b.jobs = 4;
  const ScoreEntry ea = expected_score(*f, *make_primality(), *make_uniform_odd(), brier_rule(), 14, a);
  const ScoreEntry eb = expected_score(*f, *make_primality(), *make_uniform_odd(), brier_rule(), 14, b);
  CHECK(ea.mean == eb.mean);
  CHECK(ea.std_error == eb.std_error);
}

TEST_CASE("monte carlo agrees with exact enumeration within 4 standard errors") {
  const auto primality = make_primality();
  EvalOptions mc{EvalMode::kMonteCarlo, 100000, 3, 1, 1};
  for (const auto& f : {make_density(100), make_fermat(10, 100), make_constant(0.3)}) {
    for (unsigned n : {6U, 10U, 12U}) {
      const double exact = expected_score(*f, *primality, *make_uniform_odd(), brier_rule(), n, {}).mean;
      const ScoreEntry e = expected_score(*f, *primality, *make_uniform_odd(), brier_rule(), n, mc);
      CHECK(std::fabs(e.mean - exact) <= 4 * e.std_error + 1e-12);
    }
  }
}

TEST_CASE("hardcoded override improves expected score exactly where it should") {
  const auto primality = make_primality();
  const auto base = make_density(100);
  const Instance x0 = Instance::from_integer(101);  // prime, in uniform-odd support at n = 7
  RandomStream s(0, {});
  REQUIRE(base->evaluate(x0, s) < 1.0);
  const auto pinned = hardcoded_override(base, {{x0, 1.0}});
  const double before = expected_score(*base, *primality, *make_uniform_odd(), brier_rule(), 7, {}).mean;
  const double after = expected_score(*pinned, *primality, *make_uniform_odd(), brier_rule(), 7, {}).mean;
  CHECK(after < before);

  // 100 is outside the odd-integer support: a D-null override changes nothing.
  const auto null_override = hardcoded_override(base, {{Instance::from_integer(100), 1.0}});
  CHECK(expected_score(*null_override, *primality, *make_uniform_odd(), brier_rule(), 7, {}).mean == before);
}

TEST_CASE("compare: examples and order sanity") {
  const auto parity = make_parity();
  const std::vector<unsigned> lengths = {2, 3, 4, 5};
  const auto oracle_vs_half = compare(*make_exact_oracle(parity), *make_constant(0.5), *parity,
                                      *make_uniform_bits(), brier_rule(), lengths, {});
  CHECK(oracle_vs_half.aggregate == AggregateVerdict::kFirstBetter);
  for (const auto& row : oracle_vs_half.rows) CHECK(row.verdict == LengthVerdict::kFirstBetter);

  const auto half = make_constant(0.5);
  const auto self = compare(*half, *half, *parity, *make_uniform_bits(), brier_rule(), lengths, {});
  CHECK(self.aggregate == AggregateVerdict::kIncomparable);
  for (const auto& row : self.rows) CHECK(row.verdict == LengthVerdict::kTie);

  const auto reversed = compare(*make_constant(0.5), *make_exact_oracle(parity), *parity,
                                *make_uniform_bits(), brier_rule(), lengths, {});
  CHECK(reversed.aggregate == AggregateVerdict::kSecondBetter);
}

TEST_CASE("compare: density beats constant-half on primality, n = 8..16") {
  std::vector<unsigned> lengths;
  for (unsigned n = 8; n <= 16; ++n) lengths.push_back(n);
  const auto report = compare(*make_density(100), *make_constant(0.5), *make_primality(),
                              *make_uniform_odd(), brier_rule(), lengths, {});
  CHECK(report.aggregate == AggregateVerdict::kFirstBetter);
  for (const auto& row : report.rows) CHECK(row.verdict == LengthVerdict::kFirstBetter);
}

TEST_CASE("compare: mismatched modes and ranges are rejected") {
  const auto parity = make_parity();
  const auto half = make_constant(0.5);
  const ScoreReport exact = score_report(*half, *parity, *make_uniform_bits(), brier_rule(), {3, 4}, {});
  const ScoreReport mc = score_report(*half, *parity, *make_uniform_bits(), brier_rule(), {3, 4},
                                      {EvalMode::kMonteCarlo, 100, 1, 1, 1});
  CHECK_THROWS_AS(compare_reports(exact, mc), InvalidArgument);
  const ScoreReport shorter = score_report(*half, *parity, *make_uniform_bits(), brier_rule(), {3}, {});
  CHECK_THROWS_AS(compare_reports(exact, shorter), InvalidArgument);
}

TEST_CASE("compare: monte carlo ties when intervals overlap") {
  ScoreEntry a{10, EvalMode::kMonteCarlo, 0.20, 0.01, 1000};
  ScoreEntry b{10, EvalMode::kMonteCarlo, 0.23, 0.01, 1000};
  CHECK(compare_entries(a, b) == LengthVerdict::kTie);  // 0.03 < 2.576 * 0.02
  b.mean = 0.26;
  CHECK(compare_entries(a, b) == LengthVerdict::kFirstBetter);
  CHECK(compare_entries(b, a) == LengthVerdict::kSecondBetter);
}

TEST_CASE("worst-case demo: constant half is the worst-case optimum") {
  const auto primality = make_primality();
  for (unsigned n = 4; n <= 16; ++n) {
    const auto half = worst_case_score(*make_constant(0.5), *primality, *make_uniform_odd(), brier_rule(), n, {});
    CHECK(half.worst_score == 0.25);
    CHECK(half.mean_score == 0.25);
  }
  // Trial division by primes <= 100 is exact below 101^2; from n = 14 on a
  // composite such as 101 * 103 survives and is forecast near 1.
  for (unsigned n = 14; n <= 16; ++n) {
    const auto density = worst_case_score(*make_density(100), *primality, *make_uniform_odd(), brier_rule(), n, {});
    CHECK(density.worst_score > 0.25);
    CHECK(density.mean_score < 0.25);
  }
}
