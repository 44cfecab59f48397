#include "plaus/scoring.hpp"

#include <cmath>
#include <limits>

#include "plaus/errors.hpp"
#include "plaus/parallel.hpp"

namespace plaus {

namespace {

void check_forecast(double x) {
  if (!(x >= 0.0 && x <= 1.0)) {
    throw DomainError("forecast " + std::to_string(x) + " outside [0,1]");
  }
}

double raw_brier(bool o, double x) {
  const double d = (o ? 1.0 : 0.0) - x;
  return d * d;
}

double raw_log(bool o, double x) {
  const double p = o ? x : 1.0 - x;
  if (p <= 0.0) return std::numeric_limits<double>::infinity();
  return -std::log(p);
}

double raw_absolute(bool o, double x) { return std::fabs((o ? 1.0 : 0.0) - x); }

}  // namespace

double ScoringRule::operator()(bool outcome, double forecast) const {
  check_forecast(forecast);
  const double s = raw_(outcome, forecast);
  if (std::isinf(s)) {
    throw InfiniteScoreError(name_ + " score is infinite: forecast " + std::to_string(forecast) +
                             " on outcome " + (outcome ? "1" : "0"));
  }
  return s;
}

double brier(bool outcome, double forecast) { return brier_rule()(outcome, forecast); }
double log_score(bool outcome, double forecast) { return log_rule()(outcome, forecast); }

const ScoringRule& brier_rule() {
  static const ScoringRule rule("brier", raw_brier, true);
  return rule;
}
const ScoringRule& log_rule() {
  static const ScoringRule rule("log", raw_log, true);
  return rule;
}
const ScoringRule& absolute_rule() {
  static const ScoringRule rule("absolute", raw_absolute, false);
  return rule;
}

const ScoringRule& rule_by_name(const std::string& name) {
  if (name == "brier") return brier_rule();
  if (name == "log") return log_rule();
  if (name == "absolute") return absolute_rule();
  throw UnknownNameError("rule", name);
}

double ProprietyReport::minimizer_at(double belief) const {
  const auto index = static_cast<std::size_t>(std::llround(belief / grid_step));
  if (index >= minimizers.size()) throw DomainError("belief outside [0,1]");
  return minimizers[index];
}

ProprietyReport check_propriety(const ScoringRule& rule, double grid_step) {
  if (!(grid_step > 0.0 && grid_step <= 0.01)) {
    throw InvalidArgument("grid step must satisfy 0 < step <= 0.01");
  }
  const long long intervals = std::llround(1.0 / grid_step);
  if (std::fabs(static_cast<double>(intervals) * grid_step - 1.0) > 1e-9) {
    throw InvalidArgument("grid step must divide 1");
  }
  const auto points = static_cast<std::size_t>(intervals) + 1;
  std::vector<double> grid(points);
  for (std::size_t i = 0; i < points; ++i) grid[i] = static_cast<double>(i) / static_cast<double>(intervals);

  // Scores at every grid x, computed once.
  std::vector<double> if_true(points), if_false(points);
  for (std::size_t i = 0; i < points; ++i) {
    if_true[i] = rule.raw(true, grid[i]);
    if_false[i] = rule.raw(false, grid[i]);
  }

  ProprietyReport report;
  report.rule = rule.name();
  report.grid_step = grid_step;
  report.beliefs = grid;
  report.minimizers.resize(points);
  for (std::size_t j = 0; j < points; ++j) {
    const double y = grid[j];
    double best = std::numeric_limits<double>::infinity();
    std::size_t best_i = 0;
    for (std::size_t i = 0; i < points; ++i) {
      // Zero-weight terms are skipped so 0 * inf does not poison the sum.
      double expected = 0.0;
      if (y > 0.0) expected += y * if_true[i];
      if (y < 1.0) expected += (1.0 - y) * if_false[i];
      if (expected < best) {
        best = expected;
        best_i = i;
      }
    }
    report.minimizers[j] = grid[best_i];
    report.max_deviation = std::max(report.max_deviation, std::fabs(grid[best_i] - y));
  }
  report.passes = report.max_deviation <= grid_step * (1.0 + 1e-9);
  return report;
}

std::string to_string(EvalMode mode) {
  return mode == EvalMode::kExact ? "exact" : "monte-carlo";
}

EvalMode eval_mode_from_string(const std::string& text) {
  if (text == "exact") return EvalMode::kExact;
  if (text == "monte-carlo" || text == "mc") return EvalMode::kMonteCarlo;
  throw UnknownNameError("mode", text);
}

namespace {

// Keyed by the instance, so a seeded randomized forecaster is one fixed
// function in both modes and Monte Carlo estimates the exact sum.
RandomStream forecaster_coins(const EvalOptions& options, unsigned n, const Instance& x) {
  return RandomStream(options.seed, {options.experiment, n, x.bits(), 1 + (std::uint64_t{x.length()} << 8)});
}

}  // namespace

ScoreEntry expected_score(const PlausibilityFunction& forecaster, const DecisionProblem& problem,
                          const Ensemble& ensemble, const ScoringRule& rule, unsigned n,
                          const EvalOptions& options) {
  ScoreEntry entry;
  entry.n = n;
  entry.mode = options.mode;
  if (options.mode == EvalMode::kExact) {
    if (n > problem.feasible_length_bound()) {
      throw ResourceGuardError(problem.name() + ": length " + std::to_string(n) +
                               " exceeds feasible bound " +
                               std::to_string(problem.feasible_length_bound()));
    }
    const std::vector<WeightedInstance> support = ensemble.enumerate(n);
    std::vector<double> terms(support.size());
    parallel_for(support.size(), options.jobs, [&](std::size_t i) {
      const auto& [x, probability] = support[i];
      RandomStream coins = forecaster_coins(options, n, x);
      terms[i] = probability * rule(problem.decide(x), forecaster.evaluate(x, coins));
    });
    entry.mean = pairwise_sum(terms);
    entry.samples = support.size();
    return entry;
  }

  if (options.samples == 0) throw InvalidArgument("monte-carlo mode needs at least one sample");
  std::vector<double> scores(options.samples);
  parallel_for(options.samples, options.jobs, [&](std::size_t i) {
    RandomStream draw(options.seed, {options.experiment, n, i, 0});
    const Instance x = ensemble.sample(n, draw);
    RandomStream coins = forecaster_coins(options, n, x);
    scores[i] = rule(problem.decide(x), forecaster.evaluate(x, coins));
  });
  const auto count = static_cast<double>(options.samples);
  entry.mean = pairwise_sum(scores) / count;
  if (options.samples > 1) {
    std::vector<double> squares(options.samples);
    for (std::size_t i = 0; i < scores.size(); ++i) {
      const double d = scores[i] - entry.mean;
      squares[i] = d * d;
    }
    const double variance = pairwise_sum(squares) / (count - 1.0);
    entry.std_error = std::sqrt(variance / count);
  }
  entry.samples = options.samples;
  return entry;
}

ScoreReport score_report(const PlausibilityFunction& forecaster, const DecisionProblem& problem,
                         const Ensemble& ensemble, const ScoringRule& rule,
                         const std::vector<unsigned>& lengths, const EvalOptions& options) {
  ScoreReport report;
  report.problem = problem.name();
  report.ensemble = ensemble.name();
  report.forecaster = forecaster.name();
  report.rule = rule.name();
  report.seed = options.seed;
  for (unsigned n : lengths) {
    report.entries.push_back(expected_score(forecaster, problem, ensemble, rule, n, options));
  }
  return report;
}

std::string to_string(LengthVerdict v) {
  switch (v) {
    case LengthVerdict::kFirstBetter: return "first-better";
    case LengthVerdict::kSecondBetter: return "second-better";
    case LengthVerdict::kTie: return "tie";
  }
  return "tie";
}

std::string to_string(AggregateVerdict v) {
  switch (v) {
    case AggregateVerdict::kFirstBetter: return "first-better";
    case AggregateVerdict::kSecondBetter: return "second-better";
    case AggregateVerdict::kIncomparable: return "incomparable-on-evidence";
  }
  return "incomparable-on-evidence";
}

LengthVerdict compare_entries(const ScoreEntry& first, const ScoreEntry& second) {
  if (first.mode != second.mode) throw InvalidArgument("cannot compare exact and monte-carlo entries");
  if (first.mode == EvalMode::kExact) {
    if (first.mean < second.mean) return LengthVerdict::kFirstBetter;
    if (second.mean < first.mean) return LengthVerdict::kSecondBetter;
    return LengthVerdict::kTie;
  }
  // Overlapping 99% intervals count as a tie.
  const double reach = kTieZ * (first.std_error + second.std_error);
  if (first.mean + reach < second.mean) return LengthVerdict::kFirstBetter;
  if (second.mean + reach < first.mean) return LengthVerdict::kSecondBetter;
  return LengthVerdict::kTie;
}

ComparisonReport compare_reports(const ScoreReport& first, const ScoreReport& second) {
  if (first.entries.size() != second.entries.size()) {
    throw InvalidArgument("reports cover different length ranges");
  }
  ComparisonReport report;
  report.first = first.forecaster;
  report.second = second.forecaster;
  bool first_strict = false, second_strict = false;
  for (std::size_t i = 0; i < first.entries.size(); ++i) {
    const ScoreEntry& a = first.entries[i];
    const ScoreEntry& b = second.entries[i];
    if (a.n != b.n) throw InvalidArgument("reports cover different length ranges");
    if (a.mode != b.mode) throw InvalidArgument("mismatched evaluation modes at n=" + std::to_string(a.n));
    const LengthVerdict v = compare_entries(a, b);
    first_strict |= v == LengthVerdict::kFirstBetter;
    second_strict |= v == LengthVerdict::kSecondBetter;
    report.rows.push_back({a.n, a, b, v});
  }
  if (first_strict && !second_strict) {
    report.aggregate = AggregateVerdict::kFirstBetter;
  } else if (second_strict && !first_strict) {
    report.aggregate = AggregateVerdict::kSecondBetter;
  }
  return report;
}

ComparisonReport compare(const PlausibilityFunction& first, const PlausibilityFunction& second,
                         const DecisionProblem& problem, const Ensemble& ensemble,
                         const ScoringRule& rule, const std::vector<unsigned>& lengths,
                         const EvalOptions& options) {
  return compare_reports(score_report(first, problem, ensemble, rule, lengths, options),
                         score_report(second, problem, ensemble, rule, lengths, options));
}

WorstCaseEntry worst_case_score(const PlausibilityFunction& forecaster,
                                const DecisionProblem& problem, const Ensemble& ensemble,
                                const ScoringRule& rule, unsigned n, const EvalOptions& options) {
  const std::vector<WeightedInstance> support = ensemble.enumerate(n);
  std::vector<double> scores(support.size());
  parallel_for(support.size(), options.jobs, [&](std::size_t i) {
    const Instance& x = support[i].instance;
    RandomStream coins(options.seed, {options.experiment, n, i, 1});
    scores[i] = rule(problem.decide(x), forecaster.evaluate(x, coins));
  });
  WorstCaseEntry entry;
  entry.n = n;
  std::vector<double> weighted(support.size());
  for (std::size_t i = 0; i < support.size(); ++i) {
    weighted[i] = support[i].probability * scores[i];
    if (i == 0 || scores[i] > entry.worst_score) {
      entry.worst_score = scores[i];
      entry.worst_instance = support[i].instance;
    }
  }
  entry.mean_score = pairwise_sum(weighted);
  return entry;
}

}  // namespace plaus
