#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "plaus/ensembles.hpp"
#include "plaus/forecasters.hpp"
#include "plaus/instance.hpp"
#include "plaus/problems.hpp"

namespace plaus {

// B(outcome, forecast); lower is better.
class ScoringRule {
 public:
  using RawScore = double (*)(bool outcome, double forecast);

  ScoringRule(std::string name, RawScore raw, bool strictly_proper)
      : name_(std::move(name)), raw_(raw), strictly_proper_(strictly_proper) {}

  const std::string& name() const noexcept { return name_; }
  bool strictly_proper() const noexcept { return strictly_proper_; }

  // Checks the forecast is in [0,1]; throws InfiniteScoreError when the
  // score would be infinite.
  double operator()(bool outcome, double forecast) const;
  // No checks; may return +inf.
  double raw(bool outcome, double forecast) const noexcept { return raw_(outcome, forecast); }

 private:
  std::string name_;
  RawScore raw_;
  bool strictly_proper_;
};

double brier(bool outcome, double forecast);
double log_score(bool outcome, double forecast);

const ScoringRule& brier_rule();
const ScoringRule& log_rule();
// |o - x|; improper, shipped to show what failing the propriety check looks like.
const ScoringRule& absolute_rule();
// "brier", "log" or "absolute"; throws UnknownNameError otherwise.
const ScoringRule& rule_by_name(const std::string& name);

// --- propriety ------------------------------------------------------------

struct ProprietyReport {
  std::string rule;
  double grid_step = 0.0;
  std::vector<double> beliefs;     // y on the grid, endpoints included
  std::vector<double> minimizers;  // x*(y) over the same grid
  double max_deviation = 0.0;
  bool passes = false;

  double minimizer_at(double belief) const;
};

// For every grid belief y, minimizes y B(1,x) + (1-y) B(0,x) over grid x.
// The rule passes iff sup |x*(y) - y| <= grid_step. Requires
// 0 < grid_step <= 0.01 with 1/grid_step an integer.
ProprietyReport check_propriety(const ScoringRule& rule, double grid_step);

// --- expected score -------------------------------------------------------

enum class EvalMode { kExact, kMonteCarlo };
std::string to_string(EvalMode mode);
EvalMode eval_mode_from_string(const std::string& text);

struct EvalOptions {
  EvalMode mode = EvalMode::kExact;
  std::uint64_t samples = 100000;  // Monte Carlo only
  std::uint64_t seed = 0;
  std::uint64_t experiment = 1;
  unsigned jobs = 1;
};

struct ScoreEntry {
  unsigned n = 0;
  EvalMode mode = EvalMode::kExact;
  double mean = 0.0;
  double std_error = 0.0;     // 0 in exact mode
  std::uint64_t samples = 0;  // support size in exact mode
};

struct ScoreReport {
  std::string problem;
  std::string ensemble;
  std::string forecaster;
  std::string rule;
  std::uint64_t seed = 0;
  std::vector<ScoreEntry> entries;
};

// Exact: sum_x D_n(x) B(1_Pi(x), p(x)) over the enumerated support.
// Monte Carlo: sample mean with standard error stdev / sqrt(samples).
// Forecaster coins for instance x come from path (experiment, n, bits(x),
// 1 + 256 length(x)) in both modes; Monte Carlo draw i uses (experiment, n,
// i, 0). Results do not depend on options.jobs.
ScoreEntry expected_score(const PlausibilityFunction& forecaster, const DecisionProblem& problem,
                          const Ensemble& ensemble, const ScoringRule& rule, unsigned n,
                          const EvalOptions& options);

ScoreReport score_report(const PlausibilityFunction& forecaster, const DecisionProblem& problem,
                         const Ensemble& ensemble, const ScoringRule& rule,
                         const std::vector<unsigned>& lengths, const EvalOptions& options);

// --- improvement relation -------------------------------------------------

enum class LengthVerdict { kFirstBetter, kSecondBetter, kTie };
enum class AggregateVerdict { kFirstBetter, kSecondBetter, kIncomparable };
std::string to_string(LengthVerdict v);
std::string to_string(AggregateVerdict v);

// z for a two-sided 99% normal interval.
inline constexpr double kTieZ = 2.5758293035489004;

struct ComparisonRow {
  unsigned n = 0;
  ScoreEntry first;
  ScoreEntry second;
  LengthVerdict verdict = LengthVerdict::kTie;
};

struct ComparisonReport {
  std::string first;
  std::string second;
  std::vector<ComparisonRow> rows;
  AggregateVerdict aggregate = AggregateVerdict::kIncomparable;
  // The aggregate is evidence over the tested lengths only.
  std::string horizon_label = "finite-horizon evidence";
};

LengthVerdict compare_entries(const ScoreEntry& first, const ScoreEntry& second);
// Throws InvalidArgument if the reports disagree on modes or lengths.
ComparisonReport compare_reports(const ScoreReport& first, const ScoreReport& second);
ComparisonReport compare(const PlausibilityFunction& first, const PlausibilityFunction& second,
                         const DecisionProblem& problem, const Ensemble& ensemble,
                         const ScoringRule& rule, const std::vector<unsigned>& lengths,
                         const EvalOptions& options);

// --- worst-case demo ------------------------------------------------------

struct WorstCaseEntry {
  unsigned n = 0;
  double worst_score = 0.0;
  Instance worst_instance;
  double mean_score = 0.0;
};

// Largest per-instance score over the enumerated support of D_n.
WorstCaseEntry worst_case_score(const PlausibilityFunction& forecaster,
                                const DecisionProblem& problem, const Ensemble& ensemble,
                                const ScoringRule& rule, unsigned n, const EvalOptions& options);

}  // namespace plaus
