#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include "plaus/instance.hpp"
#include "plaus/pi_digits.hpp"
#include "plaus/problems.hpp"
#include "plaus/random_stream.hpp"

namespace plaus {

// Forecasts are kept in [eps, 1 - eps] unless a certificate justifies 0 or 1.
inline constexpr double kClampEpsilon = 1e-9;
double clamp_plausibility(double p) noexcept;

// The resources S a forecaster is conditioned on. Caps are optional; an unset
// cap is unlimited within the budget class.
struct ResourceBudget {
  std::string budget_class;  // "constant", "poly-log", "poly" or "unbounded"
  std::optional<std::uint64_t> max_oracle_calls;
  std::optional<std::uint64_t> max_modexps;
  // Longest prefix of pi digits the forecaster may read.
  std::optional<std::uint64_t> max_digit_reads;
};

struct ResourceUsage {
  std::uint64_t oracle_calls = 0;
  std::uint64_t modexps = 0;
  std::uint64_t digit_reads = 0;
};

// Counts resource use of one evaluation against a budget; throws
// ResourceGuardError the moment a cap would be exceeded.
class ResourceMeter {
 public:
  explicit ResourceMeter(const ResourceBudget& budget) : budget_(&budget) {}

  void charge_oracle_call();
  void charge_modexp();
  void charge_digit_prefix(std::uint64_t digits);
  const ResourceUsage& usage() const noexcept { return usage_; }

 private:
  const ResourceBudget* budget_;
  ResourceUsage usage_;
};

// A plausibility function p: {0,1}* -> [0,1] tagged with its budget.
class PlausibilityFunction {
 public:
  virtual ~PlausibilityFunction() = default;

  virtual std::string name() const = 0;
  virtual const ResourceBudget& budget() const = 0;
  // True when evaluate() consumes random coins.
  virtual bool randomized() const { return false; }

  // Deterministic given (x, stream path). When `usage` is non-null the
  // evaluation's resource use is added to it.
  double evaluate(const Instance& x, RandomStream& stream, ResourceUsage* usage = nullptr) const;

 protected:
  virtual double do_evaluate(const Instance& x, RandomStream& stream, ResourceMeter& meter) const = 0;
};

using ForecasterPtr = std::shared_ptr<const PlausibilityFunction>;

// --- heuristics as plain functions ---------------------------------------

double constant_half(const Instance& x) noexcept;

// Prime-number-theorem density 1/ln m, corrected for trial division by the
// primes <= sieve_bound: eps if such a prime properly divides m, otherwise
// (1/ln m) * prod (1 - 1/p)^-1, clamped. Requires m >= 3.
double density_pnt(std::uint64_t m, std::uint64_t sieve_bound);

// k random Fermat rounds on odd m >= 3. A witness a^(m-1) != 1 (mod m) gives
// exactly 0; otherwise prior / (prior + (1 - prior) 2^-k), clamped. Charges
// one modular exponentiation per round to `meter` when given.
double fermat_bayes(std::uint64_t m, unsigned rounds, double prior, RandomStream& stream,
                    ResourceMeter* meter = nullptr);

// --- enumerative induction over the pi-gap family ------------------------

using HighPrecision =
    boost::multiprecision::number<boost::multiprecision::cpp_bin_float<320>,
                                  boost::multiprecision::et_off>;

// Number of digit positions n..n^2 covered by index n: n^2 - n + 1.
std::uint64_t gap_width(std::uint64_t n) noexcept;

// prod_{m = verified+1}^{upto} (1 - 10^-gap_width(m)) under the model of
// IID uniform digits. `upto` = nullopt means infinity; the infinite tail is
// truncated once the remaining terms cannot move the 320-digit value.
HighPrecision tail_product(std::uint64_t verified, std::optional<std::uint64_t> upto);

struct InductionResult {
  HighPrecision value;
  bool refuted = false;                 // some phi_m, m <= verified, is false
  std::optional<std::uint64_t> counterexample;
};

// Checks phi_1..phi_verified against the digit store (charging the digit
// prefix read to `meter`), then returns the tail product. A failed check
// returns exactly 0.
InductionResult induction_product(std::uint64_t verified, std::optional<std::uint64_t> upto,
                                  const PiDigitStore& store, ResourceMeter* meter = nullptr);

// Smallest N >= 1 with tail_product(N, infinity) > threshold.
std::uint64_t boolos_threshold(double threshold);

// --- forecaster objects ---------------------------------------------------

ForecasterPtr make_constant(double value);
ForecasterPtr make_density(std::uint64_t sieve_bound);
ForecasterPtr make_fermat(unsigned rounds, std::uint64_t sieve_bound);
ForecasterPtr make_exact_oracle(ProblemPtr problem);

enum class InductionClaim {
  kSingleIndex,  // instance n: phi_n
  kPrefix,       // instance M: phi_m for all m <= M
};

// Verifies phi_m for m = 1..N at construction, where N is boolos_threshold()
// when a threshold is given and otherwise the largest N with N^2 <= digits.
ForecasterPtr make_induction(std::shared_ptr<const PiDigitStore> store, InductionClaim claim,
                             std::uint64_t digit_budget, std::optional<double> threshold);

ForecasterPtr hardcoded_override(ForecasterPtr base, std::map<Instance, double> table);

}  // namespace plaus
