#include "plaus/forecasters.hpp"

#include <algorithm>
#include <cmath>
#include <utility>
#include <vector>

#include "plaus/errors.hpp"
#include "plaus/number_theory.hpp"

namespace plaus {

double clamp_plausibility(double p) noexcept {
  return std::clamp(p, kClampEpsilon, 1.0 - kClampEpsilon);
}

void ResourceMeter::charge_oracle_call() {
  if (budget_->max_oracle_calls && usage_.oracle_calls + 1 > *budget_->max_oracle_calls) {
    throw ResourceGuardError("oracle call cap " + std::to_string(*budget_->max_oracle_calls) +
                             " exceeded");
  }
  ++usage_.oracle_calls;
}

void ResourceMeter::charge_modexp() {
  if (budget_->max_modexps && usage_.modexps + 1 > *budget_->max_modexps) {
    throw ResourceGuardError("modular exponentiation cap " +
                             std::to_string(*budget_->max_modexps) + " exceeded");
  }
  ++usage_.modexps;
}

void ResourceMeter::charge_digit_prefix(std::uint64_t digits) {
  if (budget_->max_digit_reads && digits > *budget_->max_digit_reads) {
    throw ResourceGuardError("digit budget " + std::to_string(*budget_->max_digit_reads) +
                             " cannot cover " + std::to_string(digits) + " digits");
  }
  usage_.digit_reads = std::max(usage_.digit_reads, digits);
}

double PlausibilityFunction::evaluate(const Instance& x, RandomStream& stream,
                                      ResourceUsage* usage) const {
  ResourceMeter meter(budget());
  const double p = do_evaluate(x, stream, meter);
  if (!(p >= 0.0 && p <= 1.0)) {
    throw DomainError(name() + " produced a value outside [0,1]");
  }
  if (usage != nullptr) {
    usage->oracle_calls += meter.usage().oracle_calls;
    usage->modexps += meter.usage().modexps;
    usage->digit_reads = std::max(usage->digit_reads, meter.usage().digit_reads);
  }
  return p;
}

double constant_half(const Instance&) noexcept { return 0.5; }

double density_pnt(std::uint64_t m, std::uint64_t sieve_bound) {
  if (m <= 2) throw DomainError("density_pnt needs m >= 3, got " + std::to_string(m));
  double correction = 1.0;
  for (std::uint64_t p : primes_up_to(sieve_bound)) {
    if (m % p == 0 && m != p) return kClampEpsilon;
    correction /= 1.0 - 1.0 / static_cast<double>(p);
  }
  return clamp_plausibility(correction / std::log(static_cast<double>(m)));
}

double fermat_bayes(std::uint64_t m, unsigned rounds, double prior, RandomStream& stream,
                    ResourceMeter* meter) {
  if (m < 3 || (m & 1U) == 0) {
    throw DomainError("fermat_bayes needs odd m >= 3, got " + std::to_string(m));
  }
  if (!(prior >= 0.0 && prior <= 1.0)) throw DomainError("prior outside [0,1]");
  if (rounds == 0) return prior;
  const std::uint64_t hi = std::max<std::uint64_t>(2, m - 2);
  for (unsigned r = 0; r < rounds; ++r) {
    const std::uint64_t a = stream.uniform(2, hi);
    if (meter != nullptr) meter->charge_modexp();
    if (pow_mod(a, m - 1, m) != 1) return 0.0;
  }
  const double pass_if_composite = std::ldexp(1.0, -static_cast<int>(rounds));
  return clamp_plausibility(prior / (prior + (1.0 - prior) * pass_if_composite));
}

std::uint64_t gap_width(std::uint64_t n) noexcept {
  if (n > 0xFFFFFFFFULL) return ~std::uint64_t{0};
  return n * n - n + 1;
}

namespace {
// Terms with 10^-width below this many digits cannot change a HighPrecision.
constexpr std::uint64_t kNegligibleWidth = 340;
}  // namespace

HighPrecision tail_product(std::uint64_t verified, std::optional<std::uint64_t> upto) {
  HighPrecision product = 1;
  const HighPrecision ten = 10;
  for (std::uint64_t m = verified + 1; !upto || m <= *upto; ++m) {
    const std::uint64_t width = gap_width(m);
    if (width > kNegligibleWidth) break;
    product *= 1 - pow(ten, -static_cast<long long>(width));
  }
  return product;
}

InductionResult induction_product(std::uint64_t verified, std::optional<std::uint64_t> upto,
                                  const PiDigitStore& store, ResourceMeter* meter) {
  if (verified == 0) throw DomainError("induction_product needs at least one verified index");
  if (meter != nullptr) meter->charge_digit_prefix(verified * verified);
  InductionResult result;
  for (std::uint64_t m = 1; m <= verified; ++m) {
    if (!pi_gap_nonzero(m, store)) {
      result.refuted = true;
      result.counterexample = m;
      result.value = 0;
      return result;
    }
  }
  result.value = tail_product(verified, upto);
  return result;
}

std::uint64_t boolos_threshold(double threshold) {
  if (!(threshold > 0.0 && threshold < 1.0)) {
    throw DomainError("threshold must lie in (0,1)");
  }
  const HighPrecision target = threshold;
  for (std::uint64_t n = 1;; ++n) {
    if (tail_product(n, std::nullopt) > target) return n;
  }
}

namespace {

class Constant final : public PlausibilityFunction {
 public:
  explicit Constant(double value) : value_(value) {
    if (!(value >= 0.0 && value <= 1.0)) throw DomainError("constant forecast outside [0,1]");
  }
  std::string name() const override {
    std::string v = std::to_string(value_);
    v.erase(v.find_last_not_of('0') + 1);
    if (v.back() == '.') v.push_back('0');
    return "constant:v=" + v;
  }
  const ResourceBudget& budget() const override { return budget_; }

 protected:
  double do_evaluate(const Instance&, RandomStream&, ResourceMeter&) const override {
    return clamp_plausibility(value_);
  }

 private:
  double value_;
  ResourceBudget budget_{"constant", std::nullopt, std::nullopt, std::nullopt};
};

class Density final : public PlausibilityFunction {
 public:
  explicit Density(std::uint64_t sieve_bound) : sieve_bound_(sieve_bound) {}
  std::string name() const override { return "density:B=" + std::to_string(sieve_bound_); }
  const ResourceBudget& budget() const override { return budget_; }

 protected:
  double do_evaluate(const Instance& x, RandomStream&, ResourceMeter&) const override {
    return density_pnt(decode_integer(x, "density"), sieve_bound_);
  }

 private:
  std::uint64_t sieve_bound_;
  ResourceBudget budget_{"poly-log", std::nullopt, std::nullopt, std::nullopt};
};

class Fermat final : public PlausibilityFunction {
 public:
  Fermat(unsigned rounds, std::uint64_t sieve_bound)
      : rounds_(rounds),
        sieve_bound_(sieve_bound),
        budget_{"poly", std::nullopt, rounds, std::nullopt} {}
  std::string name() const override {
    return "fermat:k=" + std::to_string(rounds_) + ",B=" + std::to_string(sieve_bound_);
  }
  const ResourceBudget& budget() const override { return budget_; }
  bool randomized() const override { return rounds_ > 0; }

 protected:
  double do_evaluate(const Instance& x, RandomStream& stream, ResourceMeter& meter) const override {
    const std::uint64_t m = decode_integer(x, "fermat");
    if (m < 3 || (m & 1U) == 0) {
      throw DomainError("fermat forecaster needs odd m >= 3 (use density for even inputs), got " +
                        std::to_string(m));
    }
    return fermat_bayes(m, rounds_, density_pnt(m, sieve_bound_), stream, &meter);
  }

 private:
  unsigned rounds_;
  std::uint64_t sieve_bound_;
  ResourceBudget budget_;
};

class ExactOracle final : public PlausibilityFunction {
 public:
  explicit ExactOracle(ProblemPtr problem) : problem_(std::move(problem)) {
    if (!problem_) throw InvalidArgument("oracle needs a problem");
  }
  std::string name() const override { return "oracle"; }
  const ResourceBudget& budget() const override { return budget_; }

 protected:
  double do_evaluate(const Instance& x, RandomStream&, ResourceMeter& meter) const override {
    meter.charge_oracle_call();
    return problem_->decide(x) ? 1.0 : 0.0;
  }

 private:
  ProblemPtr problem_;
  ResourceBudget budget_{"unbounded", std::nullopt, std::nullopt, std::nullopt};
};

class Induction final : public PlausibilityFunction {
 public:
  Induction(std::shared_ptr<const PiDigitStore> store, InductionClaim claim,
            std::uint64_t digit_budget, std::optional<double> threshold)
      : store_(std::move(store)),
        claim_(claim),
        threshold_(threshold),
        budget_{"poly", std::nullopt, std::nullopt, digit_budget} {
    if (!store_) throw InvalidArgument("induction needs a digit store");
    verified_ = threshold ? boolos_threshold(*threshold) : max_verifiable_index(digit_budget);
    if (verified_ == 0) {
      throw ResourceGuardError("digit budget " + std::to_string(digit_budget) +
                               " cannot verify any index");
    }
    ResourceMeter meter(budget_);
    meter.charge_digit_prefix(verified_ * verified_);
    for (std::uint64_t m = 1; m <= verified_; ++m) checked_.push_back(pi_gap_nonzero(m, *store_));
  }

  std::string name() const override {
    std::string out = "induction:digits=" + std::to_string(*budget_.max_digit_reads);
    if (threshold_) out += ",threshold=" + std::to_string(*threshold_);
    return out;
  }
  const ResourceBudget& budget() const override { return budget_; }

 protected:
  double do_evaluate(const Instance& x, RandomStream&, ResourceMeter& meter) const override {
    meter.charge_digit_prefix(verified_ * verified_);
    const std::uint64_t index = decode_integer(x, "induction");
    if (claim_ == InductionClaim::kSingleIndex) {
      if (index <= verified_) return checked_[index - 1] ? 1.0 : 0.0;
      return clamp_plausibility(tail_product(index - 1, index).convert_to<double>());
    }
    const std::uint64_t seen = std::min(index, verified_);
    for (std::uint64_t m = 1; m <= seen; ++m) {
      if (!checked_[m - 1]) return 0.0;
    }
    if (index <= verified_) return 1.0;
    return clamp_plausibility(tail_product(verified_, index).convert_to<double>());
  }

 private:
  std::shared_ptr<const PiDigitStore> store_;
  InductionClaim claim_;
  std::optional<double> threshold_;
  ResourceBudget budget_;
  std::uint64_t verified_ = 0;
  std::vector<bool> checked_;
};

class Override final : public PlausibilityFunction {
 public:
  Override(ForecasterPtr base, std::map<Instance, double> table)
      : base_(std::move(base)), table_(std::move(table)) {
    if (!base_) throw InvalidArgument("override needs a base forecaster");
    for (const auto& [x, v] : table_) {
      if (!(v >= 0.0 && v <= 1.0)) {
        throw DomainError("override value for " + x.to_string() + " outside [0,1]");
      }
    }
  }
  std::string name() const override {
    return "override:base=" + base_->name() + ",entries=" + std::to_string(table_.size());
  }
  const ResourceBudget& budget() const override { return base_->budget(); }
  bool randomized() const override { return base_->randomized(); }

 protected:
  double do_evaluate(const Instance& x, RandomStream& stream, ResourceMeter& meter) const override {
    if (auto it = table_.find(x); it != table_.end()) return it->second;
    ResourceUsage usage;
    const double p = base_->evaluate(x, stream, &usage);
    for (std::uint64_t i = 0; i < usage.oracle_calls; ++i) meter.charge_oracle_call();
    for (std::uint64_t i = 0; i < usage.modexps; ++i) meter.charge_modexp();
    if (usage.digit_reads > 0) meter.charge_digit_prefix(usage.digit_reads);
    return p;
  }

 private:
  ForecasterPtr base_;
  std::map<Instance, double> table_;
};

}  // namespace

ForecasterPtr make_constant(double value) { return std::make_shared<Constant>(value); }
ForecasterPtr make_density(std::uint64_t sieve_bound) {
  return std::make_shared<Density>(sieve_bound);
}
ForecasterPtr make_fermat(unsigned rounds, std::uint64_t sieve_bound) {
  return std::make_shared<Fermat>(rounds, sieve_bound);
}
ForecasterPtr make_exact_oracle(ProblemPtr problem) {
  return std::make_shared<ExactOracle>(std::move(problem));
}
ForecasterPtr make_induction(std::shared_ptr<const PiDigitStore> store, InductionClaim claim,
                             std::uint64_t digit_budget, std::optional<double> threshold) {
  return std::make_shared<Induction>(std::move(store), claim, digit_budget, threshold);
}
ForecasterPtr hardcoded_override(ForecasterPtr base, std::map<Instance, double> table) {
  return std::make_shared<Override>(std::move(base), std::move(table));
}

}  // namespace plaus
