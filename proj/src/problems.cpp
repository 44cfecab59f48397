#include "plaus/problems.hpp"

#include <bit>
#include <utility>

#include "plaus/errors.hpp"
#include "plaus/number_theory.hpp"

namespace plaus {

void DecisionProblem::check(const Instance& x) const {
  if (x.length() > feasible_length_bound()) {
    throw ResourceGuardError(name() + ": instance length " + std::to_string(x.length()) +
                             " exceeds feasible bound " +
                             std::to_string(feasible_length_bound()));
  }
  validate(x);
  check_resources(x);
}

bool DecisionProblem::decide(const Instance& x) const {
  check(x);
  return truth(x);
}

std::uint64_t decode_integer(const Instance& x, const std::string& decoder) {
  if (x.empty()) throw DecodeError(decoder, "empty string is not an integer encoding");
  if (x.has_leading_zero()) throw DecodeError(decoder, "leading zero in integer encoding");
  return x.value();
}

namespace {

class Primality final : public DecisionProblem {
 public:
  std::string name() const override { return "primality"; }
  unsigned feasible_length_bound() const override { return 62; }

 protected:
  void validate(const Instance& x) const override { decode_integer(x, name()); }
  bool truth(const Instance& x) const override { return is_prime_exact(x.value()); }
};

class Parity final : public DecisionProblem {
 public:
  std::string name() const override { return "parity"; }
  unsigned feasible_length_bound() const override { return Instance::kMaxLength; }

 protected:
  void validate(const Instance&) const override {}
  bool truth(const Instance& x) const override { return (std::popcount(x.bits()) & 1) != 0; }
};

class PiGap final : public DecisionProblem {
 public:
  explicit PiGap(std::shared_ptr<const PiDigitStore> store) : store_(std::move(store)) {
    if (!store_) throw InvalidArgument("pi-gap needs a digit store");
  }
  std::string name() const override { return "pi-gap"; }
  unsigned feasible_length_bound() const override {
    return bit_length(max_verifiable_index(store_->count()));
  }

 protected:
  void validate(const Instance& x) const override { decode_integer(x, name()); }
  void check_resources(const Instance& x) const override {
    const std::uint64_t n = x.value();
    if (n > max_verifiable_index(store_->count())) {
      throw ResourceGuardError("pi-gap: need n^2 = " + std::to_string(n) + "^2 digits of pi, have " +
                               std::to_string(store_->count()));
    }
  }
  bool truth(const Instance& x) const override { return pi_gap_nonzero(x.value(), *store_); }

 private:
  std::shared_ptr<const PiDigitStore> store_;
};

bool is_goldbach_index(std::uint64_t m) {
  if (m < 4 || (m & 1U) != 0) return true;
  const PrimeSieve& sieve = shared_sieve();
  for (std::uint64_t p : sieve.primes()) {
    if (p > m / 2) break;
    if (sieve.is_prime(m - p)) return true;
  }
  return false;
}

constexpr unsigned kGoldbachBits = 20;

class Goldbach final : public DecisionProblem {
 public:
  std::string name() const override { return "goldbach"; }
  unsigned feasible_length_bound() const override { return kGoldbachBits; }

 protected:
  void validate(const Instance& x) const override { decode_integer(x, name()); }
  bool truth(const Instance& x) const override { return is_goldbach_index(x.value()); }
};

// A universal claim "per_index holds for all m <= M". The first failing index
// is found once at construction, so truth(M) is M < first_failure.
class PrefixProblem final : public DecisionProblem {
 public:
  PrefixProblem(std::string name, ProblemPtr per_index)
      : name_(std::move(name)), per_index_(std::move(per_index)) {
    const unsigned bits = per_index_->feasible_length_bound();
    limit_ = bits >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << bits) - 1;
    // The bit-length bound can be coarser than a resource bound (pi digits).
    while (limit_ > 0) {
      try {
        per_index_->check(Instance::from_integer(limit_));
        break;
      } catch (const ResourceGuardError&) {
        --limit_;
      }
    }
    first_failure_ = limit_ + 1;
    for (std::uint64_t m = per_index_->first_index(); m <= limit_; ++m) {
      if (!per_index_->decide(Instance::from_integer(m))) {
        first_failure_ = m;
        break;
      }
    }
  }
  std::string name() const override { return name_; }
  unsigned feasible_length_bound() const override { return per_index_->feasible_length_bound(); }

 protected:
  void validate(const Instance& x) const override { decode_integer(x, name_); }
  void check_resources(const Instance& x) const override {
    if (x.value() > limit_) {
      throw ResourceGuardError(name_ + ": bound " + std::to_string(x.value()) +
                               " exceeds feasible index " + std::to_string(limit_));
    }
  }
  bool truth(const Instance& x) const override { return x.value() < first_failure_; }

 private:
  std::string name_;
  ProblemPtr per_index_;
  std::uint64_t limit_ = 0;
  std::uint64_t first_failure_ = 0;
};

}  // namespace

ProblemPtr make_primality() { return std::make_shared<Primality>(); }
ProblemPtr make_parity() { return std::make_shared<Parity>(); }
ProblemPtr make_pi_gap(std::shared_ptr<const PiDigitStore> store) {
  return std::make_shared<PiGap>(std::move(store));
}
ProblemPtr make_goldbach() { return std::make_shared<Goldbach>(); }
ProblemPtr make_goldbach_prefix() {
  return std::make_shared<PrefixProblem>("goldbach-prefix", make_goldbach());
}
ProblemPtr make_pi_gap_prefix(std::shared_ptr<const PiDigitStore> store) {
  return std::make_shared<PrefixProblem>("pi-gap-prefix", make_pi_gap(std::move(store)));
}

bool universal_prefix(const DecisionProblem& per_index, std::uint64_t bound) {
  if (bound == 0) throw DomainError("universal_prefix: bound must be >= 1");
  per_index.check(Instance::from_integer(bound));
  for (std::uint64_t m = per_index.first_index(); m <= bound; ++m) {
    if (!per_index.decide(Instance::from_integer(m))) return false;
  }
  return true;
}

}  // namespace plaus
