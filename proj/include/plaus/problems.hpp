#pragma once

#include <cstdint>
#include <memory>
#include <string>

#include "plaus/instance.hpp"
#include "plaus/pi_digits.hpp"

namespace plaus {

// A decidable language over bit strings together with the analyst's exact
// membership oracle. Subclasses supply the decoder and the truth function;
// decide() enforces the feasible length bound before either runs.
class DecisionProblem {
 public:
  virtual ~DecisionProblem() = default;

  virtual std::string name() const = 0;
  virtual unsigned feasible_length_bound() const = 0;

  // Throws DecodeError or ResourceGuardError if `x` cannot be decided.
  void check(const Instance& x) const;
  // Exact value of the indicator 1_Pi(x).
  bool decide(const Instance& x) const;

  // Indexed families (pi-gap, goldbach) accept integer indices starting here.
  virtual std::uint64_t first_index() const { return 1; }

 protected:
  // Decoder; throws DecodeError on malformed input.
  virtual void validate(const Instance& x) const = 0;
  // Extra guards that depend on the decoded value (e.g. pi digits needed).
  virtual void check_resources(const Instance&) const {}
  virtual bool truth(const Instance& x) const = 0;
};

using ProblemPtr = std::shared_ptr<const DecisionProblem>;

// Decodes a canonical big-endian integer (nonempty, no leading zeros).
std::uint64_t decode_integer(const Instance& x, const std::string& decoder);

// m is prime. Length bound 62 bits.
ProblemPtr make_primality();
// Odd number of ones. Accepts the empty string.
ProblemPtr make_parity();
// Index n: some digit of pi at positions n..n^2 is nonzero.
ProblemPtr make_pi_gap(std::shared_ptr<const PiDigitStore> store);
// Index m: m is not an even number >= 4, or m is a sum of two primes.
ProblemPtr make_goldbach();
// Index M: the goldbach predicate holds for every m <= M.
ProblemPtr make_goldbach_prefix();
// Index M: pi-gap holds for every n <= M.
ProblemPtr make_pi_gap_prefix(std::shared_ptr<const PiDigitStore> store);

// AND over first_index() <= m <= bound of problem.decide(m). Throws
// ResourceGuardError up front when `bound` itself is infeasible.
bool universal_prefix(const DecisionProblem& per_index, std::uint64_t bound);

}  // namespace plaus
