#include "plaus/godel_pi.hpp"

#include <sstream>

#include "plaus/errors.hpp"

namespace plaus {

GodelPiReport run_godel_pi(double threshold, std::uint64_t digit_budget, const PiDigitStore& store) {
  if (!(threshold > 0.0 && threshold < 1.0)) throw DomainError("threshold must lie in (0,1)");
  if (digit_budget < 1) throw ResourceGuardError("digit budget below 1^2: nothing can be verified");
  if (digit_budget > store.count()) {
    throw ResourceGuardError("digit budget " + std::to_string(digit_budget) + " exceeds the " +
                             std::to_string(store.count()) + " available digits");
  }
  GodelPiReport report;
  report.threshold = threshold;
  report.digit_budget = digit_budget;
  const std::uint64_t limit = max_verifiable_index(digit_budget);

  ResourceBudget budget{"poly", std::nullopt, std::nullopt, digit_budget};
  ResourceMeter meter(budget);
  const InductionResult result = induction_product(limit, std::nullopt, store, &meter);
  if (result.refuted) {
    report.counterexample = result.counterexample;
    report.verified_through = *result.counterexample - 1;
    report.tail_product = 0;
  } else {
    report.verified_through = limit;
    report.all_verified = true;
    report.tail_product = result.value;
  }
  if (report.tail_product < 1) {
    report.complement_log10 = log10(1 - report.tail_product).convert_to<double>();
  } else {
    // Below working precision; the first omitted factor dominates the rest.
    report.complement_log10 = -static_cast<double>(gap_width(report.verified_through + 1));
  }
  report.boolos_n = boolos_threshold(threshold);
  report.boolos_reached = report.all_verified && report.boolos_n <= report.verified_through;
  return report;
}

std::string to_decimal_string(const HighPrecision& value, int digits) {
  std::ostringstream out;
  out.precision(digits);
  out << std::fixed << value;
  return out.str();
}

}  // namespace plaus
