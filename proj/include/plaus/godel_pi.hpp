#pragma once

#include <cstdint>
#include <string>

#include "plaus/forecasters.hpp"
#include "plaus/pi_digits.hpp"

namespace plaus {

struct GodelPiReport {
  double threshold = 0.0;
  std::uint64_t digit_budget = 0;
  std::uint64_t verified_through = 0;  // largest N with phi_1..phi_N checked true
  bool all_verified = false;           // every m with m^2 <= budget holds
  std::optional<std::uint64_t> counterexample;
  HighPrecision tail_product;          // P(phi_m for all m > N) under IID digits
  // log10(1 - tail_product); stays finite when the product rounds to 1.
  double complement_log10 = 0.0;
  std::uint64_t boolos_n = 0;          // smallest N with tail product > threshold
  bool boolos_reached = false;         // boolos_n <= verified_through
};

// Verifies phi_m for every m with m^2 <= digit_budget, then evaluates the
// induction tail beyond the verified prefix and the threshold index.
GodelPiReport run_godel_pi(double threshold, std::uint64_t digit_budget, const PiDigitStore& store);

// Fixed-point decimal rendering with `digits` significant digits.
std::string to_decimal_string(const HighPrecision& value, int digits);

}  // namespace plaus
