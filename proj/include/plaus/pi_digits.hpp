#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <memory>
#include <string>
#include <string_view>

namespace plaus {

// Decimal digits of pi after the decimal point, 1-indexed and immutable.
class PiDigitStore {
 public:
  // Accepts one contiguous run of '0'..'9', optionally followed by a newline.
  static PiDigitStore from_text(std::string_view text);
  static PiDigitStore from_file(const std::filesystem::path& path);

  std::size_t count() const noexcept { return digits_.size(); }
  // Digit at 1-based position `pos`; throws ResourceGuardError past count().
  int digit(std::size_t pos) const;
  std::string_view prefix(std::size_t n) const;

 private:
  explicit PiDigitStore(std::string digits) : digits_(std::move(digits)) {}
  std::string digits_;
};

// Rabinowitz-Wagon spigot. Independent of the bundled file; quadratic time,
// meant for validating the first few thousand digits.
std::string spigot_pi_digits(std::size_t count);

// $PLAUS_PI_DIGITS if set, else the data file installed with the build.
std::filesystem::path default_pi_digit_path();
std::shared_ptr<const PiDigitStore> load_default_pi_digits();

// True iff some digit at positions n..n^2 (inclusive) is nonzero.
// Requires n >= 1 and store.count() >= n^2.
bool pi_gap_nonzero(std::uint64_t n, const PiDigitStore& store);

// Largest N with N^2 <= digit_count.
std::uint64_t max_verifiable_index(std::size_t digit_count) noexcept;

}  // namespace plaus
