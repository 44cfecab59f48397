#include "plaus/pi_digits.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>
#include <vector>

#include "plaus/errors.hpp"

#ifndef PLAUS_DATA_DIR
#define PLAUS_DATA_DIR "data"
#endif

namespace plaus {

PiDigitStore PiDigitStore::from_text(std::string_view text) {
  if (!text.empty() && text.back() == '\n') text.remove_suffix(1);
  if (!text.empty() && text.back() == '\r') text.remove_suffix(1);
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text[i] < '0' || text[i] > '9') {
      throw DecodeError("pi-digits", "non-digit at offset " + std::to_string(i));
    }
  }
  return PiDigitStore(std::string(text));
}

PiDigitStore PiDigitStore::from_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw InvalidArgument("cannot open pi digit file " + path.string());
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return from_text(buffer.str());
}

int PiDigitStore::digit(std::size_t pos) const {
  if (pos == 0) throw DomainError("pi digit positions are 1-indexed");
  if (pos > digits_.size()) {
    throw ResourceGuardError("need pi digit " + std::to_string(pos) + ", have " +
                             std::to_string(digits_.size()));
  }
  return digits_[pos - 1] - '0';
}

std::string_view PiDigitStore::prefix(std::size_t n) const {
  if (n > digits_.size()) {
    throw ResourceGuardError("need " + std::to_string(n) + " pi digits, have " +
                             std::to_string(digits_.size()));
  }
  return std::string_view(digits_).substr(0, n);
}

std::string spigot_pi_digits(std::size_t count) {
  // Extra trailing digits absorb the spigot's unresolved carries.
  const std::size_t produce = count + 12;
  const std::size_t len = produce * 10 / 3 + 1;
  std::vector<std::int64_t> a(len, 2);
  std::string out;
  out.reserve(produce + 2);
  std::int64_t predigit = 0;
  std::size_t nines = 0;
  for (std::size_t j = 0; j < produce + 1; ++j) {
    std::int64_t q = 0;
    for (std::size_t i = len; i > 0; --i) {
      const std::int64_t x = 10 * a[i - 1] + q * static_cast<std::int64_t>(i);
      const auto denom = static_cast<std::int64_t>(2 * i - 1);
      a[i - 1] = x % denom;
      q = x / denom;
    }
    a[0] = q % 10;
    q /= 10;
    if (q == 9) {
      ++nines;
    } else if (q == 10) {
      out.push_back(static_cast<char>('0' + predigit + 1));
      out.append(nines, '0');
      predigit = 0;
      nines = 0;
    } else {
      out.push_back(static_cast<char>('0' + predigit));
      predigit = q;
      out.append(nines, '9');
      nines = 0;
    }
  }
  // out = "03141592..."; skip the initial placeholder and the integer part.
  return out.substr(2, count);
}

std::filesystem::path default_pi_digit_path() {
  if (const char* env = std::getenv("PLAUS_PI_DIGITS"); env != nullptr && *env != '\0') {
    return env;
  }
  return std::filesystem::path(PLAUS_DATA_DIR) / "pi_digits.txt";
}

std::shared_ptr<const PiDigitStore> load_default_pi_digits() {
  return std::make_shared<const PiDigitStore>(
      PiDigitStore::from_file(default_pi_digit_path()));
}

bool pi_gap_nonzero(std::uint64_t n, const PiDigitStore& store) {
  if (n == 0) throw DomainError("pi-gap index must be >= 1");
  if (n > 0xFFFFFFFFULL || n * n > store.count()) {
    throw ResourceGuardError("need n^2 = " + std::to_string(n) + "^2 digits of pi, have " +
                             std::to_string(store.count()));
  }
  const std::string_view digits = store.prefix(n * n);
  for (std::size_t pos = n; pos <= n * n; ++pos) {
    if (digits[pos - 1] != '0') return true;
  }
  return false;
}

std::uint64_t max_verifiable_index(std::size_t digit_count) noexcept {
  std::uint64_t n = 0;
  while ((n + 1) * (n + 1) <= digit_count) ++n;
  return n;
}

}  // namespace plaus
