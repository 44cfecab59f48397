#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

namespace plaus {

// A finite bit string of at most 64 bits. Bit 0 of `bits()` is the last
// (least significant) character of the string form, so an integer encoded
// big-endian reads back unchanged through `value()`.
class Instance {
 public:
  static constexpr unsigned kMaxLength = 64;

  Instance() = default;
  Instance(std::uint64_t bits, unsigned length);

  // Parses a string of '0'/'1' characters, most significant first.
  static Instance from_string(std::string_view text);
  // Canonical big-endian encoding of a positive integer (no leading zeros).
  static Instance from_integer(std::uint64_t value);

  std::uint64_t bits() const noexcept { return bits_; }
  unsigned length() const noexcept { return length_; }
  bool empty() const noexcept { return length_ == 0; }
  // Bit at string position `pos` (0 = first/most significant character).
  bool bit(unsigned pos) const;
  // The bits as an unsigned integer (big-endian reading).
  std::uint64_t value() const noexcept { return bits_; }
  bool has_leading_zero() const noexcept;

  std::string to_string() const;
  // Lower-case hex of value(); "0" for the empty string.
  std::string to_hex() const;

  friend auto operator<=>(const Instance&, const Instance&) = default;

 private:
  std::uint64_t bits_ = 0;
  unsigned length_ = 0;
};

// Number of bits needed to write `value` (0 for 0).
unsigned bit_length(std::uint64_t value) noexcept;

}  // namespace plaus
