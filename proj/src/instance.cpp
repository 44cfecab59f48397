#include "plaus/instance.hpp"

#include <bit>

#include "plaus/errors.hpp"

namespace plaus {

Instance::Instance(std::uint64_t bits, unsigned length)
    : bits_(bits), length_(length) {
  if (length > kMaxLength) {
    throw ResourceGuardError("instance length " + std::to_string(length) +
                             " exceeds " + std::to_string(kMaxLength) +
                             " bits");
  }
  if (length < kMaxLength && (bits >> length) != 0) {
    throw DomainError("bits do not fit in length " + std::to_string(length));
  }
}

Instance Instance::from_string(std::string_view text) {
  if (text.size() > kMaxLength) {
    throw ResourceGuardError("instance length " + std::to_string(text.size()) +
                             " exceeds " + std::to_string(kMaxLength) +
                             " bits");
  }
  std::uint64_t bits = 0;
  for (char c : text) {
    if (c != '0' && c != '1') {
      throw DecodeError("bit-string", "invalid character '" +
                                          std::string(1, c) + "'");
    }
    bits = (bits << 1) | static_cast<std::uint64_t>(c - '0');
  }
  return Instance(bits, static_cast<unsigned>(text.size()));
}

Instance Instance::from_integer(std::uint64_t value) {
  if (value == 0) {
    throw DomainError("zero has no canonical encoding (empty string rejected)");
  }
  return Instance(value, bit_length(value));
}

bool Instance::bit(unsigned pos) const {
  if (pos >= length_) {
    throw DomainError("bit position out of range");
  }
  return ((bits_ >> (length_ - 1 - pos)) & 1U) != 0;
}

bool Instance::has_leading_zero() const noexcept {
  return length_ > 0 && ((bits_ >> (length_ - 1)) & 1U) == 0;
}

std::string Instance::to_string() const {
  std::string out(length_, '0');
  for (unsigned i = 0; i < length_; ++i) {
    if ((bits_ >> (length_ - 1 - i)) & 1U) out[i] = '1';
  }
  return out;
}

std::string Instance::to_hex() const {
  static constexpr char kDigits[] = "0123456789abcdef";
  if (bits_ == 0) return "0";
  std::string out;
  for (std::uint64_t v = bits_; v != 0; v >>= 4) {
    out.insert(out.begin(), kDigits[v & 0xF]);
  }
  return out;
}

unsigned bit_length(std::uint64_t value) noexcept {
  return static_cast<unsigned>(std::bit_width(value));
}

}  // namespace plaus
