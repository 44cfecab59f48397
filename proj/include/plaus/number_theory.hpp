#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace plaus {

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) noexcept;
std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t m) noexcept;

// Deterministic Miller-Rabin with the first twelve prime bases; exact for
// every 64-bit input.
bool is_prime_exact(std::uint64_t n) noexcept;

// Sieve of Eratosthenes over [0, limit].
class PrimeSieve {
 public:
  explicit PrimeSieve(std::uint64_t limit);

  std::uint64_t limit() const noexcept { return limit_; }
  // Throws ResourceGuardError above limit().
  bool is_prime(std::uint64_t n) const;
  std::span<const std::uint64_t> primes() const noexcept { return primes_; }

 private:
  std::uint64_t limit_;
  std::vector<bool> composite_;
  std::vector<std::uint64_t> primes_;
};

// Process-wide sieve up to 2^20, built on first use.
const PrimeSieve& shared_sieve();

// Primes p <= bound (bound may be 0 or 1: empty).
std::vector<std::uint64_t> primes_up_to(std::uint64_t bound);

}  // namespace plaus
