#include "plaus/number_theory.hpp"

#include "plaus/errors.hpp"

namespace plaus {

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) noexcept {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t m) noexcept {
  if (m == 1) return 0;
  std::uint64_t result = 1;
  base %= m;
  while (exp != 0) {
    if (exp & 1U) result = mul_mod(result, base, m);
    base = mul_mod(base, base, m);
    exp >>= 1;
  }
  return result;
}

bool is_prime_exact(std::uint64_t n) noexcept {
  static constexpr std::uint64_t kBases[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
  if (n < 2) return false;
  for (std::uint64_t p : kBases) {
    if (n % p == 0) return n == p;
  }
  std::uint64_t d = n - 1;
  unsigned s = 0;
  while ((d & 1U) == 0) {
    d >>= 1;
    ++s;
  }
  for (std::uint64_t a : kBases) {
    std::uint64_t x = pow_mod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (unsigned r = 1; r < s; ++r) {
      x = mul_mod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

PrimeSieve::PrimeSieve(std::uint64_t limit) : limit_(limit), composite_(limit + 1, false) {
  composite_[0] = true;
  if (limit >= 1) composite_[1] = true;
  for (std::uint64_t i = 2; i <= limit; ++i) {
    if (composite_[i]) continue;
    primes_.push_back(i);
    for (std::uint64_t j = i * i; j <= limit; j += i) composite_[j] = true;
  }
}

bool PrimeSieve::is_prime(std::uint64_t n) const {
  if (n > limit_) {
    throw ResourceGuardError("sieve covers only up to " + std::to_string(limit_));
  }
  return !composite_[n];
}

const PrimeSieve& shared_sieve() {
  static const PrimeSieve sieve(std::uint64_t{1} << 20);
  return sieve;
}

std::vector<std::uint64_t> primes_up_to(std::uint64_t bound) {
  if (bound <= shared_sieve().limit()) {
    std::vector<std::uint64_t> out;
    for (std::uint64_t p : shared_sieve().primes()) {
      if (p > bound) break;
      out.push_back(p);
    }
    return out;
  }
  PrimeSieve sieve(bound);
  auto primes = sieve.primes();
  return {primes.begin(), primes.end()};
}

}  // namespace plaus
