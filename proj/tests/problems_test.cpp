#include <doctest.h>

#include "plaus/errors.hpp"
#include "plaus/number_theory.hpp"
#include "plaus/pi_digits.hpp"
#include "plaus/problems.hpp"

using namespace plaus;

namespace {

std::shared_ptr<const PiDigitStore> bundled_digits() {
  static auto store = std::make_shared<const PiDigitStore>(
      PiDigitStore::from_file(std::string(PLAUS_TEST_DATA_DIR) + "/pi_digits.txt"));
  return store;
}

bool trial_division_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("decide: named examples") {
  const auto primality = make_primality();
  CHECK(primality->decide(Instance::from_integer(7)));
  CHECK_FALSE(primality->decide(Instance::from_integer(561)));
  CHECK(make_parity()->decide(Instance::from_string("1011")));
  CHECK_FALSE(make_parity()->decide(Instance::from_string("11")));
  CHECK_FALSE(make_parity()->decide(Instance::from_string("")));
}

TEST_CASE("decide: decoder and resource errors") {
  const auto primality = make_primality();
  CHECK_THROWS_AS(primality->decide(Instance::from_string("")), DecodeError);
  CHECK_THROWS_AS(primality->decide(Instance::from_string("0111")), DecodeError);
  CHECK_THROWS_AS(primality->decide(Instance(~std::uint64_t{0}, 64)), ResourceGuardError);
  try {
    primality->decide(Instance::from_string("0111"));
  } catch (const DecodeError& e) {
    CHECK(e.decoder() == "primality");
  }
}

TEST_CASE("primality agrees with a sieve up to 10^6 and trial division beyond") {
  const PrimeSieve sieve(1000000);
  const auto primality = make_primality();
  for (std::uint64_t m = 1; m <= 1000000; ++m) {
    if (primality->decide(Instance::from_integer(m)) != sieve.is_prime(m)) {
      FAIL("mismatch at " << m);
    }
  }
  for (std::uint64_t m = 1000000000000ULL; m < 1000000000000ULL + 200; ++m) {
    CHECK(is_prime_exact(m) == trial_division_prime(m));
  }
  CHECK(is_prime_exact(18446744073709551557ULL));  // largest 64-bit prime
  CHECK_FALSE(is_prime_exact(3215031751ULL));      // strong pseudoprime to 2,3,5,7
}

TEST_CASE("decide is deterministic") {
  const auto primality = make_primality();
  for (std::uint64_t m = 1; m < 500; ++m) {
    const Instance x = Instance::from_integer(m);
    CHECK(primality->decide(x) == primality->decide(x));
  }
}

TEST_CASE("pi digit store: bundled file has the known prefix") {
  const auto store = bundled_digits();
  CHECK(store->count() >= 100000);
  CHECK(store->prefix(10) == "1415926535");
  CHECK(store->digit(1) == 1);
  CHECK_THROWS_AS(store->digit(store->count() + 1), ResourceGuardError);
  CHECK_THROWS_AS(PiDigitStore::from_text("14x5"), DecodeError);
  CHECK(PiDigitStore::from_text("1415\n").count() == 4);
}

TEST_CASE("pi digit store: file matches an independent spigot on 10^3 digits") {
  const std::string spigot = spigot_pi_digits(1000);
  CHECK(spigot.size() == 1000);
  CHECK(spigot == bundled_digits()->prefix(1000));
}

TEST_CASE("pi_gap_nonzero examples") {
  const auto store = bundled_digits();
  CHECK(pi_gap_nonzero(1, *store));
  CHECK(pi_gap_nonzero(2, *store));
  CHECK(pi_gap_nonzero(30, *store));
  CHECK_THROWS_AS(pi_gap_nonzero(0, *store), DomainError);
  const PiDigitStore short_store = PiDigitStore::from_text("14159");
  CHECK_THROWS_AS(pi_gap_nonzero(3, short_store), ResourceGuardError);
  // A synthetic store whose digits 2..4 are zero refutes phi_2.
  CHECK_FALSE(pi_gap_nonzero(2, PiDigitStore::from_text("10003")));
}

TEST_CASE("pi_gap_nonzero is monotone in available digits") {
  const auto full = bundled_digits();
  for (std::uint64_t n = 1; n <= 40; ++n) {
    const PiDigitStore partial = PiDigitStore::from_text(full->prefix(n * n));
    CHECK(pi_gap_nonzero(n, partial) == pi_gap_nonzero(n, *full));
  }
}

TEST_CASE("universal_prefix examples and conjunction property") {
  const auto goldbach = make_goldbach();
  CHECK(universal_prefix(*goldbach, 4));
  CHECK(universal_prefix(*goldbach, 100));
  const auto pi_gap = make_pi_gap(bundled_digits());
  CHECK(universal_prefix(*pi_gap, 10));

  // Independent Goldbach oracle: brute-force pairs with trial division.
  auto brute = [](std::uint64_t m) {
    if (m < 4 || m % 2 != 0) return true;
    for (std::uint64_t p = 2; p <= m / 2; ++p) {
      if (trial_division_prime(p) && trial_division_prime(m - p)) return true;
    }
    return false;
  };
  for (std::uint64_t bound = 1; bound <= 50; ++bound) {
    bool all = true;
    for (std::uint64_t m = 1; m <= bound; ++m) all = all && brute(m);
    CHECK(universal_prefix(*goldbach, bound) == all);
    bool all_pi = true;
    for (std::uint64_t m = 1; m <= bound; ++m) {
      all_pi = all_pi && pi_gap->decide(Instance::from_integer(m));
    }
    CHECK(universal_prefix(*pi_gap, bound) == all_pi);
  }
  CHECK_THROWS_AS(universal_prefix(*goldbach, std::uint64_t{1} << 21), ResourceGuardError);
  CHECK_THROWS_AS(universal_prefix(*pi_gap, 317), ResourceGuardError);
}

TEST_CASE("prefix problems agree with universal_prefix") {
  const auto goldbach = make_goldbach();
  const auto prefix = make_goldbach_prefix();
  for (std::uint64_t m : {1ULL, 4ULL, 37ULL, 1000ULL, 65536ULL}) {
    CHECK(prefix->decide(Instance::from_integer(m)) == universal_prefix(*goldbach, m));
  }
  const auto pi_prefix = make_pi_gap_prefix(bundled_digits());
  CHECK(pi_prefix->decide(Instance::from_integer(316)));
  CHECK_THROWS_AS(pi_prefix->decide(Instance::from_integer(317)), ResourceGuardError);
}
