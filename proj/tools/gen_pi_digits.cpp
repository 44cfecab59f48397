// Writes decimal digits of pi (after the decimal point) using Machin's formula
//   pi/4 = 4 arctan(1/5) - arctan(1/239)
// in fixed-point GMP integers. Used once to produce data/pi_digits.txt.

#include <gmp.h>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>

namespace {

// Sets result = unity * arctan(1/x) by the alternating Taylor series.
void arccot(mpz_t result, unsigned long x, const mpz_t unity) {
  mpz_t power, term;
  mpz_init(power);
  mpz_init(term);
  mpz_tdiv_q_ui(power, unity, x);
  mpz_set(result, power);
  const unsigned long x2 = x * x;
  for (unsigned long k = 3, sign = 1; mpz_sgn(power) != 0; k += 2, sign ^= 1) {
    mpz_tdiv_q_ui(power, power, x2);
    mpz_tdiv_q_ui(term, power, k);
    if (sign) {
      mpz_sub(result, result, term);
    } else {
      mpz_add(result, result, term);
    }
  }
  mpz_clear(power);
  mpz_clear(term);
}

}  // namespace

int main(int argc, char** argv) {
  if (argc != 3) {
    std::cerr << "usage: gen_pi_digits <count> <out-file>\n";
    return 2;
  }
  const long count = std::strtol(argv[1], nullptr, 10);
  if (count <= 0) {
    std::cerr << "count must be positive\n";
    return 2;
  }
  constexpr long kGuard = 20;

  mpz_t unity, a, b, pi;
  mpz_inits(unity, a, b, pi, nullptr);
  mpz_ui_pow_ui(unity, 10, static_cast<unsigned long>(count + kGuard));
  arccot(a, 5, unity);
  arccot(b, 239, unity);
  mpz_mul_ui(a, a, 16);
  mpz_mul_ui(b, b, 4);
  mpz_sub(pi, a, b);

  char* text = mpz_get_str(nullptr, 10, pi);
  std::string digits(text);
  void (*free_fn)(void*, size_t);
  mp_get_memory_functions(nullptr, nullptr, &free_fn);
  free_fn(text, digits.size() + 1);
  mpz_clears(unity, a, b, pi, nullptr);

  // digits = "31415..." scaled by 10^(count+guard); drop the integer part.
  if (digits.empty() || digits[0] != '3') {
    std::cerr << "unexpected leading digit\n";
    return 1;
  }
  std::ofstream out(argv[2]);
  out << digits.substr(1, static_cast<size_t>(count)) << '\n';
  return out ? 0 : 1;
}
