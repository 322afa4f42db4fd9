// pow_compare.hpp — library-internal exact compare of spf against n^{c1}.
#pragma once

#include <cmath>
#include <cstdlib>

#include "primelab/rat.hpp"
#include "primelab/util.hpp"

namespace primelab::detail {

// Decides base > n^{c1} for c1 = p/q. Exact via integer powers when q <= 64
// (double prefilter keeps the mpz path off the hot loop); long double
// comparison otherwise.
struct ThresholdCmp {
  unsigned long p = 0, q = 0;
  bool exact = false;
  long double c1d = 0;

  explicit ThresholdCmp(const Rat& c1) {
    Rat c = c1;
    c.canonicalize();
    c1d = static_cast<long double>(rat_to_double(c));
    if (c.get_num().fits_ulong_p() && c.get_den().fits_ulong_p() &&
        c.get_den().get_ui() <= 64) {
      p = c.get_num().get_ui();
      q = c.get_den().get_ui();
      exact = true;
    }
  }

  bool pass(u64 base, u64 n) const {
    if (n <= 1) return true;  // n^{c1} <= 1 < any prime
    if (!exact)
      return std::log(static_cast<long double>(base)) >
             c1d * std::log(static_cast<long double>(n));
    double lhs = static_cast<double>(q) * std::log(static_cast<double>(base));
    double rhs = static_cast<double>(p) * std::log(static_cast<double>(n));
    double margin = 1e-9 * (std::abs(rhs) + 1.0);
    if (lhs > rhs + margin) return true;
    if (lhs < rhs - margin) return false;
    Int a, b;
    mpz_ui_pow_ui(a.get_mpz_t(), base, q);
    mpz_ui_pow_ui(b.get_mpz_t(), n, p);
    return a > b;
  }
};

inline void validate_c1(const Rat& c1) {
  Rat c = c1;
  c.canonicalize();
  if (c <= 0 || c >= 1)
    throw std::domain_error("c1 must lie in (0, 1)");
}

}  // namespace primelab::detail
