// rat.hpp — exact rational and big-integer scalars (GMP-backed) with parsing
// and printing helpers shared across modules.
#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>

#include "primelab/util.hpp"

namespace primelab {

using Int = mpz_class;
using Rat = mpq_class;

inline Int factorial_int(unsigned n) {
  Int r;
  mpz_fac_ui(r.get_mpz_t(), n);
  return r;
}

inline Int binomial_int(unsigned n, unsigned k) {
  if (k > n) return 0;
  Int r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

// Canonical text form: "p/q", or just "p" when the denominator is 1.
inline std::string rat_to_string(const Rat& r) {
  Rat c = r;
  c.canonicalize();
  if (c.get_den() == 1) return c.get_num().get_str();
  return c.get_num().get_str() + "/" + c.get_den().get_str();
}

// Accepts "p/q", plain integers, and finite decimals ("0.95", "-1.25");
// decimals convert exactly (digits over a power of ten), so boundary cases
// like 20/21 vs 0.952... stay distinguishable as long as the caller writes
// what they mean.
inline Rat rat_from_string(const std::string& s) {
  if (s.empty()) throw std::domain_error("empty rational literal");
  auto slash = s.find('/');
  if (slash != std::string::npos) {
    Rat r;
    if (r.set_str(s, 10) != 0) throw std::domain_error("bad rational literal: " + s);
    if (r.get_den() == 0) throw std::domain_error("zero denominator: " + s);
    r.canonicalize();
    return r;
  }
  auto dot = s.find('.');
  if (dot == std::string::npos) {
    Rat r;
    if (r.set_str(s, 10) != 0) throw std::domain_error("bad integer literal: " + s);
    return r;
  }
  std::string digits = s.substr(0, dot) + s.substr(dot + 1);
  size_t frac_len = s.size() - dot - 1;
  if (digits.empty() || digits == "-" || digits == "+")
    throw std::domain_error("bad decimal literal: " + s);
  Int num;
  if (num.set_str(digits, 10) != 0) throw std::domain_error("bad decimal literal: " + s);
  Int den = 1;
  for (size_t i = 0; i < frac_len; ++i) den *= 10;
  Rat r(num, den);
  r.canonicalize();
  return r;
}

inline double rat_to_double(const Rat& r) { return r.get_d(); }

// Exact ceiling of a positive rational.
inline Int rat_ceil(const Rat& r) {
  Int q;
  mpz_cdiv_q(q.get_mpz_t(), r.get_num().get_mpz_t(), r.get_den().get_mpz_t());
  return q;
}

}  // namespace primelab
