// primes.hpp — segmented prime sieve over an inclusive range with a
// smallest-prime-factor index, plus factorization helpers built on it.
#pragma once

#include <utility>
#include <vector>

#include "primelab/util.hpp"

namespace primelab {

struct SieveOptions {
  u64 segment = u64(1) << 18;        // values sieved per segment
  u64 spf_limit = 100'000'000;       // spf recorded for values <= this bound
  u64 budget_bytes = u64(3) << 30;   // refuse tables beyond this footprint
  unsigned threads = 0;              // 0 = hardware_concurrency
};

// Primality over [lo, hi] (one bit per integer) plus a smallest-prime-factor
// index over the prefix of the range up to spf_limit. Base primes up to
// sqrt(hi) are kept for trial division, so factorize() works for any n <= hi.
class PrimeTable {
 public:
  u64 lo() const { return lo_; }
  u64 hi() const { return hi_; }
  u64 spf_end() const { return spf_end_; }  // spf recorded for [lo, spf_end]

  bool is_prime(u64 n) const;           // n must lie in [lo, hi]
  bool covers(u64 n) const { return n >= lo_ && n <= hi_; }

  // Smallest prime factor of n in [lo, spf_end]; returns n itself when n is
  // prime. n must be >= 2.
  u64 smallest_factor(u64 n) const;

  u64 count_primes() const;             // primes in [lo, hi]
  u64 count_primes(u64 a, u64 b) const; // primes in [a, b] ∩ [lo, hi]

  // First prime > n within the table, or 0 when none remains.
  u64 next_prime_after(u64 n) const;

  const std::vector<u64>& base_primes() const { return base_; }

  template <class Fn>
  void for_each_prime(u64 a, u64 b, Fn&& fn) const {
    if (a < lo_) a = lo_;
    if (b > hi_) b = hi_;
    for (u64 n = a; n <= b && n >= a; ++n)
      if (bit(n)) fn(n);
  }

  friend PrimeTable build_tables(u64 lo, u64 hi, const SieveOptions& opts);

 private:
  bool bit(u64 n) const {
    u64 i = n - lo_;
    return (bits_[i >> 6] >> (i & 63)) & 1u;
  }
  u64 lo_ = 0, hi_ = 0, spf_end_ = 0;
  std::vector<u64> bits_;   // 1 = prime
  std::vector<u32> spf_;    // 0 = prime (or value <= 1); else smallest prime factor
  std::vector<u64> base_;   // primes up to sqrt(hi)
};

PrimeTable build_tables(u64 lo, u64 hi, const SieveOptions& opts = {});

struct Factorization {
  u64 n = 0;
  std::vector<std::pair<u64, u32>> factors;  // (prime, exponent), ascending

  u32 big_omega() const {         // Ω: prime factors with multiplicity
    u32 s = 0;
    for (auto& [p, e] : factors) s += e;
    return s;
  }
  u32 small_omega() const { return static_cast<u32>(factors.size()); }  // ω
  u64 divisor_count() const {     // d(n) = ∏ (e_i + 1)
    u64 d = 1;
    for (auto& [p, e] : factors) d = checked_mul(d, e + u64(1));
    return d;
  }
  // Least prime factor; 0 when n = 1 (no prime factors).
  u64 least_prime_factor() const { return factors.empty() ? 0 : factors.front().first; }
};

// Full factorization for 2 <= n <= table.hi() (n = 1 gives an empty list;
// n = 0 is a domain error). Uses the spf index when the table starts at 2 and
// n is inside the indexed prefix, trial division by base primes otherwise.
Factorization factorize(u64 n, const PrimeTable& table);

// Exponent multiset of n, sorted descending (360 = 2^3 3^2 5 -> {3,2,1}).
// Domain error for n <= 1.
std::vector<u32> exponent_pattern(u64 n, const PrimeTable& table);

// Monolithic sieve for small limits; used for base primes and Euler products.
std::vector<u64> primes_upto(u64 n);

}  // namespace primelab
