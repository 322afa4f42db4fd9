// polignac.hpp — prime gap spectra and density lower bounds for gaps that
// occur infinitely often.
#pragma once

#include <map>
#include <vector>

#include "primelab/rat.hpp"
#include "primelab/util.hpp"

namespace primelab {

inline constexpr double kExpNegGamma = 0.5614594835668852;  // e^{-gamma}

struct GapSpectrum {
  u64 limit = 0;
  u64 prime_count = 0;            // primes <= limit
  u64 pairs_total = 0;            // consecutive pairs with both primes <= limit
  std::map<u64, u64> counts;      // gap -> number of consecutive pairs
  u64 max_gap = 0;
};

GapSpectrum gap_spectrum(u64 limit, const ExecPolicy& pol = {});

// Density bound phi(P) / (P * k * (k-1)) with P the product of primes <= k,
// alongside the e^{-gamma} / (k^2 log k) comparator it tracks for large k.
struct PolignacBound {
  u64 k = 0;
  Rat bound;
  double bound_value = 0;
  double asymptotic = 0;
  double ratio = 0;  // bound_value / asymptotic
};

PolignacBound polignac_lower_bound(u64 k);  // k >= 2

// Weak pairs (p, p+d both prime) versus strong pairs (p, p+d consecutive
// primes), counted with both endpoints <= limit.
struct WeakStrongRow {
  u64 d = 0;
  u64 weak = 0;
  u64 strong = 0;
};

struct WeakStrongSummary {
  u64 limit = 0;
  std::vector<WeakStrongRow> rows;  // even d = 2, 4, ..., d_max
};

WeakStrongSummary weak_strong_summary(u64 limit, u64 d_max,
                                      const ExecPolicy& pol = {});

}  // namespace primelab
