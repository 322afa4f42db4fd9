// polignac.cpp — gap spectrum walks and the Euler-product density bound.
#include "primelab/polignac.hpp"

#include <cmath>
#include <stdexcept>

#include "primelab/primes.hpp"

namespace primelab {

GapSpectrum gap_spectrum(u64 limit, const ExecPolicy& pol) {
  if (limit < 3) throw std::domain_error("gap_spectrum: limit must be >= 3");
  GapSpectrum spec;
  spec.limit = limit;
  SieveOptions opts;
  opts.threads = pol.threads;
  opts.spf_limit = 0;  // primality only
  PrimeTable table = build_tables(2, std::max<u64>(limit, 3), opts);
  u64 prev = 0;
  table.for_each_prime(2, limit, [&](u64 p) {
    spec.prime_count++;
    if (prev) {
      spec.counts[p - prev]++;
      spec.pairs_total++;
      if (p - prev > spec.max_gap) spec.max_gap = p - prev;
    }
    prev = p;
  });
  return spec;
}

PolignacBound polignac_lower_bound(u64 k) {
  if (k < 2) throw std::domain_error("polignac_lower_bound: k must be >= 2");
  Int prod = 1, tot = 1;
  for (u64 p : primes_upto(k)) {
    prod *= p;
    tot *= p - 1;
  }
  PolignacBound out;
  out.k = k;
  out.bound = Rat(tot) / Rat(prod * Int(k) * Int(k - 1));
  out.bound.canonicalize();
  out.bound_value = rat_to_double(out.bound);
  double kk = static_cast<double>(k);
  out.asymptotic = kExpNegGamma / (kk * kk * std::log(kk));
  out.ratio = out.bound_value / out.asymptotic;
  return out;
}

WeakStrongSummary weak_strong_summary(u64 limit, u64 d_max,
                                      const ExecPolicy& pol) {
  if (limit < 100)
    throw std::domain_error("weak_strong_summary: limit must be >= 100");
  WeakStrongSummary sum;
  sum.limit = limit;
  if (d_max < 2) return sum;  // no even gap to report
  u64 rows = d_max / 2;
  sum.rows.resize(rows);
  for (u64 i = 0; i < rows; ++i) sum.rows[i].d = 2 * (i + 1);
  SieveOptions opts;
  opts.threads = pol.threads;
  opts.spf_limit = 0;
  PrimeTable table = build_tables(2, limit, opts);
  u64 prev = 0;
  table.for_each_prime(2, limit, [&](u64 p) {
    for (u64 d = 2; d <= d_max && p + d <= limit; d += 2)
      if (table.is_prime(p + d)) sum.rows[d / 2 - 1].weak++;
    if (prev && p - prev <= d_max && (p - prev) % 2 == 0)
      sum.rows[(p - prev) / 2 - 1].strong++;
    prev = p;
  });
  return sum;
}

}  // namespace primelab
