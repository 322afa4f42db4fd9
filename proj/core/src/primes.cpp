#include "primelab/primes.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>

namespace primelab {

std::vector<u64> primes_upto(u64 n) {
  if (n > (u64(1) << 32))
    throw capacity_error("primes_upto limit beyond 2^32; use build_tables");
  std::vector<u64> out;
  if (n < 2) return out;
  std::vector<u8> composite(n + 1, 0);
  for (u64 i = 2; i * i <= n; ++i)
    if (!composite[i])
      for (u64 j = i * i; j <= n; j += i) composite[j] = 1;
  for (u64 i = 2; i <= n; ++i)
    if (!composite[i]) out.push_back(i);
  return out;
}

PrimeTable build_tables(u64 lo, u64 hi, const SieveOptions& opts) {
  if (lo > hi) throw std::domain_error("build_tables: lo > hi");
  if (hi >= (u64(1) << 62)) throw capacity_error("build_tables: hi beyond 2^62");
  u64 range = hi - lo + 1;

  PrimeTable t;
  t.lo_ = lo;
  t.hi_ = hi;
  t.spf_end_ = std::min(hi, opts.spf_limit);

  u64 bits_bytes = ((range + 63) / 64) * 8;
  u64 spf_count = t.spf_end_ >= lo ? (t.spf_end_ - lo + 1) : 0;
  u64 root = static_cast<u64>(std::sqrt(static_cast<double>(hi))) + 2;
  if (bits_bytes + spf_count * 4 + root * 2 > opts.budget_bytes)
    throw capacity_error("build_tables: range exceeds memory budget");

  while (root > 0 && root * root > hi) --root;  // float sqrt can overshoot
  while ((root + 1) * (root + 1) <= hi) ++root;  // ...or undershoot
  t.base_ = primes_upto(root);

  t.bits_.assign((range + 63) / 64, ~u64(0));
  t.spf_.assign(spf_count, 0);

  auto clear_bit = [&](u64 idx) { t.bits_[idx >> 6] &= ~(u64(1) << (idx & 63)); };

  // Values below 2 are never prime.
  for (u64 v = lo; v < 2 && v <= hi; ++v) clear_bit(v - lo);

  // Chunk size is a multiple of 64 so concurrent segments never touch the
  // same bits_ word; spf_ entries are distinct u32 objects per value.
  u64 seg = (std::max<u64>(opts.segment, 64) + 63) / 64 * 64;
  ExecPolicy pol{opts.threads, seg};
  chunked_map(lo, hi + 1, pol, [&](u64 a, u64 b) -> int {
    for (u64 p : t.base_) {
      u64 start = std::max(p * p, ((a + p - 1) / p) * p);
      for (u64 v = start; v < b; v += p) {
        u64 idx = v - lo;
        t.bits_[idx >> 6] &= ~(u64(1) << (idx & 63));
        if (v <= t.spf_end_ && t.spf_[idx] == 0)
          t.spf_[idx] = static_cast<u32>(p);
      }
    }
    return 0;
  });

  // Every composite v <= hi has a factor <= sqrt(hi), so spf entries still
  // zero after the sweep belong to primes (or to values < 2).
  return t;
}

bool PrimeTable::is_prime(u64 n) const {
  if (!covers(n)) throw std::domain_error("is_prime: value outside table range");
  return bit(n);
}

u64 PrimeTable::smallest_factor(u64 n) const {
  if (n < 2) throw std::domain_error("smallest_factor: n < 2");
  if (n < lo_ || n > spf_end_)
    throw std::domain_error("smallest_factor: value outside spf range");
  u32 p = spf_[n - lo_];
  return p == 0 ? n : p;
}

u64 PrimeTable::count_primes() const { return count_primes(lo_, hi_); }

u64 PrimeTable::count_primes(u64 a, u64 b) const {
  if (a < lo_) a = lo_;
  if (b > hi_) b = hi_;
  if (a > b) return 0;
  u64 cnt = 0;
  for (u64 n = a; n <= b; ++n)
    if (bit(n)) ++cnt;
  return cnt;
}

u64 PrimeTable::next_prime_after(u64 n) const {
  u64 start = n < lo_ ? lo_ : n + 1;
  for (u64 v = start; v <= hi_; ++v)
    if (bit(v)) return v;
  return 0;
}

Factorization factorize(u64 n, const PrimeTable& table) {
  if (n == 0) throw std::domain_error("factorize: n = 0");
  Factorization f;
  f.n = n;
  if (n == 1) return f;

  // spf walk stays valid only when every quotient remains inside the indexed
  // prefix, which needs the table to start at (or below) 2.
  if (table.lo() <= 2 && n <= table.spf_end()) {
    u64 v = n;
    while (v > 1) {
      u64 p = table.smallest_factor(v);
      u32 e = 0;
      while (v % p == 0) {
        v /= p;
        ++e;
      }
      f.factors.emplace_back(p, e);
    }
    return f;
  }

  if (n > table.hi())
    throw std::domain_error("factorize: n beyond table trial-division reach");
  u64 v = n;
  for (u64 p : table.base_primes()) {
    if (p * p > v) break;
    if (v % p == 0) {
      u32 e = 0;
      while (v % p == 0) {
        v /= p;
        ++e;
      }
      f.factors.emplace_back(p, e);
    }
  }
  if (v > 1) f.factors.emplace_back(v, 1);
  return f;
}

std::vector<u32> exponent_pattern(u64 n, const PrimeTable& table) {
  if (n <= 1) throw std::domain_error("exponent_pattern: n <= 1");
  Factorization f = factorize(n, table);
  std::vector<u32> e;
  e.reserve(f.factors.size());
  for (auto& [p, k] : f.factors) e.push_back(k);
  std::sort(e.begin(), e.end(), std::greater<u32>());
  return e;
}

}  // namespace primelab
