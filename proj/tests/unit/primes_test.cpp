// Segmented sieve, spf index, and factorization against naive oracles.
#include <doctest.h>

#include <vector>

#include "primelab/primes.hpp"

using namespace primelab;

namespace {

// Naive trial-division factorization, independent of the library path.
std::vector<std::pair<u64, u32>> naive_factor(u64 n) {
  std::vector<std::pair<u64, u32>> out;
  for (u64 p = 2; p * p <= n; ++p) {
    u32 e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    if (e) out.emplace_back(p, e);
  }
  if (n > 1) out.emplace_back(n, 1);
  return out;
}

bool naive_is_prime(u64 n) {
  if (n < 2) return false;
  for (u64 p = 2; p * p <= n; ++p)
    if (n % p == 0) return false;
  return true;
}

}  // namespace

TEST_SUITE("primes") {

TEST_CASE("primes_upto matches the classic prefix") {
  CHECK(primes_upto(1) == std::vector<u64>{});
  CHECK(primes_upto(2) == std::vector<u64>{2});
  CHECK(primes_upto(30) ==
        std::vector<u64>{2, 3, 5, 7, 11, 13, 17, 19, 23, 29});
  CHECK(primes_upto(1'000'000).size() == 78498);
}

TEST_CASE("primality bits agree with trial division across segments") {
  SieveOptions opts;
  opts.segment = 64;  // tiny segments force many boundary crossings
  PrimeTable t = build_tables(2, 5000, opts);
  for (u64 n = 2; n <= 5000; ++n) CHECK(t.is_prime(n) == naive_is_prime(n));
  CHECK(t.count_primes() == 669);  // pi(5000)
}

TEST_CASE("offset windows see the same primes as a from-zero table") {
  SieveOptions opts;
  opts.segment = 128;
  PrimeTable win = build_tables(999'900, 1'000'100, opts);
  u64 count = 0;
  win.for_each_prime(999'900, 1'000'100, [&](u64 p) {
    ++count;
    CHECK(naive_is_prime(p));
  });
  CHECK(count == win.count_primes());
  CHECK(win.is_prime(999'983));
  CHECK_FALSE(win.is_prime(1'000'000));
}

TEST_CASE("smallest_factor matches naive factorization") {
  PrimeTable t = build_tables(2, 10'000);
  for (u64 n = 2; n <= 10'000; ++n) {
    u64 expect = naive_is_prime(n) ? n : naive_factor(n).front().first;
    CHECK(t.smallest_factor(n) == expect);
  }
}

TEST_CASE("factorize agrees with trial division on both code paths") {
  PrimeTable spf_path = build_tables(2, 20'000);
  SieveOptions no_spf;
  no_spf.spf_limit = 0;  // force the base-prime trial-division path
  PrimeTable div_path = build_tables(2, 20'000, no_spf);
  for (u64 n : {2ull, 4ull, 97ull, 360ull, 1024ull, 9973ull, 18005ull,
                18007ull, 19999ull, 20000ull}) {
    auto expect = naive_factor(n);
    CHECK(factorize(n, spf_path).factors == expect);
    CHECK(factorize(n, div_path).factors == expect);
  }
}

TEST_CASE("derived statistics of a factorization") {
  PrimeTable t = build_tables(2, 20'000);
  auto f = factorize(360, t);  // 2^3 3^2 5
  CHECK(f.big_omega() == 6);
  CHECK(f.small_omega() == 3);
  CHECK(f.divisor_count() == 24);
  CHECK(f.least_prime_factor() == 2);
  CHECK(factorize(1, t).factors.empty());
  CHECK(factorize(1, t).divisor_count() == 1);
  CHECK_THROWS_AS(factorize(0, t), std::domain_error);
  CHECK(exponent_pattern(360, t) == std::vector<u32>{3, 2, 1});
  CHECK(exponent_pattern(11780, t) == std::vector<u32>{2, 1, 1, 1});
  CHECK_THROWS_AS(exponent_pattern(1, t), std::domain_error);
}

TEST_CASE("range counting and successor lookup") {
  PrimeTable t = build_tables(2, 1000);
  CHECK(t.count_primes(2, 100) == 25);
  CHECK(t.count_primes(90, 96) == 0);
  CHECK(t.next_prime_after(89) == 97);
  CHECK(t.next_prime_after(997) == 0);  // no prime remains in the table
}

}  // TEST_SUITE
