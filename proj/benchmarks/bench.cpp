// Microbenchmarks for the hot paths: sieving, weight sums, scanning, gap
// spectra, residue enumeration, and progression search.
#include <benchmark/benchmark.h>

#include <cmath>
#include <vector>

#include "primelab/greentao.hpp"
#include "primelab/polignac.hpp"
#include "primelab/primes.hpp"
#include "primelab/scanner.hpp"
#include "primelab/tuples.hpp"
#include "primelab/weights.hpp"

namespace {

using namespace primelab;

void bm_sieve_build(benchmark::State& state) {
  const u64 limit = static_cast<u64>(state.range(0));
  for (auto _ : state) {
    PrimeTable t = build_tables(2, limit);
    benchmark::DoNotOptimize(t.count_primes());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(limit));
}
BENCHMARK(bm_sieve_build)->Arg(100'000)->Arg(1'000'000);

void bm_factorize(benchmark::State& state) {
  SieveOptions opts;
  PrimeTable t = build_tables(2, 100'000, opts);
  u64 n = 50'000;
  for (auto _ : state) {
    auto f = factorize(n, t);
    benchmark::DoNotOptimize(f.small_omega());
    if (++n > 99'000) n = 50'000;
  }
}
BENCHMARK(bm_factorize);

void bm_gpy_weight(benchmark::State& state) {
  Tuple H = Tuple::parse("0,4,6,10,12,16");
  const double R = 1000;
  u64 n = 10'000;
  for (auto _ : state) {
    benchmark::DoNotOptimize(gpy_weight(n, H, 8, R));
    if (++n > 20'000) n = 10'000;
  }
}
BENCHMARK(bm_gpy_weight);

void bm_weight_sum(benchmark::State& state) {
  WeightParams wp;
  wp.tuple = Tuple::parse("0,2");
  wp.l = 1;
  wp.N = static_cast<u64>(state.range(0));
  wp.R = std::pow(static_cast<double>(wp.N), 0.2);
  for (auto _ : state) {
    auto rep = sum_s0(wp);
    benchmark::DoNotOptimize(rep.empirical);
  }
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(wp.N));
}
BENCHMARK(bm_weight_sum)->Arg(10'000)->Arg(100'000);

void bm_scan(benchmark::State& state) {
  Tuple H = Tuple::parse("0,2");
  const u64 hi = static_cast<u64>(state.range(0));
  for (auto _ : state) {
    auto res = scan(5, hi, H, Rat(1, 20));
    benchmark::DoNotOptimize(res.counts.survivors);
  }
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(hi));
}
BENCHMARK(bm_scan)->Arg(10'000)->Arg(100'000);

void bm_gap_spectrum(benchmark::State& state) {
  const u64 limit = static_cast<u64>(state.range(0));
  for (auto _ : state) {
    auto s = gap_spectrum(limit);
    benchmark::DoNotOptimize(s.pairs_total);
  }
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(limit));
}
BENCHMARK(bm_gap_spectrum)->Arg(100'000)->Arg(1'000'000);

void bm_wtrick_enumeration(benchmark::State& state) {
  Tuple H = Tuple::parse("0,2,6");
  const u64 w = static_cast<u64>(state.range(0));
  for (auto _ : state) {
    auto ctx = build_wtrick(w, H);
    benchmark::DoNotOptimize(ctx.residues.size());
  }
}
BENCHMARK(bm_wtrick_enumeration)->Arg(13)->Arg(19);

void bm_find_aps(benchmark::State& state) {
  SieveOptions opts;
  opts.spf_limit = 0;
  const u64 limit = static_cast<u64>(state.range(0));
  PrimeTable t = build_tables(2, limit + 2, opts);
  std::vector<u64> anchors;
  t.for_each_prime(2, limit, [&](u64 p) {
    if (t.is_prime(p + 2)) anchors.push_back(p);
  });
  for (auto _ : state) {
    auto res = find_aps(anchors, 3);
    benchmark::DoNotOptimize(res.aps.size());
  }
  state.SetItemsProcessed(state.iterations() *
                          static_cast<int64_t>(anchors.size()));
}
BENCHMARK(bm_find_aps)->Arg(10'000)->Arg(100'000);

}  // namespace

BENCHMARK_MAIN();
