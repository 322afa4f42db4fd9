// util.hpp — shared plumbing: error types, checked arithmetic, compensated
// summation, and deterministic chunked parallelism.
#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace primelab {

using u8 = std::uint8_t;
using u32 = std::uint32_t;
using u64 = std::uint64_t;
using i64 = std::int64_t;
using u128 = unsigned __int128;

// A request that exceeds the configured memory/size budget. Distinct from
// std::domain_error, which covers mathematically invalid inputs.
class capacity_error : public std::runtime_error {
 public:
  explicit capacity_error(const std::string& what) : std::runtime_error(what) {}
};

inline u64 checked_mul(u64 a, u64 b) {
  u64 r;
  if (__builtin_mul_overflow(a, b, &r))
    throw std::overflow_error("u64 product overflow");
  return r;
}

inline u64 checked_add(u64 a, u64 b) {
  u64 r;
  if (__builtin_add_overflow(a, b, &r))
    throw std::overflow_error("u64 sum overflow");
  return r;
}

// Kahan-compensated accumulator. The summation order is chosen by the caller
// and must be kept fixed for reproducible output.
class KahanSum {
 public:
  void add(double x) {
    double y = x - c_;
    double t = s_ + y;
    c_ = (t - s_) - y;
    s_ = t;
  }
  double value() const { return s_; }

 private:
  double s_ = 0.0;
  double c_ = 0.0;
};

struct ExecPolicy {
  unsigned threads = 0;   // 0 = hardware_concurrency
  u64 chunk = 1u << 16;   // fixed work-unit size, independent of thread count

  unsigned resolved_threads() const {
    if (threads != 0) return threads;
    unsigned hc = std::thread::hardware_concurrency();
    return hc == 0 ? 1 : hc;
  }
};

// Splits [lo, hi) into fixed-size chunks, evaluates fn(chunk_lo, chunk_hi) on
// each (possibly on several threads), and returns the per-chunk results in
// chunk order. Callers fold that vector sequentially; the fixed chunk size and
// ordered fold make floating-point results independent of the thread count.
template <class Fn>
auto chunked_map(u64 lo, u64 hi, const ExecPolicy& pol, Fn&& fn)
    -> std::vector<decltype(fn(lo, hi))> {
  using R = decltype(fn(lo, hi));
  if (hi <= lo) return {};
  u64 chunk = pol.chunk == 0 ? (hi - lo) : pol.chunk;
  u64 nchunks = (hi - lo + chunk - 1) / chunk;
  std::vector<R> out(nchunks);
  unsigned nthreads = pol.resolved_threads();
  if (nthreads <= 1 || nchunks <= 1) {
    for (u64 c = 0; c < nchunks; ++c) {
      u64 a = lo + c * chunk;
      u64 b = std::min(hi, a + chunk);
      out[c] = fn(a, b);
    }
    return out;
  }
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errs(nthreads);
  for (unsigned t = 0; t < nthreads; ++t) {
    pool.emplace_back([&, t] {
      try {
        for (u64 c = t; c < nchunks; c += nthreads) {
          u64 a = lo + c * chunk;
          u64 b = std::min(hi, a + chunk);
          out[c] = fn(a, b);
        }
      } catch (...) {
        errs[t] = std::current_exception();
      }
    });
  }
  for (auto& th : pool) th.join();
  for (auto& e : errs)
    if (e) std::rethrow_exception(e);
  return out;
}

}  // namespace primelab
