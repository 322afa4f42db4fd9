// greentao.hpp — W-trick residue contexts, the pseudorandom measure built
// from squared truncated von Mangoldt weights, the pair-difference product,
// and a brute-force finder for arithmetic progressions in anchor sets.
#pragma once

#include <span>
#include <vector>

#include "primelab/rat.hpp"
#include "primelab/tuples.hpp"
#include "primelab/util.hpp"

namespace primelab {

// Residues b mod W (0 <= b < W) with gcd(b + a_i, W) = 1 for every offset.
// The exact cardinality is prod_{p <= w} (p - |Omega_A(p)|) where Omega_A(p)
// counts the distinct residues -a_i mod p; it is zero only when the tuple
// covers every class modulo some prime <= w (an inadmissible tuple).
struct WTrickContext {
  u64 w = 0;
  u64 W = 1;                   // product of primes <= w
  Tuple tuple{std::vector<u64>{0}};
  std::vector<u64> residues;   // X_W sorted ascending
  Int cardinality = 0;         // exact per-prime product
  Rat phi_ratio;               // phi(W) / W as an exact rational

  u64 r() const { return tuple.k(); }
  bool contains(u64 b) const;  // per-prime forbidden-residue membership test
};

// w must lie in [2, 52] so W fits 64 bits. Residues are materialized only
// when the cardinality is at most max_residues (capacity error otherwise).
WTrickContext build_wtrick(u64 w, const Tuple& tuple,
                           u64 max_residues = u64(1) << 24);

// Calibration pass: the residue b whose shifted forms W n + b + a_i are
// simultaneously prime most often for n in [1, n_max]; ties take the
// smallest b.
struct Calibration {
  u64 b = 0;
  u64 hits = 0;
  u64 n_max = 0;
};

Calibration choose_b(const WTrickContext& ctx, u64 n_max,
                     const ExecPolicy& pol = {});

struct MeasureParams {
  u64 b = 0;
  u64 N = 0;
  double R = 0;            // truncation level, must exceed 1
  u64 window_lo = 0;       // inclusive; 0 = default ceil(N/4)
  u64 window_hi = 0;       // inclusive; 0 = default floor(N/2)

  u64 lo() const { return window_lo ? window_lo : (N + 3) / 4; }
  u64 hi() const { return window_hi ? window_hi : N / 2; }
};

// The measure: inside the window, (phi(W)/W)^r prod_i Lambda_R(Wn+b+a_i)^2 /
// log R; outside, exactly 1. When no component has a prime factor <= R this
// collapses to ((phi(W)/W) log R)^r.
double nu_measure(const WTrickContext& ctx, const MeasureParams& params, u64 n);

struct ExpectationReport {
  double mean = 0;          // average of nu over the ambient interval [1, N]
  double deviation = 0;     // |mean - 1|
  u64 window_lo = 0, window_hi = 0;
  u64 window_count = 0;
  bool constant_regime = false;  // R < 2: every window value identical
  double window_value_if_constant = 0;
};

// Window must contain at least 1000 integers.
ExpectationReport expectation_nu(const WTrickContext& ctx,
                                 const MeasureParams& params,
                                 const ExecPolicy& pol = {});

// (phi(W)/W) log(Wn + b): the comparison weight assigned to survivors when
// checking that nu dominates the scaled survivor indicator.
double lambda_tilde(const WTrickContext& ctx, u64 b, u64 n);

struct DominationReport {
  u64 window_members = 0;   // window n whose components all clear P^- > v^c1
  bool holds = true;        // nu(n) >= [lambda_tilde(n) / (m 2^{m+5})]^r
  double min_ratio = 0;     // smallest nu / bound over members
  u64 worst_n = 0;
};

// Checks the domination inequality for AP length ap_len on every window n
// whose shifted components all have least prime factor > (Wn+b)^{c1}.
DominationReport domination_check(const WTrickContext& ctx,
                                  const MeasureParams& params, u64 ap_len,
                                  const Rat& c1, const ExecPolicy& pol = {});

// Delta = prod_{i<j} (h_i - h_j) * prod_{i<j} prod_{u<v} (W(h_i-h_j) + a_u -
// a_v); both outer products range over all pairs i < j.
struct DeltaProduct {
  Int value = 1;
  Int abs_value = 1;
  int sign = 1;
};

DeltaProduct delta_product(std::span<const i64> h, const Tuple& tuple, u64 W);

struct ApRecord {
  u64 start = 0;
  u64 step = 0;
  u64 length = 0;

  std::vector<u64> members() const {
    std::vector<u64> out;
    for (u64 t = 0; t < length; ++t) out.push_back(start + t * step);
    return out;
  }
};

struct ApSearchResult {
  std::vector<ApRecord> aps;  // ordered by start, then step
  bool truncated = false;
  u64 cap = 0;
};

// All m-term arithmetic progressions inside the sorted anchor set, up to cap
// records. m = 1 lists every element with step 0.
ApSearchResult find_aps(std::span<const u64> anchors, u64 m,
                        u64 cap = 100'000, const ExecPolicy& pol = {});

}  // namespace primelab
