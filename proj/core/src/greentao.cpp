// greentao.cpp — W-trick residue sets, the squared-weight measure, the
// pair-difference product, and brute-force AP enumeration.
#include "primelab/greentao.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <unordered_set>

#include "primelab/primes.hpp"
#include "pow_compare.hpp"

namespace primelab {

namespace {

// Distinct forbidden residues -a_i mod p.
std::vector<u64> forbidden_mod(const Tuple& tuple, u64 p) {
  std::vector<u64> forb;
  for (u64 a : tuple.offsets()) forb.push_back((p - a % p) % p);
  std::sort(forb.begin(), forb.end());
  forb.erase(std::unique(forb.begin(), forb.end()), forb.end());
  return forb;
}

u64 inverse_mod(u64 a, u64 p) {  // p prime, a not divisible by p
  u64 r = 1, base = a % p;
  for (u64 e = p - 2; e; e >>= 1) {
    if (e & 1) r = r * base % p;
    base = base * base % p;
  }
  return r;
}

}  // namespace

bool WTrickContext::contains(u64 b) const {
  if (b >= W) return false;
  for (u64 p : primes_upto(w))
    for (u64 a : tuple.offsets())
      if ((b + a) % p == 0) return false;
  return true;
}

WTrickContext build_wtrick(u64 w, const Tuple& tuple, u64 max_residues) {
  if (w < 2 || w > 52)
    throw std::domain_error("build_wtrick: w must lie in [2, 52]");
  WTrickContext ctx;
  ctx.w = w;
  ctx.tuple = tuple;
  ctx.cardinality = 1;
  ctx.phi_ratio = 1;
  std::vector<u64> primes = primes_upto(w);
  for (u64 p : primes) {
    ctx.W = checked_mul(ctx.W, p);
    ctx.cardinality *= Int(p) - Int(forbidden_mod(tuple, p).size());
    ctx.phi_ratio *= Rat(p - 1, p);
  }
  ctx.phi_ratio.canonicalize();
  if (ctx.cardinality == 0) return ctx;  // inadmissible mod some p <= w
  if (ctx.cardinality > Int(static_cast<unsigned long>(max_residues)))
    throw capacity_error("build_wtrick: residue set exceeds max_residues");

  std::vector<u64> res{0};
  u64 mod = 1;
  for (u64 p : primes) {
    std::vector<u64> forb = forbidden_mod(tuple, p);
    std::vector<u64> allowed;
    for (u64 y = 0; y < p; ++y)
      if (!std::binary_search(forb.begin(), forb.end(), y)) allowed.push_back(y);
    std::vector<u64> next;
    next.reserve(res.size() * allowed.size());
    u64 inv = inverse_mod(mod % p, p);
    for (u64 x : res)
      for (u64 y : allowed) {
        u64 t = (y + p - x % p) % p * inv % p;
        next.push_back(x + mod * t);
      }
    res = std::move(next);
    mod *= p;
  }
  std::sort(res.begin(), res.end());
  ctx.residues = std::move(res);
  return ctx;
}

Calibration choose_b(const WTrickContext& ctx, u64 n_max,
                     const ExecPolicy& pol) {
  if (ctx.residues.empty())
    throw std::domain_error("choose_b: context has no residues");
  if (n_max == 0) throw std::domain_error("choose_b: n_max must be positive");
  if (ctx.residues.size() > u64(2'000'000'000) / n_max)
    throw capacity_error("choose_b: residue count times n_max too large");
  u64 top = checked_add(checked_mul(ctx.W, n_max + 1), ctx.tuple.diameter());
  SieveOptions opts;
  opts.threads = pol.threads;
  opts.spf_limit = 0;
  PrimeTable table = build_tables(2, top, opts);
  std::vector<u64> hits(ctx.residues.size(), 0);
  for (u64 n = 1; n <= n_max; ++n) {
    u64 base = ctx.W * n;
    for (size_t j = 0; j < ctx.residues.size(); ++j) {
      bool all = true;
      for (u64 a : ctx.tuple.offsets())
        if (!table.is_prime(base + ctx.residues[j] + a)) {
          all = false;
          break;
        }
      if (all) hits[j]++;
    }
  }
  Calibration cal;
  cal.n_max = n_max;
  cal.b = ctx.residues.front();
  for (size_t j = 0; j < hits.size(); ++j)
    if (hits[j] > cal.hits) {  // ascending residues: ties keep the smallest b
      cal.hits = hits[j];
      cal.b = ctx.residues[j];
    }
  return cal;
}

namespace {

void validate_measure(const WTrickContext& ctx, const MeasureParams& params) {
  if (ctx.W < 2) throw std::domain_error("measure: context is empty");
  if (!ctx.contains(params.b))
    throw std::domain_error("measure: b is not a usable residue mod W");
  if (params.N < 8) throw std::domain_error("measure: N must be >= 8");
  if (!(params.R > 1))
    throw std::domain_error("measure: R must exceed 1 (log R positive)");
  u64 lo = params.lo(), hi = params.hi();
  if (lo < 1 || lo > hi || hi > params.N)
    throw std::domain_error("measure: window must be a non-empty subinterval of [1, N]");
}

// Truncated von Mangoldt evaluator: sum over squarefree d | m with d <=
// floor(R) of mu(d) log(R/d). The prime list is shared across calls.
struct LambdaR {
  double log_r = 0;
  u64 rfloor = 0;
  std::vector<u64> primes;

  explicit LambdaR(double R)
      : log_r(std::log(R)),
        rfloor(static_cast<u64>(R)),
        primes(primes_upto(rfloor)) {}

  double eval(u64 m) const {
    std::vector<u64> divs;
    for (u64 p : primes)
      if (m % p == 0) divs.push_back(p);
    double total = 0;
    descend(divs, 0, 1, 0.0, +1, total);
    return total;
  }

 private:
  void descend(const std::vector<u64>& divs, size_t from, u64 prod,
               double logd, int sign, double& total) const {
    total += sign * (log_r - logd);
    for (size_t i = from; i < divs.size(); ++i) {
      if (prod > rfloor / divs[i]) break;  // ascending primes: rest too big
      descend(divs, i + 1, prod * divs[i], logd + std::log((double)divs[i]),
              -sign, total);
    }
  }
};

double nu_value(const WTrickContext& ctx, const MeasureParams& params,
                const LambdaR& lam, u64 n) {
  if (n < params.lo() || n > params.hi()) return 1.0;
  double phid = rat_to_double(ctx.phi_ratio);
  double acc = 1.0;
  u64 base = checked_add(checked_mul(ctx.W, n), params.b);
  for (u64 a : ctx.tuple.offsets()) {
    double L = lam.eval(checked_add(base, a));
    acc *= phid * L * L / lam.log_r;
  }
  return acc;
}

}  // namespace

double nu_measure(const WTrickContext& ctx, const MeasureParams& params,
                  u64 n) {
  validate_measure(ctx, params);
  LambdaR lam(params.R);
  return nu_value(ctx, params, lam, n);
}

ExpectationReport expectation_nu(const WTrickContext& ctx,
                                 const MeasureParams& params,
                                 const ExecPolicy& pol) {
  validate_measure(ctx, params);
  u64 lo = params.lo(), hi = params.hi();
  u64 count = hi - lo + 1;
  if (count < 1000)
    throw std::domain_error("expectation_nu: window must hold at least 1000 integers");
  ExpectationReport rep;
  rep.window_lo = lo;
  rep.window_hi = hi;
  rep.window_count = count;
  double window_sum = 0;
  if (params.R < 2) {
    // Only d = 1 survives the truncation: every window value is identical.
    rep.constant_regime = true;
    double v = rat_to_double(ctx.phi_ratio) * std::log(params.R);
    rep.window_value_if_constant = std::pow(v, (double)ctx.r());
    window_sum = rep.window_value_if_constant * (double)count;
  } else {
    LambdaR lam(params.R);
    auto chunks = chunked_map(lo, hi + 1, pol, [&](u64 a, u64 b) {
      KahanSum s;
      for (u64 n = a; n < b; ++n) s.add(nu_value(ctx, params, lam, n));
      return s.value();
    });
    KahanSum s;
    for (double part : chunks) s.add(part);
    window_sum = s.value();
  }
  rep.mean = (window_sum + (double)(params.N - count)) / (double)params.N;
  rep.deviation = std::abs(rep.mean - 1.0);
  return rep;
}

double lambda_tilde(const WTrickContext& ctx, u64 b, u64 n) {
  u64 v = checked_add(checked_mul(ctx.W, n), b);
  return rat_to_double(ctx.phi_ratio) * std::log((double)v);
}

DominationReport domination_check(const WTrickContext& ctx,
                                  const MeasureParams& params, u64 ap_len,
                                  const Rat& c1, const ExecPolicy& pol) {
  validate_measure(ctx, params);
  if (ap_len < 1) throw std::domain_error("domination_check: ap_len must be >= 1");
  detail::validate_c1(c1);
  detail::ThresholdCmp cmp(c1);
  u64 lo = params.lo(), hi = params.hi();
  // Primes that could sit at or below (W n + b)^{c1} anywhere in the window.
  u64 top_base = checked_add(checked_mul(ctx.W, hi), params.b);
  double c1d = rat_to_double(c1);
  u64 pbound = static_cast<u64>(std::pow((double)top_base + 1.0, c1d)) + 16;
  std::vector<u64> small_primes = primes_upto(pbound);
  LambdaR lam(params.R);
  double scale = 1.0 / ((double)ap_len * std::pow(2.0, (double)ap_len + 5));
  (void)pol;

  DominationReport rep;
  rep.min_ratio = std::numeric_limits<double>::infinity();
  for (u64 n = lo; n <= hi; ++n) {
    u64 base = ctx.W * n + params.b;
    bool member = true;
    for (u64 a : ctx.tuple.offsets()) {
      u64 v = base + a;
      for (u64 p : small_primes) {
        if (cmp.pass(p, base)) break;  // p exceeds the threshold already
        if (v % p == 0) {
          member = false;
          break;
        }
      }
      if (!member) break;
    }
    if (!member) continue;
    rep.window_members++;
    double nu = nu_value(ctx, params, lam, n);
    double bound = std::pow(scale * lambda_tilde(ctx, params.b, n), (double)ctx.r());
    double ratio = nu / bound;
    if (ratio < rep.min_ratio) {
      rep.min_ratio = ratio;
      rep.worst_n = n;
    }
    if (nu < bound) rep.holds = false;
  }
  if (rep.window_members == 0) rep.min_ratio = 0;
  return rep;
}

DeltaProduct delta_product(std::span<const i64> h, const Tuple& tuple, u64 W) {
  std::vector<i64> sorted(h.begin(), h.end());
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    throw std::domain_error("delta_product: h values must be distinct");
  const auto& a = tuple.offsets();
  DeltaProduct out;
  Int bigW(static_cast<unsigned long>(W));
  for (size_t i = 0; i < h.size(); ++i)
    for (size_t j = i + 1; j < h.size(); ++j) {
      Int d = Int(static_cast<long>(h[i])) - Int(static_cast<long>(h[j]));
      out.value *= d;
      for (size_t u = 0; u < a.size(); ++u)
        for (size_t v = u + 1; v < a.size(); ++v)
          out.value *= bigW * d + Int(static_cast<long>(a[u])) -
                       Int(static_cast<long>(a[v]));
    }
  out.sign = mpz_sgn(out.value.get_mpz_t());
  out.abs_value = abs(out.value);
  return out;
}

ApSearchResult find_aps(std::span<const u64> anchors, u64 m, u64 cap,
                        const ExecPolicy& pol) {
  if (m < 1) throw std::domain_error("find_aps: m must be >= 1");
  if (cap < 1) throw std::domain_error("find_aps: cap must be positive");
  for (size_t i = 0; i + 1 < anchors.size(); ++i)
    if (anchors[i] >= anchors[i + 1])
      throw std::domain_error("find_aps: anchors must be sorted strictly ascending");
  (void)pol;
  ApSearchResult res;
  res.cap = cap;
  if (anchors.empty()) return res;
  if (m == 1) {
    for (u64 x : anchors) {
      if (res.aps.size() == cap) {
        res.truncated = true;
        return res;
      }
      res.aps.push_back({x, 0, 1});
    }
    return res;
  }
  std::unordered_set<u64> set(anchors.begin(), anchors.end());
  u64 max = anchors.back();
  for (size_t i = 0; i < anchors.size(); ++i) {
    for (size_t j = i + 1; j < anchors.size(); ++j) {
      u64 step = anchors[j] - anchors[i];
      if (static_cast<u128>(m - 1) * step > max - anchors[i]) break;
      bool all = true;
      for (u64 t = 2; t < m; ++t)
        if (!set.count(anchors[i] + t * step)) {
          all = false;
          break;
        }
      if (!all) continue;
      if (res.aps.size() == cap) {
        res.truncated = true;
        return res;
      }
      res.aps.push_back({anchors[i], step, m});
    }
  }
  return res;
}

}  // namespace primelab
