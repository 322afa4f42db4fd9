#include "primelab/weights.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>

#include "primelab/primes.hpp"

namespace primelab {

namespace {

constexpr u64 kSumCapN = 100'000'000;     // largest N for averaged sums (n <= 2N)
constexpr double kPrimeCapR = 2'000'000;  // primes <= R kept in memory
constexpr u64 kMainTermTrunc = 100'000;   // Euler-product truncation for main terms

double powi(double x, unsigned e) {
  double r = 1.0, b = x;
  while (e) {
    if (e & 1) r *= b;
    b *= b;
    e >>= 1;
  }
  return r;
}

double factorial_d(unsigned n) { return factorial_int(n).get_d(); }
double binom_d(unsigned n, unsigned k) { return binomial_int(n, k).get_d(); }

// Depth-first sum over squarefree d <= rfloor composed of the given primes:
//   Σ_d μ(d) (log R - log d)^a
// Primes arrive as ascending indices into (primes, logs), so the product
// bound prunes whole suffixes.
struct DivisorDfs {
  const u32* idx;
  int count;
  const u64* primes;
  const double* logs;
  u64 rfloor;
  double log_r;
  unsigned a;
  double total = 0;

  void run(int from, u64 prod, double logd, int sign) {
    total += sign * powi(log_r - logd, a);
    for (int i = from; i < count; ++i) {
      u64 next = prod * primes[idx[i]];
      if (next > rfloor) break;
      run(i + 1, next, logd + logs[idx[i]], -sign);
    }
  }
};

// Per-chunk context: for every value in the component window, the ascending
// list of indices of primes <= R dividing it, plus (optionally) primality.
struct WindowCtx {
  u64 v_lo = 0, v_hi = 0;
  std::vector<std::vector<u32>> divs;
  std::vector<u64> bits;
  bool has_bits = false;
  const std::vector<u64>* primes = nullptr;
  const std::vector<double>* logs = nullptr;

  const std::vector<u32>& divisors_of(u64 v) const { return divs[v - v_lo]; }
  bool value_prime(u64 v) const {
    u64 i = v - v_lo;
    return (bits[i >> 6] >> (i & 63)) & 1u;
  }
};

void build_window(WindowCtx& ctx, u64 v_lo, u64 v_hi,
                  const std::vector<u64>& primes, const std::vector<double>& logs,
                  bool primality, const std::vector<u64>& base) {
  ctx.v_lo = v_lo;
  ctx.v_hi = v_hi;
  ctx.primes = &primes;
  ctx.logs = &logs;
  u64 len = v_hi - v_lo + 1;
  ctx.divs.assign(len, {});
  for (u32 ip = 0; ip < primes.size(); ++ip) {
    u64 p = primes[ip];
    u64 start = ((v_lo + p - 1) / p) * p;
    for (u64 v = start; v <= v_hi; v += p) ctx.divs[v - v_lo].push_back(ip);
  }
  ctx.has_bits = primality;
  if (!primality) return;
  ctx.bits.assign((len + 63) / 64, ~u64(0));
  auto clear = [&](u64 i) { ctx.bits[i >> 6] &= ~(u64(1) << (i & 63)); };
  for (u64 v = v_lo; v < 2 && v <= v_hi; ++v) clear(v - v_lo);
  for (u64 p : base) {
    u64 start = std::max(p * p, ((v_lo + p - 1) / p) * p);
    for (u64 v = start; v <= v_hi; v += p) clear(v - v_lo);
  }
}

// Shared driver: for each n in (N, 2N], assemble the union of primes <= R
// dividing the components n + h_i, evaluate Λ_R(n; H, a), and hand both to
// the per-chunk accumulator. Deterministic: fixed chunks, ordered fold by the
// caller.
template <class Acc, class Visit>
std::vector<Acc> weight_map(const WeightParams& wp, bool primality,
                            u64 extra_offset, const ExecPolicy& pol,
                            Visit&& visit) {
  const u64 rfloor = static_cast<u64>(wp.R);
  std::vector<u64> primes = primes_upto(rfloor);
  std::vector<double> logs(primes.size());
  for (size_t i = 0; i < primes.size(); ++i)
    logs[i] = std::log(static_cast<double>(primes[i]));

  const auto& offs = wp.tuple.offsets();
  u64 h_max = std::max(offs.back(), extra_offset);
  std::vector<u64> base;
  if (primality) base = primes_upto(static_cast<u64>(std::sqrt(double(2 * wp.N + h_max))) + 2);

  const unsigned a = static_cast<unsigned>(wp.a());
  const double log_r = std::log(wp.R);
  const double inv_afact = 1.0 / factorial_d(a);

  return chunked_map(wp.N + 1, 2 * wp.N + 1, pol, [&](u64 n_a, u64 n_b) {
    WindowCtx ctx;
    build_window(ctx, n_a + offs.front(), (n_b - 1) + h_max, primes, logs,
                 primality, base);
    Acc acc{};
    std::array<u32, 192> buf;
    DivisorDfs dfs{buf.data(), 0, primes.data(), logs.data(), rfloor, log_r, a};
    for (u64 n = n_a; n < n_b; ++n) {
      int cnt = 0;
      for (u64 h : offs) {
        const auto& dv = ctx.divisors_of(n + h);
        for (u32 ip : dv) {
          if (cnt >= static_cast<int>(buf.size()))
            throw capacity_error("weight_map: divisor union overflow");
          buf[cnt++] = ip;
        }
      }
      std::sort(buf.begin(), buf.begin() + cnt);
      cnt = static_cast<int>(std::unique(buf.begin(), buf.begin() + cnt) - buf.begin());
      dfs.count = cnt;
      dfs.total = 0;
      dfs.run(0, 1, 0.0, +1);
      double lambda = dfs.total * inv_afact;
      visit(acc, n, buf.data(), cnt, lambda, ctx);
    }
    return acc;
  });
}

}  // namespace

void WeightParams::validate() const {
  if (tuple.k() == 0) throw std::domain_error("weights: empty tuple");
  if (tuple.offsets().front() != 0)
    throw std::domain_error("weights: tuple must be normalized (h1 = 0)");
  if (a() > 40) throw capacity_error("weights: a = k + l beyond 40");
  if (!(R > 1.0)) throw std::domain_error("weights: R must exceed 1");
  if (N < 8) throw std::domain_error("weights: N too small");
  if (N > kSumCapN) throw capacity_error("weights: N beyond desk-scale cap");
  if (R > double(N)) throw std::domain_error("weights: R > N");
  if (R > kPrimeCapR) throw capacity_error("weights: R beyond prime-list cap");
  if (eta < 0.0 || eta > 1.0) throw std::domain_error("weights: eta outside [0,1]");
  if (!(c1 > 0.0) || c1 > 0.25) throw std::domain_error("weights: c1 outside (0,1/4]");
}

double truncated_von_mangoldt(u64 n, double R) {
  if (n == 0) throw std::domain_error("truncated_von_mangoldt: n = 0");
  if (!(R > 1.0)) throw std::domain_error("truncated_von_mangoldt: R <= 1");
  u64 rfloor = static_cast<u64>(R);
  std::vector<u64> primes = primes_upto(rfloor);
  std::vector<u64> divs;
  std::vector<double> logs;
  for (u64 p : primes)
    if (n % p == 0) {
      divs.push_back(p);
      logs.push_back(std::log(double(p)));
    }
  std::vector<u32> idx(divs.size());
  for (u32 i = 0; i < idx.size(); ++i) idx[i] = i;
  DivisorDfs dfs{idx.data(), static_cast<int>(idx.size()), divs.data(),
                 logs.data(), rfloor, std::log(R), 1};
  dfs.run(0, 1, 0.0, +1);
  return dfs.total;
}

double lambda_rd(u64 d, unsigned a, double R) {
  if (d == 0) throw std::domain_error("lambda_rd: d = 0");
  if (!(R > 1.0)) throw std::domain_error("lambda_rd: R <= 1");
  if (a > 64) throw std::domain_error("lambda_rd: a beyond sane range");
  if (double(d) >= R) return 0.0;  // (log(R/d))_+ vanishes for d >= R
  // mu(d): factor by trial division; d is small in every supported use.
  u64 v = d;
  int mu = 1;
  for (u64 p = 2; p * p <= v; ++p) {
    if (v % p) continue;
    v /= p;
    if (v % p == 0) return 0.0;  // square factor
    mu = -mu;
  }
  if (v > 1) mu = -mu;
  return mu * powi(std::log(R / double(d)), a) / factorial_d(a);
}

double gpy_weight(u64 n, const Tuple& H, unsigned a, double R) {
  if (n == 0) throw std::domain_error("gpy_weight: n = 0");
  if (H.k() == 0) throw std::domain_error("gpy_weight: empty tuple");
  if (!(R > 1.0)) throw std::domain_error("gpy_weight: R <= 1");
  if (a > 64) throw std::domain_error("gpy_weight: a beyond sane range");
  u64 rfloor = static_cast<u64>(R);
  std::vector<u64> primes = primes_upto(rfloor);
  std::vector<u64> divs;
  std::vector<double> logs;
  for (u64 p : primes) {
    bool hit = false;
    for (u64 h : H.offsets())
      if ((n + h) % p == 0) {
        hit = true;
        break;
      }
    if (hit) {
      divs.push_back(p);
      logs.push_back(std::log(double(p)));
    }
  }
  std::vector<u32> idx(divs.size());
  for (u32 i = 0; i < idx.size(); ++i) idx[i] = i;
  DivisorDfs dfs{idx.data(), static_cast<int>(idx.size()), divs.data(),
                 logs.data(), rfloor, std::log(R), a};
  dfs.run(0, 1, 0.0, +1);
  return dfs.total / factorial_d(a);
}

double product_weight(u64 n, const Tuple& H, double R) {
  double prod = 1.0;
  for (u64 h : H.offsets()) prod *= truncated_von_mangoldt(n + h, R);
  return prod;
}

SumReport sum_s0(const WeightParams& wp, const ExecPolicy& pol) {
  wp.validate();
  auto chunks = weight_map<KahanSum>(
      wp, false, 0, pol,
      [](KahanSum& acc, u64, const u32*, int, double lambda, const WindowCtx&) {
        acc.add(lambda * lambda);
      });
  KahanSum total;
  for (auto& c : chunks) total.add(c.value());

  SumReport rep;
  rep.label = "S0";
  rep.empirical = total.value();
  rep.count_n = wp.N;
  rep.log_r = std::log(wp.R);
  auto ss = singular_series(wp.tuple, kMainTermTrunc);
  rep.sseries = ss.value;
  rep.sseries_truncation = ss.truncation_prime;
  unsigned k = wp.k(), l = wp.l;
  rep.main_term = ss.value * binom_d(2 * l, l) / factorial_d(k + 2 * l) *
                  double(wp.N) * powi(rep.log_r, k + 2 * l);
  if (rep.main_term != 0.0) {
    rep.ratio = rep.empirical / rep.main_term;
    rep.ratio_defined = true;
  }
  return rep;
}

SumReport sum_s1(const WeightParams& wp, u64 h, const ExecPolicy& pol) {
  wp.validate();
  if (h > 1'000'000) throw capacity_error("sum_s1: offset h beyond 1e6");
  auto chunks = weight_map<KahanSum>(
      wp, true, h, pol,
      [h](KahanSum& acc, u64 n, const u32*, int, double lambda, const WindowCtx& ctx) {
        if (ctx.value_prime(n + h))
          acc.add(lambda * lambda * std::log(double(n + h)));
      });
  KahanSum total;
  for (auto& c : chunks) total.add(c.value());

  SumReport rep;
  rep.label = "S1";
  rep.empirical = total.value();
  rep.count_n = wp.N;
  rep.log_r = std::log(wp.R);

  // Main term twists by S(H ∪ {h}); for h in H the tuple is unchanged and the
  // exponent picks up one extra log.
  std::vector<u64> joined = wp.tuple.offsets();
  bool member = std::find(joined.begin(), joined.end(), h) != joined.end();
  if (!member) {
    joined.push_back(h);
    std::sort(joined.begin(), joined.end());
  }
  Tuple joined_tuple{joined};
  auto ss = singular_series(joined_tuple, kMainTermTrunc);
  rep.sseries = ss.value;
  rep.sseries_truncation = ss.truncation_prime;
  unsigned k = wp.k(), l = wp.l, m = member ? 1 : 0;
  rep.main_term = ss.value * binom_d(2 * (l + m), l + m) /
                  factorial_d(k + 2 * l + m) * double(wp.N) *
                  powi(rep.log_r, k + 2 * l + m);
  if (rep.main_term != 0.0) {
    rep.ratio = rep.empirical / rep.main_term;
    rep.ratio_defined = true;
  }
  return rep;
}

namespace {

struct RestrictedAcc {
  KahanSum full, restricted;
  u64 count = 0;
  std::vector<double> per_q;  // indexed by prime index below z
};

}  // namespace

RestrictedReport restricted_sum_ratio(const WeightParams& wp, const ExecPolicy& pol) {
  wp.validate();
  RestrictedReport rep;
  rep.eta = wp.eta;
  rep.z = std::pow(wp.R, wp.eta);

  std::vector<u64> primes = primes_upto(static_cast<u64>(wp.R));
  size_t nz = 0;  // primes strictly below z
  while (nz < primes.size() && double(primes[nz]) < rep.z) ++nz;

  auto chunks = weight_map<RestrictedAcc>(
      wp, false, 0, pol,
      [nz](RestrictedAcc& acc, u64, const u32* ups, int cnt, double lambda,
           const WindowCtx&) {
        if (acc.per_q.empty()) acc.per_q.assign(nz == 0 ? 1 : nz, 0.0);
        double w = lambda * lambda;
        acc.full.add(w);
        if (cnt > 0 && ups[0] < nz) {
          acc.restricted.add(w);
          ++acc.count;
          for (int i = 0; i < cnt && ups[i] < nz; ++i) acc.per_q[ups[i]] += w;
        }
      });

  KahanSum full, restr;
  std::vector<double> per_q(nz, 0.0);
  for (auto& c : chunks) {
    full.add(c.full.value());
    restr.add(c.restricted.value());
    rep.restricted_count += c.count;
    for (size_t i = 0; i < nz && i < c.per_q.size(); ++i) per_q[i] += c.per_q[i];
  }
  rep.full_sum = full.value();
  rep.restricted_sum = restr.value();
  rep.ratio = rep.full_sum > 0 ? rep.restricted_sum / rep.full_sum : 0.0;

  double log_r = std::log(wp.R);
  for (size_t i = 0; i < nz; ++i) {
    RestrictedPerQ row;
    row.q = primes[i];
    row.sum_q = per_q[i];
    row.beta = std::log(double(primes[i])) / log_r;
    // distinct residues of H mod q
    std::vector<u64> rs;
    for (u64 h : wp.tuple.offsets()) rs.push_back(h % primes[i]);
    std::sort(rs.begin(), rs.end());
    u64 omega_q = std::unique(rs.begin(), rs.end()) - rs.begin();
    rep.driver += double(omega_q) / double(primes[i]) * row.beta;
    row.lemma_ratio = rep.full_sum > 0 && row.beta > 0
                          ? row.sum_q * double(primes[i]) / (row.beta * rep.full_sum)
                          : 0.0;
    rep.per_q.push_back(row);
  }
  return rep;
}

CriterionReport combined_criterion_sum(const WeightParams& params, const Rat& theta,
                                       double epsilon, const ExecPolicy& pol) {
  double theta_d = rat_to_double(theta);
  if (theta_d <= 0 || theta_d > 1)
    throw std::domain_error("combined_criterion_sum: theta outside (0,1]");
  if (epsilon <= 0 || epsilon >= theta_d)
    throw std::domain_error("combined_criterion_sum: need 0 < epsilon < theta");

  WeightParams wp = params;
  wp.R = std::pow(double(wp.N), (theta_d - epsilon) / (2.0 + wp.eta));
  wp.validate();

  CriterionReport rep;
  rep.r_used = wp.R;
  rep.epsilon = epsilon;
  double z = std::pow(wp.R, wp.eta);
  std::vector<u64> primes = primes_upto(static_cast<u64>(wp.R));
  size_t nz = 0;
  while (nz < primes.size() && double(primes[nz]) < z) ++nz;
  const double log3n = std::log(3.0 * double(wp.N));
  const auto& offs = wp.tuple.offsets();

  struct Acc {
    KahanSum value, theta_sum, lambda_sq;
    u64 count = 0;
  };
  auto chunks = weight_map<Acc>(
      wp, true, 0, pol,
      [nz, log3n, &offs](Acc& acc, u64 n, const u32* ups, int cnt, double lambda,
                         const WindowCtx& ctx) {
        if (cnt > 0 && ups[0] < nz) return;  // smooth part excluded
        double w = lambda * lambda;
        double s = 0;
        for (u64 h : offs)
          if (ctx.value_prime(n + h)) s += std::log(double(n + h));
        acc.value.add(w * (s - log3n));
        acc.theta_sum.add(w * s);
        acc.lambda_sq.add(w);
        ++acc.count;
      });

  KahanSum value, tsum, lsq;
  for (auto& c : chunks) {
    value.add(c.value.value());
    tsum.add(c.theta_sum.value());
    lsq.add(c.lambda_sq.value());
    rep.surviving_count += c.count;
  }
  rep.value = value.value();
  rep.theta_sum = tsum.value();
  rep.penalty_sum = log3n * lsq.value();
  rep.verdict_sign = rep.value > 0 ? 1 : (rep.value < 0 ? -1 : 0);
  return rep;
}

namespace {

Rat rat_pow(const Rat& x, long e) {
  if (e == 0) return Rat(1);
  Rat b = e > 0 ? x : Rat(1) / x;
  unsigned long n = e > 0 ? e : -e;
  Rat r(1);
  while (n) {
    if (n & 1) r *= b;
    b *= b;
    n >>= 1;
  }
  return r;
}

// F_m = [xi^m] (1 + alpha/(1+xi))^k
//     = [m = 0] + (-1)^m Σ_{i=1}^k C(k,i) C(i+m-1, m) alpha^i
std::vector<Rat> f_coeffs(unsigned k, const Rat& alpha, unsigned upto) {
  std::vector<Rat> F(upto + 1, Rat(0));
  for (unsigned m = 0; m <= upto; ++m) {
    Rat s = m == 0 ? Rat(1) : Rat(0);
    Rat apow = alpha;
    Rat inner(0);
    for (unsigned i = 1; i <= k; ++i) {
      inner += Rat(binomial_int(k, i) * binomial_int(i + m - 1, m)) * apow;
      apow *= alpha;
    }
    if (m % 2 == 1) inner = -inner;
    F[m] = s + inner;
  }
  return F;
}

void check_tq1_domain(unsigned k, unsigned l, const Rat& alpha) {
  if (k == 0) throw std::domain_error("t_q1: k = 0");
  if (l > 64) throw std::domain_error("t_q1: l beyond sane range");
  if (abs(alpha) >= 1) throw std::domain_error("t_q1: |alpha| must be < 1");
}

}  // namespace

Rat t_q1_polynomial(unsigned k, unsigned l, const Rat& alpha) {
  check_tq1_domain(k, l, alpha);
  std::vector<Rat> F = f_coeffs(k, alpha, l);
  Rat one_plus = Rat(1) + alpha;
  Rat total(0);
  for (unsigned m = 0; m <= l; ++m) {
    // G_{l-m} = [xi^{l-m}] (1 + alpha + xi)^{2l}
    Rat g = Rat(binomial_int(2 * l, l - m)) * rat_pow(one_plus, long(2 * l) - long(l - m));
    total += F[m] * g;
  }
  total.canonicalize();
  return total;
}

Rat t_q1_term_sum(unsigned k, unsigned l, const Rat& alpha) {
  check_tq1_domain(k, l, alpha);
  Rat one_plus = Rat(1) + alpha;
  Rat total = Rat(binomial_int(2 * l, l)) * rat_pow(one_plus, long(k) + long(l));
  for (unsigned j = 1; j <= l; ++j) {
    // D_j = d^j/dxi^j (1+xi)^{-k} (1+xi+alpha)^k at xi = 0, by Leibniz with
    // falling factorials.
    Rat dj(0);
    for (unsigned s = 0; s <= j; ++s) {
      Int ff1(1), ff2(1);
      for (unsigned t = 0; t < s; ++t) ff1 *= Int(-long(k) - long(t));
      for (unsigned t = 0; t < j - s; ++t) ff2 *= Int(long(k) - long(t));
      dj += Rat(binomial_int(j, s) * ff1 * ff2) *
            rat_pow(one_plus, long(k) - long(j) + long(s));
    }
    Rat coef = Rat(binomial_int(l, j) * factorial_int(2 * l),
                   factorial_int(l) * factorial_int(l + j));
    coef.canonicalize();
    total += coef * rat_pow(one_plus, long(l) + long(j)) * dj;
  }
  total.canonicalize();
  return total;
}

}  // namespace primelab
