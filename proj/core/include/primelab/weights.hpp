// weights.hpp — truncated divisor-sum sieve weights and their averaged sums:
// the single-variable weight Λ_R(n), the tuple weight Λ_R(n; H, a), the
// squared-sum S0 and prime-twisted sum S1 with their predicted main terms,
// smooth-part restricted variants, the combined positivity criterion, and the
// exact residue polynomial T_{q,1}.
#pragma once

#include <string>
#include <vector>

#include "primelab/rat.hpp"
#include "primelab/tuples.hpp"
#include "primelab/util.hpp"

namespace primelab {

struct WeightParams {
  Tuple tuple;        // H, normalized offsets
  u64 l = 1;          // smoothing exponent; weights use a = k + l
  double R = 0;       // divisor cutoff, 1 < R <= N
  u64 N = 0;          // sums run over n in (N, 2N]
  double eta = 0.0;   // smooth-part threshold exponent (primes below R^eta)
  double c1 = 0.05;   // almost-prime threshold exponent carried for scans

  u64 k() const { return tuple.k(); }
  u64 a() const { return k() + l; }
  void validate() const;  // throws domain/capacity errors
};

// Λ_R(n) = Σ_{d|n, d<=R} μ(d) log(R/d). n >= 1, R > 1.
double truncated_von_mangoldt(u64 n, double R);

// λ_R(d; a) = μ(d)/a! (log(R/d))_+^a for squarefree d (0 otherwise). d >= 1.
double lambda_rd(u64 d, unsigned a, double R);

// Λ_R(n; H, a) = Σ_{d | P_H(n), d squarefree, d <= R} λ_R(d; a), evaluated
// from per-component factorizations (P_H(n) itself is never formed).
double gpy_weight(u64 n, const Tuple& H, unsigned a, double R);

// ∏_i Λ_R(n + h_i): the product-form weight, kept as an independent route.
double product_weight(u64 n, const Tuple& H, double R);

struct SumReport {
  std::string label;            // "S0" or "S1"
  double empirical = 0;         // computed sum
  double main_term = 0;         // predicted leading term
  double ratio = 0;             // empirical / main_term (when defined)
  bool ratio_defined = false;
  u64 count_n = 0;              // #terms = N
  double log_r = 0;
  double sseries = 0;           // singular series used by the main term
  u64 sseries_truncation = 0;
};

// S0 = Σ_{N < n <= 2N} Λ_R(n; H, k+l)^2, with predicted main term
//   S(H) binom(2l, l) N (log R)^{k+2l} / (k+2l)!.
SumReport sum_s0(const WeightParams& params, const ExecPolicy& pol = {});

// S1 = Σ_{N < n <= 2N} θ(n+h) Λ_R(n; H, k+l)^2 where θ(m) = log m when m is
// prime, else 0. Main term uses S(H ∪ {h}) and (with m = [h ∈ H])
//   S(H∪{h}) binom(2(l+m), l+m) N (log R)^{k+2l+m} / (k+2l+m)!.
// Inadmissible H ∪ {h} vanishes the singular series: main term 0, no ratio.
SumReport sum_s1(const WeightParams& params, u64 h, const ExecPolicy& pol = {});

struct RestrictedPerQ {
  u64 q = 0;            // prime below R^eta
  double sum_q = 0;     // Σ over n with q | P_H(n) of Λ^2
  double beta = 0;      // log q / log R
  double lemma_ratio = 0;  // sum_q / (beta/q * full): the bounded constant
};

struct RestrictedReport {
  double eta = 0;
  double z = 0;             // R^eta
  double full_sum = 0;
  double restricted_sum = 0;  // over n whose P_H(n) has a prime factor < z
  double ratio = 0;           // restricted / full, in [0, 1]
  u64 restricted_count = 0;
  double driver = 0;          // Σ_{q < z} |Ω(q)|/q * log q / log R
  std::vector<RestrictedPerQ> per_q;
};

// Restricted version of S0: mass of the smooth-component part of the sum.
RestrictedReport restricted_sum_ratio(const WeightParams& params,
                                      const ExecPolicy& pol = {});

struct CriterionReport {
  double value = 0;        // Σ restricted (Σ_h θ(n+h) - log 3N) Λ^2
  int verdict_sign = 0;    // sign of value; positive is the interesting case
  double r_used = 0;       // R = N^{(theta - eps)/(2 + eta)}
  double theta_sum = 0;    // Σ restricted Λ^2 Σ_h θ(n+h)
  double penalty_sum = 0;  // log(3N) Σ restricted Λ^2
  u64 surviving_count = 0; // n clearing the smooth-part restriction
  double epsilon = 0;
};

// Combined positivity sum at level theta: restriction drops n whose P_H(n)
// has a prime factor below R^eta (eta from params; eta = 0 keeps everything).
CriterionReport combined_criterion_sum(const WeightParams& params,
                                       const Rat& theta, double epsilon = 0.01,
                                       const ExecPolicy& pol = {});

// T_{q,1}(1+alpha) = [xi^l] (1 + alpha/(1+xi))^k (1 + alpha + xi)^{2l},
// computed exactly by truncated power series with rational coefficients.
// T_{q,1}(1) = binom(2l, l). Requires |alpha| < 1.
Rat t_q1_polynomial(unsigned k, unsigned l, const Rat& alpha);

// Same value through the Leibniz/derivative expansion
//   binom(2l,l)(1+a)^{k+l} + Σ_{j=1}^l binom(l,j) (2l)!/(l!(l+j)!) (1+a)^{l+j} D_j,
// with D_j the j-th derivative of (1+a/(1+xi))^k at 0; kept as an
// independent cross-check route.
Rat t_q1_term_sum(unsigned k, unsigned l, const Rat& alpha);

}  // namespace primelab
