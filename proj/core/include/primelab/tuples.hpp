// tuples.hpp — admissible prime tuples: admissibility witnesses, dense tuple
// construction, and the singular series with a rigorous truncation bracket.
#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "primelab/util.hpp"

namespace primelab {

// Offset tuple H = {h_1 < h_2 < ... < h_k}, h_i >= 0. Construction helpers
// normalize to h_1 = 0; parse() keeps whatever the caller wrote.
class Tuple {
 public:
  Tuple() = default;
  explicit Tuple(std::vector<u64> offsets);

  static Tuple parse(const std::string& text);  // "0,4,6,10,12,16"
  std::string to_string() const;

  size_t k() const { return offsets_.size(); }
  u64 diameter() const { return offsets_.empty() ? 0 : offsets_.back() - offsets_.front(); }
  const std::vector<u64>& offsets() const { return offsets_; }
  u64 operator[](size_t i) const { return offsets_[i]; }

  Tuple normalized() const;  // shift so the first offset is 0

 private:
  std::vector<u64> offsets_;  // strictly increasing
};

struct AdmissibilityWitness {
  bool admissible = false;
  u64 covering_prime = 0;  // witness when inadmissible: H covers all classes mod p
  // One omitted residue class per prime p <= k when admissible.
  std::vector<std::pair<u64, u64>> omitted_class;
};

// H is admissible iff for every prime p <= k the offsets omit at least one
// residue class mod p (primes p > k can never be covered by k offsets).
AdmissibilityWitness is_admissible(std::span<const u64> offsets);
inline AdmissibilityWitness is_admissible(const Tuple& t) {
  return is_admissible(std::span<const u64>(t.offsets()));
}

// The first k primes exceeding k, shifted to start at 0. Admissible for every
// k: the unshifted values all avoid residue 0 mod each prime p <= k.
Tuple primes_above_k_tuple(unsigned k);

// Minimal-diameter admissible k-tuple with offsets in [0, search_limit].
// Deterministic tie-break: lexicographically smallest offset vector. Returns
// nullopt when no admissible tuple fits under the limit.
std::optional<Tuple> narrowest_tuple(unsigned k, u64 search_limit,
                                     const ExecPolicy& pol = {});

struct SingularSeriesValue {
  double value = 0.0;          // truncated Euler product
  u64 truncation_prime = 0;    // effective truncation actually used
  double tail_error_bound = 1; // multiplicative: true value in [value/b, value*b]
  bool vanishes = false;       // some factor is exactly zero (inadmissible H)
};

// Truncated singular series  ∏_p (1 - |Ω(p)|/p) (1 - 1/p)^{-k}  over p <= T,
// where |Ω(p)| counts distinct residues of H mod p. The requested truncation
// is extended to max(T, diameter, 2k, 100) so that every tail factor is in
// the regular regime |Ω(p)| = k, making the bracket rigorous. T < k refused.
SingularSeriesValue singular_series(const Tuple& t, u64 truncation_prime);

// Universal lower bound over all admissible k-tuples:
//   ∏_{p <= 2k} 1/p · ∏_{p > 2k} (1 - k/p)(1 - 1/p)^{-k},
// computed as a truncated product with the same bracket machinery.
SingularSeriesValue singular_series_lower_bound(unsigned k, u64 truncation_prime);

}  // namespace primelab
