#include "primelab/tuples.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>
#include <stdexcept>

#include "primelab/primes.hpp"

namespace primelab {

Tuple::Tuple(std::vector<u64> offsets) : offsets_(std::move(offsets)) {
  for (size_t i = 1; i < offsets_.size(); ++i)
    if (offsets_[i] <= offsets_[i - 1])
      throw std::domain_error("tuple offsets must be strictly increasing");
}

Tuple Tuple::parse(const std::string& text) {
  std::vector<u64> offs;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    size_t pos = 0;
    unsigned long long v = 0;
    try {
      v = std::stoull(item, &pos);
    } catch (const std::exception&) {
      throw std::domain_error("bad tuple literal: " + text);
    }
    while (pos < item.size() && std::isspace(static_cast<unsigned char>(item[pos]))) ++pos;
    if (pos != item.size()) throw std::domain_error("bad tuple literal: " + text);
    offs.push_back(v);
  }
  if (offs.empty()) throw std::domain_error("empty tuple literal");
  return Tuple(std::move(offs));
}

std::string Tuple::to_string() const {
  std::string s;
  for (size_t i = 0; i < offsets_.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(offsets_[i]);
  }
  return s;
}

Tuple Tuple::normalized() const {
  if (offsets_.empty() || offsets_.front() == 0) return *this;
  std::vector<u64> shifted(offsets_);
  u64 base = shifted.front();
  for (u64& o : shifted) o -= base;
  return Tuple(std::move(shifted));
}

AdmissibilityWitness is_admissible(std::span<const u64> offsets) {
  if (offsets.empty()) throw std::domain_error("is_admissible: empty tuple");
  for (size_t i = 1; i < offsets.size(); ++i)
    if (offsets[i] <= offsets[i - 1])
      throw std::domain_error("is_admissible: offsets must be strictly increasing");

  AdmissibilityWitness w;
  u64 k = offsets.size();
  std::vector<u8> seen;
  for (u64 p : primes_upto(k)) {
    seen.assign(p, 0);
    u64 covered = 0;
    for (u64 h : offsets) {
      u64 r = h % p;
      if (!seen[r]) {
        seen[r] = 1;
        if (++covered == p) break;
      }
    }
    if (covered == p) {
      w.admissible = false;
      w.covering_prime = p;
      w.omitted_class.clear();
      return w;
    }
    for (u64 r = 0; r < p; ++r)
      if (!seen[r]) {
        w.omitted_class.emplace_back(p, r);
        break;
      }
  }
  w.admissible = true;
  return w;
}

Tuple primes_above_k_tuple(unsigned k) {
  if (k == 0) throw std::domain_error("primes_above_k_tuple: k = 0");
  // p_{pi(k)+k} is comfortably below this for desk-scale k.
  u64 limit = 64;
  std::vector<u64> ps;
  for (;;) {
    ps = primes_upto(limit);
    size_t skip = 0;
    while (skip < ps.size() && ps[skip] <= k) ++skip;
    if (ps.size() - skip >= k) {
      std::vector<u64> offs(ps.begin() + skip, ps.begin() + skip + k);
      u64 base = offs.front();
      for (u64& o : offs) o -= base;
      return Tuple(std::move(offs));
    }
    limit *= 2;
  }
}

namespace {

// DFS for an admissible k-tuple 0 = h_1 < ... < h_k = target with ascending
// candidate choice, so the first hit is the lexicographically smallest.
// coverage[i] = count of residue classes hit mod primes[i]; a prime whose
// classes are fully covered kills the whole subtree.
struct NarrowSearch {
  unsigned k;
  u64 target;
  std::vector<u64> primes;              // primes <= k
  std::vector<std::vector<u8>> seen;    // per prime, residue classes hit
  std::vector<u64> covered;             // per prime, count of classes hit
  std::vector<u64> chosen;

  // Check before marking: adding h must not complete coverage mod any prime
  // (coverage only grows down a branch, so completion is fatal to the subtree).
  bool push(u64 h) {
    for (size_t i = 0; i < primes.size(); ++i) {
      u64 r = h % primes[i];
      if (!seen[i][r] && covered[i] + 1 == primes[i]) return false;
    }
    for (size_t i = 0; i < primes.size(); ++i) mark(i, h);
    chosen.push_back(h);
    return true;
  }

  void mark(size_t i, u64 h) {
    u64 r = h % primes[i];
    if (seen[i][r]++ == 0) ++covered[i];
  }
  void unmark(size_t i, u64 h) {
    u64 r = h % primes[i];
    if (--seen[i][r] == 0) --covered[i];
  }
  void pop() {
    u64 h = chosen.back();
    chosen.pop_back();
    for (size_t i = 0; i < primes.size(); ++i) unmark(i, h);
  }

  bool dfs() {
    if (chosen.size() == k - 1) return push(target);
    u64 lo = chosen.back() + 1;
    u64 remaining = k - 1 - chosen.size();  // slots before the forced target
    // Leave room for the still-unchosen middle offsets below target.
    for (u64 h = lo; h + remaining <= target; ++h) {
      if (push(h)) {
        if (dfs()) return true;
        pop();
      }
    }
    return false;
  }
};

}  // namespace

std::optional<Tuple> narrowest_tuple(unsigned k, u64 search_limit,
                                     const ExecPolicy& pol) {
  (void)pol;  // the search is cheap at supported sizes; kept for API symmetry
  if (k == 0) throw std::domain_error("narrowest_tuple: k = 0");
  if (k == 1) return Tuple(std::vector<u64>{0});
  if (search_limit > 100000)
    throw capacity_error("narrowest_tuple: search_limit beyond 1e5");

  for (u64 target = k - 1; target <= search_limit; ++target) {
    NarrowSearch s;
    s.k = k;
    s.target = target;
    s.primes = primes_upto(k);
    s.seen.resize(s.primes.size());
    for (size_t i = 0; i < s.primes.size(); ++i) s.seen[i].assign(s.primes[i], 0);
    s.covered.assign(s.primes.size(), 0);
    if (!s.push(0)) continue;
    if (s.dfs()) return Tuple(s.chosen);
  }
  return std::nullopt;
}

namespace {

// x^e by squaring; exact for e = 0,1 so ratios like (1-1/p)/(1-1/p) stay 1.0.
double powi(double x, unsigned e) {
  double r = 1.0;
  double b = x;
  while (e) {
    if (e & 1) r *= b;
    b *= b;
    e >>= 1;
  }
  return r;
}

// Shared Euler-product driver: factor(p) supplied by the caller for p <= T;
// the tail bound covers |ln factor| <= 2 k^2 / p^2 for p > T, valid once
// every tail prime is in the regular regime (T >= max(diameter, 2k)).
SingularSeriesValue euler_product(u64 k, u64 teff,
                                  const std::vector<u64>& primes,
                                  const std::function<double(u64)>& factor) {
  SingularSeriesValue out;
  out.truncation_prime = teff;
  long double prod = 1.0L;
  for (u64 p : primes) {
    double f = factor(p);
    if (f == 0.0) {
      out.value = 0.0;
      out.vanishes = true;
      out.tail_error_bound = 1.0;
      return out;
    }
    prod *= f;
  }
  out.value = static_cast<double>(prod);
  // sum_{p>T} 1/p^2 < integral_T^inf dx/(x^2 ln x) < 1/(T ln T) for T >= 100.
  double t = static_cast<double>(teff);
  out.tail_error_bound = std::exp(2.0 * double(k) * double(k) / (t * std::log(t)));
  return out;
}

}  // namespace

SingularSeriesValue singular_series(const Tuple& t, u64 truncation_prime) {
  u64 k = t.k();
  if (k == 0) throw std::domain_error("singular_series: empty tuple");
  if (truncation_prime < k)
    throw std::domain_error("singular_series: truncation below k is meaningless");

  // Extend the truncation so all tail factors satisfy |Omega(p)| = k and the
  // quadratic tail estimate applies.
  u64 teff = std::max({truncation_prime, t.diameter(), 2 * k, u64(100)});
  std::vector<u64> primes = primes_upto(teff);

  std::function<double(u64)> factor = [&](u64 p) {
    // |Omega(p)| = number of distinct residues of H mod p.
    u64 m = 0;
    if (p <= 64 || p <= k * 4) {
      std::vector<u8> seen(p, 0);
      for (u64 h : t.offsets()) {
        u64 r = h % p;
        if (!seen[r]) {
          seen[r] = 1;
          ++m;
        }
      }
    } else {
      // p large: count distinct residues directly (k is small).
      std::vector<u64> rs;
      rs.reserve(k);
      for (u64 h : t.offsets()) rs.push_back(h % p);
      std::sort(rs.begin(), rs.end());
      m = std::unique(rs.begin(), rs.end()) - rs.begin();
    }
    double pd = static_cast<double>(p);
    return (1.0 - double(m) / pd) / powi(1.0 - 1.0 / pd, static_cast<unsigned>(k));
  };
  return euler_product(k, teff, primes, factor);
}

SingularSeriesValue singular_series_lower_bound(unsigned k, u64 truncation_prime) {
  if (k == 0) throw std::domain_error("singular_series_lower_bound: k = 0");
  if (truncation_prime < k)
    throw std::domain_error("singular_series_lower_bound: truncation below k");
  u64 teff = std::max<u64>({truncation_prime, 2 * u64(k), 100});
  std::vector<u64> primes = primes_upto(teff);
  std::function<double(u64)> factor = [&](u64 p) {
    double pd = static_cast<double>(p);
    if (p <= 2 * u64(k)) return 1.0 / pd;
    return (1.0 - double(k) / pd) / powi(1.0 - 1.0 / pd, k);
  };
  return euler_product(k, teff, primes, factor);
}

}  // namespace primelab
