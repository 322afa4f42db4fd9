// scanner.hpp — almost-prime constellation scanning: survivor records over a
// range, component-pattern census, and consecutive-integer pattern pairs.
#pragma once

#include <functional>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "primelab/primes.hpp"
#include "primelab/rat.hpp"
#include "primelab/tuples.hpp"
#include "primelab/util.hpp"

namespace primelab {

struct ConstellationRecord {
  u64 n = 0;
  std::vector<u32> component_omegas;  // Ω(n + h_i) per component
  u64 prime_mask = 0;                 // bit i set -> component i+1 is prime
  bool min_pf_ok = true;              // every component has P^-(n+h_i) > n^c1
  // 1-based component indices (i, j) of the first pair that are consecutive
  // primes (both prime, no other prime strictly between them).
  std::optional<std::pair<u32, u32>> consecutive_pair;
};

struct ScanCounts {
  u64 survivors = 0;          // records emitted (min_pf_ok holds)
  u64 two_prime = 0;          // survivors with at least two prime components
  u64 consecutive = 0;        // survivors carrying a consecutive pair
};

struct ScanResult {
  std::vector<ConstellationRecord> records;  // ascending n
  ScanCounts counts;
};

// Scans n in [lo, hi]: emits one record per n whose components all clear the
// almost-prime threshold P^-(n + h_i) > n^{c1}. The threshold compare is
// exact for rational c1 with denominator <= 64 (integer powers), long double
// otherwise. c1 must lie in (0, 1).
ScanResult scan(u64 lo, u64 hi, const Tuple& H, const Rat& c1,
                const ExecPolicy& pol = {});

// Streaming variant: records are delivered to the sink in ascending n order
// without being materialized as a vector.
void scan_stream(u64 lo, u64 hi, const Tuple& H, const Rat& c1,
                 const std::function<void(const ConstellationRecord&)>& sink,
                 const ExecPolicy& pol = {});

// True iff components i and j (0-based, i < j) of n + H are consecutive
// primes. Both endpoints must be prime (domain error otherwise); the table
// must cover the interval.
bool consecutive_pair_check(u64 n, size_t i, size_t j, const Tuple& H,
                            const PrimeTable& table);

struct CensusReport {
  std::map<std::vector<u32>, u64> histogram;  // b-vector -> count
  u64 distinct = 0;
  std::vector<u32> modal;  // most frequent b-vector, lexicographic tie-break
  u64 modal_count = 0;
  u64 cap = 0;             // floor(1/c1)^k, saturated at u64 max
  bool within_cap = true;  // distinct <= cap
};

CensusReport pattern_census(std::span<const ConstellationRecord> records,
                            size_t k, const Rat& c1);

// Conjunction of per-field constraints applied to (n, n+1): each enabled
// field must agree between the two integers, and match the pinned target
// when one is given.
struct PairPredicate {
  bool omega_equal = false;
  std::optional<u32> omega_target;
  bool big_omega_equal = false;
  std::optional<u32> big_omega_target;
  bool divisors_equal = false;
  std::optional<u64> divisors_target;
  bool pattern_equal = false;
  std::optional<std::vector<u32>> pattern_target;  // sorted descending

  bool any() const {
    return omega_equal || big_omega_equal || divisors_equal || pattern_equal;
  }
  // "omega=4,Omega=5,d=24", "d", "pattern=2;1;1;1", ...
  static PairPredicate parse(const std::string& text);
  std::string to_string() const;
};

struct PairScanResult {
  std::vector<u64> hits;   // ascending n <= limit matching the predicate
  u64 count = 0;
  double reference = 0;    // limit / log^3(limit), trend comparator only
};

PairScanResult pattern_pair_scan(u64 limit, const PairPredicate& pred,
                                 const ExecPolicy& pol = {});

// Record CSV encoding (header + rows); semicolons join vector fields.
std::string record_csv_header();
std::string record_csv_row(const ConstellationRecord& rec);
void write_records_csv(std::ostream& os, std::span<const ConstellationRecord> recs);
std::vector<ConstellationRecord> read_records_csv(std::istream& is);

}  // namespace primelab
