// scanner.cpp — constellation survivor scan, pattern census, pair predicates.
#include "primelab/scanner.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "pow_compare.hpp"

namespace primelab {

using detail::ThresholdCmp;
using detail::validate_c1;

namespace {

ConstellationRecord make_record(u64 n, const Tuple& H,
                                const PrimeTable& table) {
  const auto& offs = H.offsets();
  ConstellationRecord rec;
  rec.n = n;
  rec.component_omegas.resize(offs.size());
  for (size_t i = 0; i < offs.size(); ++i) {
    u64 v = n + offs[i];
    rec.component_omegas[i] = v <= 1 ? 0 : factorize(v, table).big_omega();
    if (v >= 2 && table.is_prime(v)) rec.prime_mask |= u64(1) << i;
  }
  // First adjacent pair of prime components with no prime strictly between.
  std::vector<size_t> prime_idx;
  for (size_t i = 0; i < offs.size(); ++i)
    if (rec.prime_mask >> i & 1) prime_idx.push_back(i);
  for (size_t t = 0; t + 1 < prime_idx.size(); ++t) {
    u64 a = n + offs[prime_idx[t]], b = n + offs[prime_idx[t + 1]];
    if (b - a < 2 || table.count_primes(a + 1, b - 1) == 0) {
      rec.consecutive_pair = {static_cast<u32>(prime_idx[t] + 1),
                              static_cast<u32>(prime_idx[t + 1] + 1)};
      break;
    }
  }
  return rec;
}

bool survives(u64 n, const Tuple& H, const PrimeTable& table,
              const ThresholdCmp& cmp) {
  for (u64 h : H.offsets()) {
    u64 v = n + h;
    if (v <= 1) continue;  // no prime factor at all
    if (!cmp.pass(table.smallest_factor(v), n)) return false;
  }
  return true;
}

PrimeTable scan_table(u64 lo, u64 hi, const Tuple& H, const ExecPolicy& pol) {
  if (lo < 1 || lo > hi) throw std::domain_error("scan: need 1 <= lo <= hi");
  if (auto wit = is_admissible(H); !wit.admissible)
    throw std::domain_error(
        "scan: tuple covers every class mod " +
        std::to_string(wit.covering_prime) + "; survivor set is finite");
  u64 top = checked_add(hi, H.diameter());
  SieveOptions opts;
  opts.threads = pol.threads;
  opts.spf_limit = top;  // every component factored through the spf index
  return build_tables(2, std::max<u64>(top, 3), opts);
}

}  // namespace

ScanResult scan(u64 lo, u64 hi, const Tuple& H, const Rat& c1,
                const ExecPolicy& pol) {
  validate_c1(c1);
  PrimeTable table = scan_table(lo, hi, H, pol);
  ThresholdCmp cmp(c1);
  auto chunks = chunked_map(lo, hi + 1, pol, [&](u64 a, u64 b) {
    std::vector<ConstellationRecord> out;
    for (u64 n = a; n < b; ++n)
      if (survives(n, H, table, cmp)) out.push_back(make_record(n, H, table));
    return out;
  });
  ScanResult res;
  for (auto& part : chunks)
    for (auto& rec : part) {
      res.counts.survivors++;
      if (std::popcount(rec.prime_mask) >= 2) res.counts.two_prime++;
      if (rec.consecutive_pair) res.counts.consecutive++;
      res.records.push_back(std::move(rec));
    }
  return res;
}

void scan_stream(u64 lo, u64 hi, const Tuple& H, const Rat& c1,
                 const std::function<void(const ConstellationRecord&)>& sink,
                 const ExecPolicy& pol) {
  validate_c1(c1);
  PrimeTable table = scan_table(lo, hi, H, pol);
  ThresholdCmp cmp(c1);
  for (u64 n = lo; n <= hi && n >= lo; ++n)
    if (survives(n, H, table, cmp)) sink(make_record(n, H, table));
}

bool consecutive_pair_check(u64 n, size_t i, size_t j, const Tuple& H,
                            const PrimeTable& table) {
  const auto& offs = H.offsets();
  if (i >= j || j >= offs.size())
    throw std::domain_error("consecutive_pair_check: need i < j < k");
  u64 a = checked_add(n, offs[i]), b = checked_add(n, offs[j]);
  if (!table.covers(a) || !table.covers(b))
    throw std::domain_error("consecutive_pair_check: table does not cover components");
  if (!table.is_prime(a) || !table.is_prime(b))
    throw std::domain_error("consecutive_pair_check: both components must be prime");
  return b - a < 2 || table.count_primes(a + 1, b - 1) == 0;
}

CensusReport pattern_census(std::span<const ConstellationRecord> records,
                            size_t k, const Rat& c1) {
  validate_c1(c1);
  if (k == 0) throw std::domain_error("pattern_census: k must be positive");
  CensusReport rep;
  for (const auto& rec : records) {
    if (rec.component_omegas.size() != k)
      throw std::domain_error("pattern_census: record arity differs from k");
    rep.histogram[rec.component_omegas]++;
  }
  rep.distinct = rep.histogram.size();
  for (const auto& [vec, cnt] : rep.histogram)
    if (cnt > rep.modal_count) {  // map order makes ties lexicographic-smallest
      rep.modal_count = cnt;
      rep.modal = vec;
    }
  Rat inv = 1 / Rat(c1);
  inv.canonicalize();
  Int fl = inv.get_num() / inv.get_den();  // floor(1/c1), both positive
  Int cap;
  mpz_pow_ui(cap.get_mpz_t(), fl.get_mpz_t(), k);
  rep.cap = cap.fits_ulong_p() ? static_cast<u64>(cap.get_ui())
                               : std::numeric_limits<u64>::max();
  rep.within_cap = rep.distinct <= rep.cap;
  return rep;
}

namespace {

std::string trim(const std::string& s) {
  size_t a = s.find_first_not_of(" \t");
  if (a == std::string::npos) return "";
  size_t b = s.find_last_not_of(" \t");
  return s.substr(a, b - a + 1);
}

std::vector<u32> parse_pattern_value(const std::string& text) {
  std::vector<u32> out;
  std::stringstream ss(text);
  std::string part;
  while (std::getline(ss, part, ';')) {
    part = trim(part);
    size_t used = 0;
    unsigned long v = std::stoul(part, &used);
    if (used != part.size() || v == 0)
      throw std::domain_error("pair predicate: bad pattern entry '" + part + "'");
    out.push_back(static_cast<u32>(v));
  }
  if (out.empty()) throw std::domain_error("pair predicate: empty pattern");
  std::sort(out.begin(), out.end(), std::greater<>());
  return out;
}

}  // namespace

PairPredicate PairPredicate::parse(const std::string& text) {
  PairPredicate pred;
  std::stringstream ss(text);
  std::string token;
  while (std::getline(ss, token, ',')) {
    token = trim(token);
    if (token.empty()) continue;
    std::string key = token, value;
    if (size_t eq = token.find('='); eq != std::string::npos) {
      key = trim(token.substr(0, eq));
      value = trim(token.substr(eq + 1));
    }
    auto as_u64 = [&](const std::string& v) {
      size_t used = 0;
      unsigned long long x = std::stoull(v, &used);
      if (used != v.size())
        throw std::domain_error("pair predicate: bad number '" + v + "'");
      return static_cast<u64>(x);
    };
    if (key == "omega") {
      pred.omega_equal = true;
      if (!value.empty()) pred.omega_target = static_cast<u32>(as_u64(value));
    } else if (key == "Omega") {
      pred.big_omega_equal = true;
      if (!value.empty()) pred.big_omega_target = static_cast<u32>(as_u64(value));
    } else if (key == "d") {
      pred.divisors_equal = true;
      if (!value.empty()) pred.divisors_target = as_u64(value);
    } else if (key == "pattern") {
      pred.pattern_equal = true;
      if (!value.empty()) pred.pattern_target = parse_pattern_value(value);
    } else {
      throw std::domain_error("pair predicate: unknown field '" + key + "'");
    }
  }
  if (!pred.any()) throw std::domain_error("pair predicate: no constraints");
  return pred;
}

std::string PairPredicate::to_string() const {
  std::string out;
  auto add = [&](const std::string& piece) {
    if (!out.empty()) out += ',';
    out += piece;
  };
  if (omega_equal)
    add(omega_target ? "omega=" + std::to_string(*omega_target) : "omega");
  if (big_omega_equal)
    add(big_omega_target ? "Omega=" + std::to_string(*big_omega_target) : "Omega");
  if (divisors_equal)
    add(divisors_target ? "d=" + std::to_string(*divisors_target) : "d");
  if (pattern_equal) {
    if (!pattern_target) {
      add("pattern");
    } else {
      std::string v;
      for (u32 e : *pattern_target) {
        if (!v.empty()) v += ';';
        v += std::to_string(e);
      }
      add("pattern=" + v);
    }
  }
  return out;
}

namespace {

struct PairStats {
  u32 omega = 0, big_omega = 0;
  u64 divisors = 0;
  std::vector<u32> pattern;  // exponents sorted descending
};

PairStats stats_of(u64 v, const PrimeTable& table, bool want_pattern) {
  Factorization f = factorize(v, table);
  PairStats s;
  s.omega = f.small_omega();
  s.big_omega = f.big_omega();
  s.divisors = f.divisor_count();
  if (want_pattern) {
    for (auto& [p, e] : f.factors) s.pattern.push_back(e);
    std::sort(s.pattern.begin(), s.pattern.end(), std::greater<>());
  }
  return s;
}

bool matches(const PairPredicate& pred, const PairStats& a,
             const PairStats& b) {
  if (pred.omega_equal) {
    if (a.omega != b.omega) return false;
    if (pred.omega_target && a.omega != *pred.omega_target) return false;
  }
  if (pred.big_omega_equal) {
    if (a.big_omega != b.big_omega) return false;
    if (pred.big_omega_target && a.big_omega != *pred.big_omega_target)
      return false;
  }
  if (pred.divisors_equal) {
    if (a.divisors != b.divisors) return false;
    if (pred.divisors_target && a.divisors != *pred.divisors_target)
      return false;
  }
  if (pred.pattern_equal) {
    if (a.pattern != b.pattern) return false;
    if (pred.pattern_target && a.pattern != *pred.pattern_target) return false;
  }
  return true;
}

}  // namespace

PairScanResult pattern_pair_scan(u64 limit, const PairPredicate& pred,
                                 const ExecPolicy& pol) {
  if (!pred.any()) throw std::domain_error("pattern_pair_scan: empty predicate");
  if (limit < 3) throw std::domain_error("pattern_pair_scan: limit must be >= 3");
  SieveOptions opts;
  opts.threads = pol.threads;
  opts.spf_limit = limit + 1;
  PrimeTable table = build_tables(2, limit + 1, opts);
  bool want_pattern = pred.pattern_equal;
  // n runs over [2, limit]; the companion n + 1 may equal limit + 1.
  auto chunks = chunked_map(2, limit + 1, pol, [&](u64 a, u64 b) {
    std::vector<u64> hits;
    PairStats prev = stats_of(a, table, want_pattern);
    for (u64 n = a; n < b; ++n) {
      PairStats next = stats_of(n + 1, table, want_pattern);
      if (matches(pred, prev, next)) hits.push_back(n);
      prev = std::move(next);
    }
    return hits;
  });
  PairScanResult res;
  for (auto& part : chunks)
    res.hits.insert(res.hits.end(), part.begin(), part.end());
  res.count = res.hits.size();
  res.reference =
      static_cast<double>(limit) / std::pow(std::log(static_cast<double>(limit)), 3);
  return res;
}

std::string record_csv_header() {
  return "n,component_omegas,prime_mask,min_pf_ok,consecutive_pair";
}

std::string record_csv_row(const ConstellationRecord& rec) {
  std::string omegas;
  for (u32 w : rec.component_omegas) {
    if (!omegas.empty()) omegas += ';';
    omegas += std::to_string(w);
  }
  std::string mask;
  for (size_t i = 0; i < rec.component_omegas.size(); ++i)
    mask += (rec.prime_mask >> i & 1) ? '1' : '0';
  std::string pair = "-";
  if (rec.consecutive_pair)
    pair = std::to_string(rec.consecutive_pair->first) + ';' +
           std::to_string(rec.consecutive_pair->second);
  return std::to_string(rec.n) + ',' + omegas + ',' + mask + ',' +
         (rec.min_pf_ok ? "1" : "0") + ',' + pair;
}

void write_records_csv(std::ostream& os,
                       std::span<const ConstellationRecord> recs) {
  os << record_csv_header() << '\n';
  for (const auto& rec : recs) os << record_csv_row(rec) << '\n';
}

std::vector<ConstellationRecord> read_records_csv(std::istream& is) {
  std::vector<ConstellationRecord> out;
  std::string line;
  bool first = true;
  while (std::getline(is, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (first) {
      first = false;
      if (line == record_csv_header()) continue;  // header optional
    }
    std::vector<std::string> fields;
    std::stringstream ss(line);
    std::string f;
    while (std::getline(ss, f, ',')) fields.push_back(f);
    if (fields.size() != 5)
      throw std::domain_error("record csv: expected 5 fields, got line '" + line + "'");
    ConstellationRecord rec;
    rec.n = std::stoull(fields[0]);
    {
      std::stringstream os_(fields[1]);
      std::string part;
      while (std::getline(os_, part, ';'))
        rec.component_omegas.push_back(static_cast<u32>(std::stoul(part)));
    }
    if (fields[2].size() != rec.component_omegas.size())
      throw std::domain_error("record csv: mask width differs from arity");
    for (size_t i = 0; i < fields[2].size(); ++i) {
      char ch = fields[2][i];
      if (ch != '0' && ch != '1')
        throw std::domain_error("record csv: mask must be a 0/1 string");
      if (ch == '1') rec.prime_mask |= u64(1) << i;
    }
    rec.min_pf_ok = fields[3] == "1";
    if (fields[4] != "-") {
      size_t semi = fields[4].find(';');
      if (semi == std::string::npos)
        throw std::domain_error("record csv: bad consecutive_pair field");
      rec.consecutive_pair = {
          static_cast<u32>(std::stoul(fields[4].substr(0, semi))),
          static_cast<u32>(std::stoul(fields[4].substr(semi + 1)))};
    }
    out.push_back(std::move(rec));
  }
  return out;
}

}  // namespace primelab
