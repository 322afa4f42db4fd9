// Constellation scanning: survivors, census, pair predicates, CSV spooling.
#include <doctest.h>

#include <bit>
#include <sstream>
#include <vector>

#include "primelab/scanner.hpp"

using namespace primelab;

TEST_SUITE("scanner") {

TEST_CASE("twin scan over a small window matches the hand listing") {
  auto res = scan(5, 100, Tuple::parse("0,2"), Rat(3, 10));
  CHECK(res.counts.survivors == 30);
  CHECK(res.counts.two_prime == 7);
  CHECK(res.counts.consecutive == 7);
  std::vector<u64> twin_starts;
  for (const auto& r : res.records)
    if (std::popcount(r.prime_mask) >= 2) twin_starts.push_back(r.n);
  CHECK(twin_starts == std::vector<u64>{5, 11, 17, 29, 41, 59, 71});
}

TEST_CASE("records carry exact per-component factor counts") {
  auto res = scan(5, 40, Tuple::parse("0,2"), Rat(1, 20));
  for (const auto& r : res.records) {
    REQUIRE(r.component_omegas.size() == 2);
    CHECK(r.min_pf_ok);
    if (r.n == 5) {
      CHECK(r.component_omegas == std::vector<u32>{1, 1});  // 5, 7
      CHECK(r.prime_mask == 0b11);
      REQUIRE(r.consecutive_pair.has_value());
      CHECK(*r.consecutive_pair == std::pair<u32, u32>{1, 2});
    }
    if (r.n == 25) {
      CHECK(r.component_omegas == std::vector<u32>{2, 3});  // 25, 27
      CHECK(r.prime_mask == 0);
      CHECK_FALSE(r.consecutive_pair.has_value());
    }
  }
}

TEST_CASE("threshold actually prunes once c1 bites") {
  // c1 = 1/2: survivors need P^-(n+h) > sqrt(n), which kills most composites.
  auto res = scan(10, 100, Tuple::parse("0,2"), Rat(1, 2));
  for (const auto& r : res.records) {
    for (size_t i = 0; i < 2; ++i) {
      u64 v = r.n + (i ? 2 : 0);
      for (u64 p = 2; p * p <= v; ++p)
        if (v % p == 0) {
          CHECK(u64(p) * p > r.n);  // p > sqrt(n) exactly
          break;
        }
    }
  }
  CHECK(res.counts.survivors < 91);
}

TEST_CASE("streaming scan delivers the same records in order") {
  auto res = scan(5, 500, Tuple::parse("0,2,6"), Rat(1, 10));
  std::vector<u64> streamed;
  scan_stream(5, 500, Tuple::parse("0,2,6"), Rat(1, 10),
              [&](const ConstellationRecord& r) { streamed.push_back(r.n); });
  REQUIRE(streamed.size() == res.records.size());
  for (size_t i = 0; i < streamed.size(); ++i)
    CHECK(streamed[i] == res.records[i].n);
  CHECK(std::is_sorted(streamed.begin(), streamed.end()));
}

TEST_CASE("inadmissible tuples are refused") {
  CHECK_THROWS_AS(scan(5, 100, Tuple::parse("0,2,4"), Rat(1, 10)),
                  std::domain_error);
}

TEST_CASE("c1 domain is enforced") {
  CHECK_THROWS_AS(scan(5, 100, Tuple::parse("0,2"), Rat(0)), std::domain_error);
  CHECK_THROWS_AS(scan(5, 100, Tuple::parse("0,2"), Rat(1)), std::domain_error);
  CHECK_THROWS_AS(scan(5, 100, Tuple::parse("0,2"), Rat(-1, 10)),
                  std::domain_error);
}

TEST_CASE("census over two-prime survivors collapses to the all-ones vector") {
  auto res = scan(5, 100, Tuple::parse("0,2"), Rat(3, 10));
  std::vector<ConstellationRecord> twins;
  for (const auto& r : res.records)
    if (std::popcount(r.prime_mask) >= 2) twins.push_back(r);
  auto census = pattern_census(twins, 2, Rat(3, 10));
  CHECK(census.distinct == 1);
  CHECK(census.modal == std::vector<u32>{1, 1});
  CHECK(census.modal_count == 7);
  CHECK(census.cap == 9);  // floor(1/c1)^k = 3^2
  CHECK(census.within_cap);
}

TEST_CASE("census cap bounds every observed factor count") {
  auto res = scan(5, 10'000, Tuple::parse("0,2,6"), Rat(1, 10));
  auto census = pattern_census(res.records, 3, Rat(1, 10));
  CHECK(census.within_cap);
  for (const auto& [vec, cnt] : census.histogram) {
    CHECK(cnt > 0);
    for (u32 b : vec) CHECK(b <= 10);  // 1/c1
  }
  u64 total = 0;
  for (const auto& [vec, cnt] : census.histogram) total += cnt;
  CHECK(total == res.counts.survivors);
  CHECK(census.distinct == census.histogram.size());
}

TEST_CASE("consecutive pair check demands prime endpoints and empty interior") {
  PrimeTable t = build_tables(2, 200);
  Tuple H = Tuple::parse("0,2,6");
  CHECK(consecutive_pair_check(5, 0, 1, H, t));        // 5,7
  CHECK(consecutive_pair_check(17, 1, 2, H, t));       // 19,23
  CHECK_FALSE(consecutive_pair_check(11, 0, 2, H, t)); // 11,17 with 13 between
  CHECK_THROWS_AS(consecutive_pair_check(9, 0, 1, H, t),
                  std::domain_error);  // 9 is not prime
}

TEST_CASE("record CSV round-trips exactly") {
  auto res = scan(5, 300, Tuple::parse("0,2,6"), Rat(1, 10));
  std::ostringstream os;
  write_records_csv(os, res.records);
  std::istringstream is(os.str());
  auto back = read_records_csv(is);
  REQUIRE(back.size() == res.records.size());
  for (size_t i = 0; i < back.size(); ++i) {
    CHECK(back[i].n == res.records[i].n);
    CHECK(back[i].component_omegas == res.records[i].component_omegas);
    CHECK(back[i].prime_mask == res.records[i].prime_mask);
    CHECK(back[i].min_pf_ok == res.records[i].min_pf_ok);
    CHECK(back[i].consecutive_pair == res.records[i].consecutive_pair);
  }
}

TEST_CASE("malformed record CSV is rejected") {
  std::istringstream bad1("5,1;1,111,1,-\n");  // mask width 3 for arity 2
  CHECK_THROWS_AS(read_records_csv(bad1), std::domain_error);
  std::istringstream bad2("5,1;1\n");
  CHECK_THROWS_AS(read_records_csv(bad2), std::domain_error);
}

TEST_CASE("pair predicate parsing round-trips") {
  auto p = PairPredicate::parse("omega=4,Omega=5,d=24");
  CHECK(p.omega_equal);
  CHECK(p.omega_target == u32(4));
  CHECK(p.big_omega_equal);
  CHECK(p.big_omega_target == u32(5));
  CHECK(p.divisors_equal);
  CHECK(p.divisors_target == u64(24));
  CHECK_FALSE(p.pattern_equal);
  CHECK(PairPredicate::parse(p.to_string()).to_string() == p.to_string());

  auto d = PairPredicate::parse("d");
  CHECK(d.divisors_equal);
  CHECK_FALSE(d.divisors_target.has_value());

  auto pat = PairPredicate::parse("pattern=2;1;1");
  REQUIRE(pat.pattern_target.has_value());
  CHECK(*pat.pattern_target == std::vector<u32>{2, 1, 1});

  CHECK_THROWS_AS(PairPredicate::parse(""), std::domain_error);
  CHECK_THROWS_AS(PairPredicate::parse("bogus=1"), std::domain_error);
}

TEST_CASE("equal divisor-count pairs start at n=2") {
  auto res = pattern_pair_scan(1000, PairPredicate::parse("d"));
  REQUIRE(res.count > 0);
  CHECK(res.hits.front() == 2);  // d(2) = d(3) = 2
  std::vector<u64> prefix(res.hits.begin(), res.hits.begin() + 6);
  CHECK(prefix == std::vector<u64>{2, 14, 21, 26, 33, 34});
  CHECK(res.count == res.hits.size());
  CHECK(res.reference > 0);
}

TEST_CASE("simultaneous omega, big-omega, divisor pair exists early") {
  auto res =
      pattern_pair_scan(20'000, PairPredicate::parse("omega=4,Omega=5,d=24"));
  REQUIRE_FALSE(res.hits.empty());
  CHECK(res.hits.front() == 11780);  // 2^2*5*19*31 next to 3^2*7*11*17
}

TEST_CASE("pattern equality pairs") {
  // n = 135 = 3^3 * 5 and 136 = 2^3 * 17 share the exponent pattern {3,1}.
  auto res = pattern_pair_scan(200, PairPredicate::parse("pattern=3;1"));
  REQUIRE_FALSE(res.hits.empty());
  CHECK(res.hits.front() == 135);
}

}  // TEST_SUITE
