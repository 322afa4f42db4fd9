// Gap spectra, exact density bounds, weak versus strong pair counts.
#include <doctest.h>

#include "primelab/polignac.hpp"
#include "primelab/primes.hpp"

using namespace primelab;

TEST_SUITE("polignac") {

TEST_CASE("spectrum at one hundred matches the classic counts") {
  auto s = gap_spectrum(100);
  CHECK(s.prime_count == 25);
  CHECK(s.pairs_total == 24);
  CHECK(s.max_gap == 8);
  CHECK(s.counts.at(1) == 1);  // (2, 3)
  CHECK(s.counts.at(2) == 8);
  CHECK(s.counts.at(4) == 7);
  CHECK(s.counts.at(6) == 7);
  CHECK(s.counts.at(8) == 1);  // (89, 97)
}

TEST_CASE("pair total always equals prime count minus one") {
  for (u64 limit : {3ull, 10ull, 1000ull, 99'991ull}) {
    auto s = gap_spectrum(limit);
    u64 total = 0;
    for (auto& [g, c] : s.counts) total += c;
    CHECK(total == s.pairs_total);
    CHECK(s.pairs_total == s.prime_count - 1);
  }
}

TEST_CASE("tiny limits") {
  auto s = gap_spectrum(3);
  CHECK(s.prime_count == 2);
  CHECK(s.counts.at(1) == 1);
  CHECK_THROWS_AS(gap_spectrum(2), std::domain_error);
}

TEST_CASE("density bound exact values") {
  auto b2 = polignac_lower_bound(2);
  CHECK(b2.bound == Rat(1, 4));  // phi(2)/(2*2*1)
  auto b6 = polignac_lower_bound(6);
  CHECK(b6.bound == Rat(2, 225));  // phi(30)/(30*6*5) = 8/900
  CHECK(b6.bound_value == doctest::Approx(0.008888888889));
  // doubling covers gaps realized as differences of two tuple entries
  double doubled = 2 * b6.bound_value;
  CHECK(doubled > 0.0177);
  CHECK(doubled < 0.0178);
  CHECK_THROWS_AS(polignac_lower_bound(1), std::domain_error);
}

TEST_CASE("bound tracks its large-k comparator") {
  for (u64 k : {6ull, 10ull, 50ull, 200ull}) {
    auto b = polignac_lower_bound(k);
    CHECK(b.asymptotic > 0);
    CHECK(b.ratio == doctest::Approx(b.bound_value / b.asymptotic));
    CHECK(b.ratio > 0.5);
    CHECK(b.ratio < 2.0);
  }
}

TEST_CASE("weak and strong pair counts at one thousand") {
  auto s = weak_strong_summary(1000, 6);
  REQUIRE(s.rows.size() == 3);
  CHECK(s.rows[0].d == 2);
  CHECK(s.rows[0].weak == 35);
  CHECK(s.rows[0].strong == 35);  // gap two pairs are always consecutive
  CHECK(s.rows[1].d == 4);
  CHECK(s.rows[1].weak == 41);
  CHECK(s.rows[1].strong == 40);  // (3, 7) straddles 5
  CHECK(s.rows[2].d == 6);
  CHECK(s.rows[2].weak == 74);
  CHECK(s.rows[2].strong == 44);
}

TEST_CASE("weak dominates strong and twins equal the spectrum") {
  auto s = weak_strong_summary(10'000, 12);
  auto spec = gap_spectrum(10'000);
  for (const auto& row : s.rows) {
    CHECK(row.strong <= row.weak);
    u64 in_spectrum = spec.counts.count(row.d) ? spec.counts.at(row.d) : 0;
    CHECK(row.strong == in_spectrum);
  }
  CHECK(s.rows[0].weak == s.rows[0].strong);
}

TEST_CASE("summary preconditions and degenerate width") {
  CHECK_THROWS_AS(weak_strong_summary(99, 6), std::domain_error);
  CHECK(weak_strong_summary(1000, 0).rows.empty());
  CHECK(weak_strong_summary(1000, 1).rows.empty());
}

}  // TEST_SUITE
