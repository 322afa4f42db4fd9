// Residue contexts, the squared-weight measure, difference products, AP search.
#include <doctest.h>

#include <cmath>
#include <numeric>
#include <vector>

#include "primelab/greentao.hpp"
#include "primelab/primes.hpp"
#include "primelab/weights.hpp"

using namespace primelab;

namespace {

// Independent enumeration of the residue set by direct gcd over [0, W).
std::vector<u64> brute_residues(u64 W, const Tuple& t) {
  std::vector<u64> out;
  for (u64 b = 0; b < W; ++b) {
    bool ok = true;
    for (u64 a : t.offsets())
      if (std::gcd(b + a, W) != 1) {
        ok = false;
        break;
      }
    if (ok) out.push_back(b);
  }
  return out;
}

}  // namespace

TEST_SUITE("greentao") {

TEST_CASE("residue sets match brute-force gcd enumeration up to w=13") {
  for (u64 w : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull}) {
    for (const char* spec : {"0", "0,2", "0,2,6", "0,4,6,10,12,16"}) {
      Tuple t = Tuple::parse(spec);
      auto ctx = build_wtrick(w, t);
      CHECK(ctx.residues == brute_residues(ctx.W, t));
      CHECK(Int(static_cast<unsigned long>(ctx.residues.size())) ==
            ctx.cardinality);
    }
  }
}

TEST_CASE("known residue contexts") {
  auto ctx = build_wtrick(5, Tuple::parse("0,2"));
  CHECK(ctx.W == 30);
  CHECK(ctx.residues == std::vector<u64>{11, 17, 29});
  CHECK(ctx.cardinality == 3);
  CHECK(ctx.phi_ratio == Rat(4, 15));  // phi(30)/30
  CHECK(ctx.contains(11));
  CHECK_FALSE(ctx.contains(10));

  CHECK(build_wtrick(2, Tuple::parse("0")).residues == std::vector<u64>{1});
  CHECK(build_wtrick(7, Tuple::parse("0,2,6")).cardinality == 8);
}

TEST_CASE("enumerated size equals the per-prime product through w=23") {
  for (u64 w : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull}) {
    for (const char* spec : {"0,2", "0,2,6", "0,4,6,10,12,16"}) {
      auto ctx = build_wtrick(w, Tuple::parse(spec));
      CHECK(Int(static_cast<unsigned long>(ctx.residues.size())) ==
            ctx.cardinality);
      for (u64 b : ctx.residues) CHECK(ctx.contains(b));
    }
  }
}

TEST_CASE("tuples covered below w yield the empty context") {
  auto ctx = build_wtrick(5, Tuple::parse("0,2,4"));  // covered mod 3
  CHECK(ctx.cardinality == 0);
  CHECK(ctx.residues.empty());
}

TEST_CASE("w domain is enforced") {
  CHECK_THROWS_AS(build_wtrick(1, Tuple::parse("0,2")), std::domain_error);
  CHECK_THROWS_AS(build_wtrick(53, Tuple::parse("0,2")), std::domain_error);
}

TEST_CASE("calibration picks the residue with the most prime hits") {
  auto ctx = build_wtrick(5, Tuple::parse("0,2"));
  auto cal = choose_b(ctx, 50);
  CHECK(cal.n_max == 50);
  CHECK(cal.b == 11);
  CHECK(cal.hits == 19);
  // independent recount for the winning residue
  PrimeTable t = build_tables(2, 30 * 51 + 2);
  u64 manual = 0;
  for (u64 n = 1; n <= 50; ++n)
    if (t.is_prime(30 * n + 11) && t.is_prime(30 * n + 13)) ++manual;
  CHECK(manual == cal.hits);
}

TEST_CASE("measure is one outside the window and collapses when R < 2") {
  auto ctx = build_wtrick(3, Tuple::parse("0,2"));
  MeasureParams mp;
  mp.b = 5;
  mp.N = 10'000;
  mp.R = 1.5;
  CHECK(mp.lo() == 2500);
  CHECK(mp.hi() == 5000);
  CHECK(nu_measure(ctx, mp, 100) == 1.0);
  CHECK(nu_measure(ctx, mp, 5001) == 1.0);
  double expect = std::pow(rat_to_double(ctx.phi_ratio) * std::log(1.5), 2);
  for (u64 n : {2500ull, 3000ull, 5000ull})
    CHECK(nu_measure(ctx, mp, n) == doctest::Approx(expect).epsilon(1e-12));
}

TEST_CASE("pointwise measure value against per-component divisor sums") {
  auto ctx = build_wtrick(3, Tuple::parse("0,2"));
  MeasureParams mp;
  mp.b = 5;
  mp.N = 10'000;
  mp.R = 10;
  // 6*3000+5 = 18005 = 5*13*277 and 18007 = 11*1637
  double phid = rat_to_double(ctx.phi_ratio);
  double want = (phid * std::pow(truncated_von_mangoldt(18005, 10), 2) /
                 std::log(10.0)) *
                (phid * std::pow(truncated_von_mangoldt(18007, 10), 2) /
                 std::log(10.0));
  CHECK(nu_measure(ctx, mp, 3000) == doctest::Approx(want).epsilon(1e-12));
  CHECK(nu_measure(ctx, mp, 3000) == doctest::Approx(0.287810043776));
}

TEST_CASE("measure equals its clean-component closed form to 1e-9") {
  auto ctx = build_wtrick(3, Tuple::parse("0,2"));
  MeasureParams mp;
  mp.b = 5;
  mp.N = 10'000;
  mp.R = 10;
  PrimeTable t = build_tables(2, 6 * 5001 + 2);
  double clean = std::pow(rat_to_double(ctx.phi_ratio) * std::log(10.0), 2);
  u64 checked = 0;
  for (u64 n = mp.lo(); n <= mp.hi() && checked < 25; ++n) {
    bool coprime_small = true;
    for (u64 a : ctx.tuple.offsets()) {
      u64 v = 6 * n + 5 + a;
      for (u64 p : {2ull, 3ull, 5ull, 7ull})
        if (v % p == 0) coprime_small = false;
    }
    if (!coprime_small) continue;
    ++checked;
    double got = nu_measure(ctx, mp, n);
    CHECK(std::abs(got - clean) / clean < 1e-9);
  }
  CHECK(checked == 25);  // plenty of clean points exist in the window
}

TEST_CASE("expectation drifts toward one as N grows") {
  auto ctx = build_wtrick(3, Tuple::parse("0,2"));
  MeasureParams small;
  small.b = 5;
  small.N = 10'000;
  small.R = std::pow(double(small.N), 0.05);
  auto at4 = expectation_nu(ctx, small);
  CHECK(at4.constant_regime);
  CHECK(at4.mean == doctest::Approx(0.7557933543).epsilon(1e-9));
  CHECK(at4.deviation == doctest::Approx(1 - at4.mean));

  MeasureParams big;
  big.b = 5;
  big.N = 1'000'000;
  big.R = std::pow(double(big.N), 0.05);
  auto at6 = expectation_nu(ctx, big);
  CHECK(at6.mean == doctest::Approx(0.763253798295).epsilon(1e-9));
  CHECK(at6.deviation <= at4.deviation);
}

TEST_CASE("expectation in the evaluated regime stays near one") {
  auto ctx = build_wtrick(3, Tuple::parse("0,2"));
  MeasureParams mp;
  mp.b = 5;
  mp.N = 10'000;
  mp.R = 10;
  auto rep = expectation_nu(ctx, mp);
  CHECK_FALSE(rep.constant_regime);
  CHECK(rep.window_count == 2501);
  CHECK(rep.mean == doctest::Approx(0.857061540028).epsilon(1e-9));
}

TEST_CASE("window too small is refused") {
  auto ctx = build_wtrick(3, Tuple::parse("0,2"));
  MeasureParams mp;
  mp.b = 5;
  mp.N = 10'000;
  mp.R = 10;
  mp.window_lo = 2000;
  mp.window_hi = 2500;  // 501 < 1000 members
  CHECK_THROWS_AS(expectation_nu(ctx, mp), std::domain_error);
}

TEST_CASE("domination holds on almost-prime survivors in a desk window") {
  auto ctx = build_wtrick(3, Tuple::parse("0,2"));
  MeasureParams mp;
  mp.b = 5;
  mp.N = 10'000;
  mp.R = 10;
  auto rep = domination_check(ctx, mp, 3, Rat(1, 10));
  CHECK(rep.window_members > 0);
  CHECK(rep.holds);
  CHECK(rep.min_ratio >= 1.0);
  CHECK(rep.worst_n >= mp.lo());
  CHECK(rep.worst_n <= mp.hi());
  // spot check the bound at the reported worst point
  double bound = std::pow(
      lambda_tilde(ctx, mp.b, rep.worst_n) / (3.0 * std::pow(2.0, 8)), 2);
  CHECK(nu_measure(ctx, mp, rep.worst_n) >=
        doctest::Approx(bound * rep.min_ratio).epsilon(1e-9));
}

TEST_CASE("comparison weight formula") {
  auto ctx = build_wtrick(3, Tuple::parse("0,2"));
  CHECK(lambda_tilde(ctx, 5, 3000) ==
        doctest::Approx(rat_to_double(ctx.phi_ratio) * std::log(18005.0)));
}

TEST_CASE("difference product known values") {
  std::vector<i64> h01 = {0, 1};
  auto d = delta_product(h01, Tuple::parse("0,2"), 30);
  CHECK(d.value == 32);
  CHECK(d.abs_value == 32);
  CHECK(d.sign == 1);

  std::vector<i64> h012 = {0, 1, 2};
  auto e = delta_product(h012, Tuple::parse("0,2"), 6);
  CHECK(e.value == 1792);  // (-2) * (-8)(-14)(-8)

  std::vector<i64> dup = {0, 0};
  CHECK_THROWS_AS(delta_product(dup, Tuple::parse("0,2"), 6),
                  std::domain_error);
}

TEST_CASE("difference product is nonzero whenever offsets are distinct") {
  std::vector<i64> h = {0, 3, 7};
  for (u64 W : {2ull, 6ull, 30ull}) {
    auto d = delta_product(h, Tuple::parse("0,2,6"), W);
    CHECK(d.value != 0);
    CHECK(d.abs_value > 0);
    CHECK((d.sign == 1 || d.sign == -1));
  }
}

TEST_CASE("AP finder lists every progression of the requested length") {
  std::vector<u64> anchors = {5, 11, 17, 29, 41, 59, 71};
  auto r3 = find_aps(anchors, 3);
  REQUIRE_FALSE(r3.aps.empty());
  CHECK(r3.aps.front().start == 5);
  CHECK(r3.aps.front().step == 6);
  CHECK(r3.aps.front().length == 3);
  for (const auto& ap : r3.aps) {
    for (u64 m : ap.members())
      CHECK(std::find(anchors.begin(), anchors.end(), m) != anchors.end());
  }

  auto r1 = find_aps(anchors, 1);
  CHECK(r1.aps.size() == anchors.size());
  CHECK(r1.aps.front().step == 0);
  CHECK(r1.aps.front().length == 1);
}

TEST_CASE("AP finder respects the record cap") {
  std::vector<u64> anchors = {1, 2, 3, 4, 5, 6};
  auto r = find_aps(anchors, 2, 3);
  CHECK(r.truncated);
  CHECK(r.aps.size() == 3);
  CHECK(r.cap == 3);
}

TEST_CASE("AP finder demands strictly ascending anchors") {
  std::vector<u64> bad = {5, 5, 11};
  CHECK_THROWS_AS(find_aps(bad, 2), std::domain_error);
  std::vector<u64> unsorted = {11, 5};
  CHECK_THROWS_AS(find_aps(unsorted, 2), std::domain_error);
}

}  // TEST_SUITE
