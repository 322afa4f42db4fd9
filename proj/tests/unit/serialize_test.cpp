// JSON and CSV emitters: stable shapes, 12-digit floats, quoting, manifests.
#include <doctest.h>

#include <nlohmann/json.hpp>
#include <sstream>
#include <string>
#include <vector>

#include "primelab/params.hpp"
#include "primelab/polignac.hpp"
#include "primelab/scanner.hpp"
#include "primelab/serialize.hpp"
#include "primelab/tuples.hpp"

using namespace primelab;
using nlohmann::json;

TEST_SUITE("serialize") {

TEST_CASE("doubles are printed with at most twelve significant digits") {
  CHECK(format_double(0.5) == "0.5");
  CHECK(format_double(1.0 / 3.0) == "0.333333333333");
  CHECK(format_double(123456789012345.0) == "1.23456789012e+14");
  CHECK(format_double(0.0) == "0");
}

TEST_CASE("csv fields are quoted per RFC 4180") {
  CHECK(csv_field("plain") == "plain");
  CHECK(csv_field("with,comma") == "\"with,comma\"");
  CHECK(csv_field("say \"hi\"") == "\"say \"\"hi\"\"\"");
  CHECK(csv_field("line\nbreak") == "\"line\nbreak\"");
}

TEST_CASE("payloads parse as JSON with the documented keys") {
  auto j = json::parse(json_crucial(7, 1, Rat(1), crucial_lhs(7, 1, Rat(1))));
  CHECK(j["lhs"] == "21/20");
  CHECK(j["pass"] == true);

  auto b = json::parse(json_polignac_bound(polignac_lower_bound(6)));
  CHECK(b["bound"] == "2/225");
  CHECK(b["k"] == 6);

  Tuple t = Tuple::parse("0,2,4");
  auto a = json::parse(json_admissibility(t, is_admissible(t)));
  CHECK(a["admissible"] == false);
  CHECK(a["covering_prime"] == 3);

  auto s = json::parse(
      json_singular_series(Tuple::parse("0,2"),
                           singular_series(Tuple::parse("0,2"), 100'000),
                           singular_series_lower_bound(2, 100'000).value));
  CHECK(s["vanishes"] == false);
  CHECK(s.contains("bracket_lo"));
  CHECK(s.contains("bracket_hi"));
}

TEST_CASE("payloads are stable under a parse and re-dump cycle") {
  auto payload = json_gap_spectrum(gap_spectrum(10'000));
  auto j = json::parse(payload);
  CHECK(j["prime_count"] == 1229);
  // floats were rounded before insertion, so nlohmann's shortest-round-trip
  // printing reproduces the exact same literals
  CHECK(json::parse(j.dump()) == j);
  auto b = json_polignac_bound(polignac_lower_bound(6));
  auto ob = nlohmann::ordered_json::parse(b);
  CHECK(json::parse(b) == json::parse(ob.dump()));
  // emitter writes fields in documented order, not alphabetically
  std::vector<std::string> keys;
  for (auto it = ob.begin(); it != ob.end(); ++it) keys.push_back(it.key());
  CHECK(keys == std::vector<std::string>{"k", "bound", "bound_value",
                                         "asymptotic", "ratio"});
}

TEST_CASE("scan counts and census emitters") {
  auto res = scan(5, 100, Tuple::parse("0,2"), Rat(3, 10));
  auto j = json::parse(
      json_scan_counts(5, 100, Tuple::parse("0,2"), Rat(3, 10), res.counts));
  CHECK(j["two_prime"] == 7);
  CHECK(j["c1"] == "3/10");

  auto census = pattern_census(res.records, 2, Rat(3, 10));
  auto cj = json::parse(json_census(census));
  CHECK(cj["cap"] == 9);
  CHECK(cj["histogram"].contains("1;1"));

  std::ostringstream os;
  write_census_csv(os, census);
  CHECK(os.str().substr(0, 14) == "pattern,count\n");
}

TEST_CASE("weak strong CSV layout") {
  auto s = weak_strong_summary(1000, 4);
  std::ostringstream os;
  write_weak_strong_csv(os, s);
  std::istringstream is(os.str());
  std::string line;
  std::getline(is, line);
  CHECK(line == "gap,weak_count,strong_count");
  std::getline(is, line);
  CHECK(line == "2,35,35");
  std::getline(is, line);
  CHECK(line == "4,41,40");
}

TEST_CASE("minimal-k grid CSV layout") {
  std::vector<std::pair<Rat, MinimalKResult>> rows = {
      {Rat(1), minimal_k(Rat(1), 50)},
      {Rat(1, 2), minimal_k(Rat(1, 2), 50)},
  };
  std::ostringstream os;
  write_mink_grid_csv(os, rows);
  std::istringstream is(os.str());
  std::string line;
  std::getline(is, line);
  CHECK(line == "theta,k,l,lhs");
  std::getline(is, line);
  CHECK(line == "1,7,1,21/20");
  std::getline(is, line);
  CHECK(line == "1/2,,,");  // no solution row keeps the column count
}

TEST_CASE("manifest carries command, params, and the determinism flag") {
  auto j = json::parse(manifest_json(
      "scan run", {{"lo", "5"}, {"hi", "100"}}, 0.25));
  CHECK(j["command"] == "scan run");
  CHECK(j["params"]["lo"] == "5");
  CHECK(j["deterministic"] == true);
  CHECK(j["tool_version"] == "0.1.0");
  CHECK(j["wall_time_s"] == doctest::Approx(0.25));
}

}  // TEST_SUITE
