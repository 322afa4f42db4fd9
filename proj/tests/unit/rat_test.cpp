// Exact rational parsing, printing, and combinatorial helpers.
#include <doctest.h>

#include "primelab/rat.hpp"

using namespace primelab;

TEST_SUITE("rat") {

TEST_CASE("factorials and binomials are exact") {
  CHECK(factorial_int(0) == 1);
  CHECK(factorial_int(5) == 120);
  CHECK(factorial_int(20) == Int("2432902008176640000"));
  CHECK(binomial_int(2, 1) == 2);
  CHECK(binomial_int(4, 2) == 6);
  CHECK(binomial_int(40, 20) == Int("137846528820"));
  CHECK(binomial_int(3, 7) == 0);
}

TEST_CASE("rational round-trips through the canonical string form") {
  CHECK(rat_to_string(Rat(21, 20)) == "21/20");
  CHECK(rat_to_string(Rat(4, 2)) == "2");
  CHECK(rat_to_string(Rat(-6, 8)) == "-3/4");
  CHECK(rat_from_string("21/20") == Rat(21, 20));
  CHECK(rat_from_string("-3/4") == Rat(-3, 4));
  Rat big(123456789, 987654321);
  big.canonicalize();  // mpq two-arg construction does not reduce
  CHECK(rat_from_string(rat_to_string(big)) == big);
}

TEST_CASE("decimals parse exactly as digits over a power of ten") {
  CHECK(rat_from_string("0.95") == Rat(19, 20));
  CHECK(rat_from_string("0.3") == Rat(3, 10));
  CHECK(rat_from_string("-1.25") == Rat(-5, 4));
  CHECK(rat_from_string("2") == Rat(2));
  CHECK(rat_from_string("0.95") != Rat(20, 21));  // not the nearby fraction
}

TEST_CASE("bad literals are rejected") {
  CHECK_THROWS_AS(rat_from_string(""), std::domain_error);
  CHECK_THROWS_AS(rat_from_string("abc"), std::domain_error);
  CHECK_THROWS_AS(rat_from_string("1/0"), std::domain_error);
  CHECK_THROWS_AS(rat_from_string("1.2.3"), std::domain_error);
  CHECK_THROWS_AS(rat_from_string("."), std::domain_error);
}

TEST_CASE("ceiling of positive rationals") {
  CHECK(rat_ceil(Rat(7, 2)) == 4);
  CHECK(rat_ceil(Rat(8, 2)) == 4);
  CHECK(rat_ceil(Rat(1, 1000)) == 1);
}

}  // TEST_SUITE
