#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdint>

#include "massforge/exactnum.hpp"

using namespace massforge;

TEST_CASE("rational parsing and printing") {
  CHECK(rat_string(Rat(5, 3)) == "5/3");
  CHECK(rat_string(Rat(-4, 2)) == "-2");
  CHECK(rat_string(Rat(0)) == "0");
  CHECK(parse_rat("5/3") == Rat(5, 3));
  CHECK(parse_rat("-7/21") == Rat(-1, 3));
  CHECK(parse_rat("42") == Rat(42));
  CHECK(parse_rat(" -3 / 9 ") == Rat(-1, 3));
  CHECK(parse_int("123456789123456789") ==
        Integer("123456789123456789"));
  CHECK_THROWS_AS(parse_rat("x"), SchemaError);
  CHECK_THROWS_AS(parse_rat("1/0"), SchemaError);
  CHECK_THROWS_AS(parse_rat(""), SchemaError);
}

TEST_CASE("integer square roots") {
  CHECK(isqrt_floor(Integer(0)) == 0);
  CHECK(isqrt_floor(Integer(15)) == 3);
  CHECK(isqrt_floor(Integer(16)) == 4);
  CHECK(isqrt_floor(Integer(17)) == 4);
  // 10^30: sqrt is 10^15
  Integer big = Integer("1000000000000000000000000000000");
  CHECK(isqrt_floor(big) == Integer("1000000000000000"));
  CHECK(isqrt_floor(big - 1) == Integer("999999999999999"));

  for (long n = 0; n < 500; ++n) {
    Integer r = isqrt_floor(Integer(n));
    CHECK(r * r <= n);
    CHECK((r + 1) * (r + 1) > n);
  }
}

TEST_CASE("exact square roots of rationals") {
  CHECK(try_exact_sqrt(Rat(49, 64)).value() == Rat(7, 8));
  CHECK(try_exact_sqrt(Rat(0)).value() == Rat(0));
  CHECK(!try_exact_sqrt(Rat(2)).has_value());
  CHECK(!try_exact_sqrt(Rat(-4)).has_value());
  CHECK(!try_exact_sqrt(Rat(1, 3)).has_value());
  CHECK(exact_sqrt(Rat(225, 4)) == Rat(15, 2));
  CHECK_THROWS_AS(exact_sqrt(Rat(3)), DomainError);
  CHECK(try_exact_sqrt_int(Integer("152415787532388367501905199875019052100"))
            .value() == Integer("12345678901234567890"));
}

TEST_CASE("primality") {
  CHECK(is_prime_u64(Integer(2)));
  CHECK(is_prime_u64(Integer(3)));
  CHECK(!is_prime_u64(Integer(1)));
  CHECK(!is_prime_u64(Integer(0)));
  CHECK(!is_prime_u64(Integer(561)));   // Carmichael
  CHECK(!is_prime_u64(Integer(41041)));  // Carmichael
  CHECK(is_prime_u64(Integer("2305843009213693951")));  // 2^61 - 1
  CHECK(!is_prime_u64(Integer(7919) * 7927));
  long primes = 0;
  for (long n = 2; n < 100; ++n)
    if (is_prime_u64(Integer(n))) ++primes;
  CHECK(primes == 25);
}

TEST_CASE("factorization") {
  auto f = factor_integer(Integer(360));
  CHECK(f.sign == 1);
  CHECK(f.powers.size() == 3);
  CHECK(f.powers.at(Integer(2)) == 3);
  CHECK(f.powers.at(Integer(3)) == 2);
  CHECK(f.powers.at(Integer(5)) == 1);
  CHECK(f.value() == Rat(360));
  CHECK(f.to_string() == "2^3 * 3^2 * 5");

  auto g = factor_rational(Rat(-8, 45));
  CHECK(g.sign == -1);
  CHECK(g.powers.at(Integer(2)) == 3);
  CHECK(g.powers.at(Integer(3)) == -2);
  CHECK(g.powers.at(Integer(5)) == -1);
  CHECK(g.value() == Rat(-8, 45));
  CHECK(g.inverse().value() == Rat(-45, 8));
  auto h = g;
  h *= g.inverse();
  CHECK(h.value() == Rat(1));

  CHECK(factor_integer(Integer(1)).is_one());
  CHECK(factor_integer(Integer(0)).sign == 0);
  // Large prime cofactor above the trial bound, still word-sized: fine.
  CHECK(factor_integer(Integer("2305843009213693951")).powers.size() == 1);
}

TEST_CASE("valuations") {
  CHECK(valuation_int(Integer(2), Integer(48)) == 4);
  CHECK(valuation_int(Integer(3), Integer(48)) == 1);
  CHECK(valuation_int(Integer(5), Integer(48)) == 0);
  CHECK(valuation_rat(Integer(2), Rat(3, 8)) == -3);
  CHECK(valuation_rat(Integer(3), Rat(9, 2)) == 2);
  CHECK(valuation_rat(Integer(7), Rat(-7)) == 1);
}
