#include <doctest.h>

#include "qgenus/error.hpp"
#include "qgenus/rational.hpp"

using namespace qgenus;

TEST_CASE("frac_mod1 lands in [0,1)") {
  CHECK(frac_mod1(rat(7, 3)) == rat(1, 3));
  CHECK(frac_mod1(rat(-1, 4)) == rat(3, 4));
  CHECK(frac_mod1(Rational(5)) == 0);
  CHECK(frac_mod1(rat(-9, 2)) == rat(1, 2));
}

TEST_CASE("mod_period reduces into [0,p)") {
  CHECK(mod_period(rat(5, 6), rat(1, 3)) == rat(1, 6));
  CHECK(mod_period(rat(-1, 12), rat(1, 4)) == rat(1, 6));
  CHECK(mod_period(Rational(3), Rational(2)) == 1);
}

TEST_CASE("pow_rat handles negative exponents") {
  CHECK(pow_rat(rat(2, 3), 3) == rat(8, 27));
  CHECK(pow_rat(rat(2, 3), -2) == rat(9, 4));
  CHECK(pow_rat(rat(5, 7), 0) == 1);
  CHECK_THROWS_AS(pow_rat(Rational(0), -1), error);
}

TEST_CASE("parse_rational round trips") {
  CHECK(parse_rational("3/4") == rat(3, 4));
  CHECK(parse_rational("-12") == Rational(-12));
  CHECK(parse_rational("6/4") == rat(3, 2));
  CHECK_THROWS_AS(parse_rational("1/0"), error);
  CHECK_THROWS_AS(parse_rational("x"), error);
  CHECK(rat_str(rat(-3, 7)) == "-3/7");
  CHECK(rat_str(Rational(5)) == "5");
}

TEST_CASE("rat_floor rounds toward minus infinity") {
  CHECK(rat_floor(rat(7, 2)) == 3);
  CHECK(rat_floor(rat(-7, 2)) == -4);
  CHECK(rat_floor(Rational(4)) == 4);
}
