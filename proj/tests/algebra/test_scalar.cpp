#include <doctest.h>

#include <cmath>

#include "qgenus/error.hpp"
#include "qgenus/scalar.hpp"

using namespace qgenus;

TEST_CASE("roots of unity demote to rationals when possible") {
  CHECK(Scalar::root_of_unity(Rational(0), 6).is_rational());
  CHECK(Scalar::root_of_unity(Rational(0), 6).as_rational() == 1);
  CHECK(Scalar::root_of_unity(rat(1, 2), 2).as_rational() == -1);
  CHECK(Scalar::root_of_unity(rat(3, 2), 4).as_rational() == -1);

  Scalar i = Scalar::root_of_unity(rat(1, 4), 4);
  CHECK(i.is_cyclotomic());
  CHECK((i * i).as_rational() == -1);
}

TEST_CASE("root_of_unity requires a compatible order") {
  CHECK_THROWS_AS(Scalar::root_of_unity(rat(1, 3), 4), error);
}

TEST_CASE("mixed rational and cyclotomic arithmetic") {
  Scalar z = Scalar::root_of_unity(rat(1, 5), 5);
  Scalar half(rat(1, 2));
  Scalar s = z + half;
  CHECK(s.is_cyclotomic());
  Scalar back = s - z;
  CHECK(back.is_rational());
  CHECK(back.as_rational() == rat(1, 2));
  CHECK((z * z.inverse()).as_rational() == 1);
  CHECK(z.pow(5).as_rational() == 1);
  CHECK(z.pow(-3).is_cyclotomic());
}

TEST_CASE("complex backend absorbs rationals") {
  Scalar c(Complex(0.5, 1.0));
  Scalar r(rat(3, 2));
  Scalar s = c * r;
  CHECK(s.is_complex());
  CHECK(approx_equal(s.to_complex(), Complex(0.75, 1.5), 1e-12));
  CHECK(approx_equal((c + r).to_complex(), Complex(2.0, 1.0), 1e-12));
}

TEST_CASE("mixed cyclotomic fields meet in the compositum") {
  Scalar z = Scalar::root_of_unity(rat(1, 5), 5);
  Scalar w = Scalar::root_of_unity(rat(1, 7), 7);
  Scalar p = z * w;
  CHECK(p.is_cyclotomic());
  CHECK(p.cyclotomic().order() == 35);
  CHECK(p == Scalar::root_of_unity(rat(12, 35), 35));
  CHECK(!(z == w));
  CHECK(z == Scalar::root_of_unity(rat(7, 35), 35));
  CHECK(z.pow(5) == Scalar(Rational(1)));
}

TEST_CASE("exact and complex scalars do not mix") {
  Scalar z = Scalar::root_of_unity(rat(1, 5), 5);
  Scalar c(Complex(1.0, 0.0));
  CHECK_THROWS_AS((void)(z * c), error);
  CHECK_THROWS_AS((void)(Scalar(Rational(1)) == c), error);
}

TEST_CASE("equality uses canonical demotion") {
  Scalar z = Scalar::root_of_unity(rat(1, 3), 3);
  Scalar sum = z + z.pow(2);
  CHECK(sum.is_rational());
  CHECK(sum == Scalar(Rational(-1)));
  CHECK(!(z == Scalar(Rational(0))));
}

TEST_CASE("pow by squaring matches repeated products") {
  Scalar z = Scalar::root_of_unity(rat(1, 12), 12);
  Scalar acc = Scalar::one();
  for (int k = 0; k < 7; ++k) acc = acc * z;
  CHECK(acc == z.pow(7));
}
