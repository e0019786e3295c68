#include <doctest.h>

#include <cmath>
#include <complex>

#include "qgenus/cyclotomic.hpp"
#include "qgenus/error.hpp"

using namespace qgenus;

namespace {

Cyclotomic zeta(long order) { return Cyclotomic::root_power(order, 1); }

}  // namespace

TEST_CASE("twelfth cyclotomic polynomial") {
  const auto& phi = cyclotomic_poly(12);
  CHECK(phi == std::vector<Int>{1, 0, -1, 0, 1});
}

TEST_CASE("low-order cyclotomic polynomials") {
  CHECK(cyclotomic_poly(1) == std::vector<Int>{-1, 1});
  CHECK(cyclotomic_poly(2) == std::vector<Int>{1, 1});
  CHECK(cyclotomic_poly(4) == std::vector<Int>{1, 0, 1});
  CHECK(cyclotomic_poly(6) == std::vector<Int>{1, -1, 1});
  CHECK(cyclotomic_poly(9) == std::vector<Int>{1, 0, 0, 1, 0, 0, 1});
}

TEST_CASE("primitive root satisfies its minimal polynomial") {
  for (long d = 1; d <= 24; ++d) {
    const auto& phi = cyclotomic_poly(d);
    Cyclotomic acc = Cyclotomic::constant(d, Rational(0));
    for (size_t k = 0; k < phi.size(); ++k)
      acc = acc + Cyclotomic::root_power(d, static_cast<long>(k)).scaled(Rational(phi[k]));
    CHECK(acc.is_zero());
  }
}

TEST_CASE("root powers wrap around the full order") {
  Cyclotomic z = zeta(5);
  Cyclotomic p = Cyclotomic::constant(5, Rational(1));
  for (int k = 0; k < 5; ++k) p = p * z;
  CHECK(p == Cyclotomic::root_power(5, 5));
  CHECK(p.is_rational());
  CHECK(p.rational_part() == 1);
}

TEST_CASE("sum of all order-n roots vanishes") {
  for (long d : {3L, 4L, 5L, 8L, 12L}) {
    Cyclotomic acc = Cyclotomic::constant(d, Rational(0));
    for (long k = 0; k < d; ++k) acc = acc + Cyclotomic::root_power(d, k);
    CHECK(acc.is_zero());
  }
}

TEST_CASE("field inverse via extended euclid") {
  for (long d : {3L, 5L, 7L, 8L, 12L}) {
    Cyclotomic a = zeta(d) + Cyclotomic::constant(d, rat(2, 3));
    Cyclotomic b = a.inverse();
    Cyclotomic p = a * b;
    CHECK(p.is_rational());
    CHECK(p.rational_part() == 1);
  }
  CHECK_THROWS_AS(Cyclotomic::constant(5, Rational(0)).inverse(), error);
}

TEST_CASE("numeric embedding hits the unit circle") {
  for (long d : {3L, 7L, 12L}) {
    std::complex<double> z = zeta(d).to_complex();
    double angle = 8.0 * std::atan(1.0) / static_cast<double>(d);
    CHECK(std::abs(z - std::polar(1.0, angle)) < 1e-12);
  }
}

TEST_CASE("rational detection after cancellation") {
  Cyclotomic z = zeta(4);
  Cyclotomic sq = z * z;
  CHECK(sq.is_rational());
  CHECK(sq.rational_part() == -1);
  Cyclotomic diff = z - z;
  CHECK(diff.is_zero());
  CHECK(!z.is_rational());
  CHECK_THROWS_AS(z.rational_part(), error);
}

TEST_CASE("embedding into a larger field preserves the value") {
  // zeta_3 = zeta_6^2, coordinates rewritten mod the degree-2 polynomial
  Cyclotomic up = zeta(3).embedded(6);
  CHECK(up.order() == 6);
  CHECK(up == Cyclotomic::root_power(6, 2));
  CHECK(std::abs(up.to_complex() - zeta(3).to_complex()) < 1e-12);

  Cyclotomic mixed = zeta(4) + Cyclotomic::constant(4, rat(1, 2));
  Cyclotomic lift = mixed.embedded(12);
  CHECK(std::abs(lift.to_complex() - mixed.to_complex()) < 1e-12);
  CHECK(lift.embedded(12) == lift);
  CHECK_THROWS_AS(zeta(4).embedded(6), error);
}
