#include <doctest.h>

#include <cmath>

#include "qgenus/error.hpp"
#include "qgenus/qseries.hpp"

using namespace qgenus;

namespace {

QSeries q_power(long num, long den = 1) {
  return QSeries::monomial(Scalar::one(), rat(num, den));
}

}  // namespace

TEST_CASE("geometric series by inversion") {
  QSeries f = QSeries::one() - q_power(1);
  QSeries g = f.inverse(QOrder::at(Rational(10)));
  CHECK(g.order() == QOrder::at(Rational(10)));
  for (long k = 0; k <= 10; ++k) CHECK(g.coefficient(Rational(k)).as_rational() == 1);
  QSeries prod = f * g;
  CHECK(prod.coefficient(Rational(0)).as_rational() == 1);
  for (long k = 1; k <= 10; ++k) CHECK(prod.coefficient(Rational(k)).is_zero());
}

TEST_CASE("inverse of a series with a pole shift") {
  /* q^-1 * unit: order drops by twice the lowest exponent. */
  QSeries f = (q_power(-1) + QSeries::one() + q_power(1)).with_order(QOrder::at(Rational(5)));
  QSeries g = f.inverse();
  CHECK(g.order() == QOrder::at(Rational(7)));
  CHECK(g.lowest_exponent().value() == 1);
  QSeries prod = f * g;
  CHECK(prod.coefficient(Rational(0)).as_rational() == 1);
  for (long k = 1; k <= 5; ++k) CHECK(prod.coefficient(Rational(k)).is_zero());
}

TEST_CASE("monomial reciprocals stay exact") {
  QSeries m = QSeries::monomial(Scalar(rat(2, 3)), rat(5, 6));
  QSeries r = m.inverse();
  CHECK(!r.order().finite);
  CHECK(r.coefficient(rat(-5, 6)).as_rational() == rat(3, 2));
  CHECK(QSeries::one().inverse() == QSeries::one());
  CHECK_THROWS_AS(QSeries::zero().inverse(), error);
  /* Exact multi-term series need an explicit target order. */
  CHECK_THROWS_AS((QSeries::one() - q_power(1)).inverse(), error);
}

TEST_CASE("product order accounts for negative lowest exponents") {
  QSeries a = QSeries::one().with_order(QOrder::at(Rational(3)));
  QSeries b = q_power(-1);
  QSeries ab = a * b;
  CHECK(ab.order() == QOrder::at(Rational(2)));
  QSeries c = q_power(2);
  CHECK((a * c).order() == QOrder::at(Rational(3)));
}

TEST_CASE("shift moves the validity window") {
  QSeries a = (QSeries::one() + q_power(1)).with_order(QOrder::at(Rational(3)));
  QSeries s = a.shifted(Rational(2));
  CHECK(s.order() == QOrder::at(Rational(5)));
  CHECK(s.coefficient(Rational(2)).as_rational() == 1);
  QSeries back = s.shifted(Rational(-2));
  CHECK(back == a);
}

TEST_CASE("rational exponents share a rebased lattice") {
  QSeries p = q_power(1, 3) * q_power(1, 4);
  CHECK(p.coefficient(rat(7, 12)).as_rational() == 1);
  CHECK(p.normalized().denom() == 12);
  QSeries s = q_power(1, 3) + q_power(2, 3);
  CHECK(s.normalized().denom() == 3);
}

TEST_CASE("truncation prunes and caps the order") {
  QSeries f = QSeries::one() + q_power(1) + q_power(2) + q_power(3);
  QSeries t = f.truncated(QOrder::at(Rational(2)));
  CHECK(t.order() == QOrder::at(Rational(2)));
  CHECK(t.coefficient(Rational(3)).is_zero());
  CHECK(t.coefficient(Rational(2)).as_rational() == 1);
}

TEST_CASE("powers respect truncation") {
  QSeries f = (QSeries::one() + q_power(1)).with_order(QOrder::at(Rational(4)));
  QSeries f3 = f.pow(3);
  CHECK(f3.order() == QOrder::at(Rational(4)));
  CHECK(f3.coefficient(Rational(2)).as_rational() == 3);
  CHECK(f3.coefficient(Rational(3)).as_rational() == 1);
  CHECK(f.pow(0) == QSeries::one().with_order(QOrder::at(Rational(4))));
}

TEST_CASE("numeric evaluation at a concrete tau") {
  QSeries g = (QSeries::one() - q_power(1)).inverse(QOrder::at(Rational(40)));
  Complex tau(0.0, 1.0);
  double q = std::exp(-8.0 * std::atan(1.0));
  Complex expect(1.0 / (1.0 - q), 0.0);
  CHECK(std::abs(g.eval_tau(tau) - expect) < 1e-12);
}

TEST_CASE("series agreement is judged within the common window") {
  QSeries a = (QSeries::one() + q_power(1)).with_order(QOrder::at(Rational(1)));
  QSeries b = QSeries::one() + q_power(1) + q_power(2);
  CHECK(agree_through_common_order(a, b));
  QSeries c = QSeries::one() + q_power(1).scaled(Scalar(Rational(2)));
  auto diff = first_difference(a, c);
  REQUIRE(diff.has_value());
  CHECK(*diff == 1);
}

TEST_CASE("cyclotomic coefficients cancel across terms") {
  Scalar z = Scalar::root_of_unity(rat(1, 3), 3);
  QSeries a = QSeries::monomial(z, Rational(1)) + QSeries::monomial(z.pow(2), Rational(1));
  CHECK(a.coefficient(Rational(1)).as_rational() == -1);
  QSeries b = a + QSeries::monomial(Scalar::one(), Rational(1));
  CHECK(b.is_zero());
  CHECK(b.has_rational_coefficients());
}
