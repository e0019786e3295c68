#include <doctest.h>

#include <complex>

#include "qgenus/error.hpp"
#include "qgenus/theta.hpp"

using namespace qgenus;

namespace {

/* u as a one-term series: u = zeta(x) q^{e y} for a point on the curve with
 * nome q^e. */
QSeries point_monomial(const CoveringPoint& p, const NomeSpec& nome, long field_order) {
  return QSeries::monomial(Scalar::root_of_unity(p.x, field_order), nome.e * p.y);
}

QSeries theta_translate(const CoveringPoint& u, const CoveringPoint& r, const NomeSpec& nome,
                        long field_order, const Rational& T) {
  return theta_basic(u - r, nome, field_order, T);
}

}  // namespace

TEST_CASE("basic theta at q = 0") {
  NomeSpec e1{Rational(1)};
  CoveringPoint u(rat(1, 3), Rational(0));
  QSeries th = theta_basic(u, e1, 3, Rational(3));
  // constant slice is 1 - 1/u
  Scalar expect = Scalar::one() - Scalar::root_of_unity(rat(-1, 3), 3);
  CHECK(th.constant_term() == expect);
  CHECK(th.lowest_exponent().has_value());
  CHECK(*th.lowest_exponent() == Rational(0));
  CHECK(th.order() == QOrder::at(Rational(3)));
}

TEST_CASE("theta vanishes identically at the identity point") {
  NomeSpec e1{Rational(1)};
  QSeries th = theta_basic(CoveringPoint(Rational(0), Rational(0)), e1, 1, Rational(4));
  CHECK(th.is_zero());
}

TEST_CASE("w-expansion at the identity: simple zero with binomial square slope") {
  NomeSpec e1{Rational(1)};
  auto w = theta_wexp(basic_progressions(e1), CoveringPoint(Rational(0), Rational(0)), e1, 1,
                      Rational(5), 3);
  CHECK(ws_is_zero(w.coefficient(0)));
  QSeries slope = w.coefficient(1);
  QSeries b = binomial_product(Rational(1), Rational(1), Rational(5));
  CHECK(agree_through_common_order(slope, b * b));
}

TEST_CASE("binomial product matches the pentagonal expansion") {
  QSeries b = binomial_product(Rational(1), Rational(1), Rational(6));
  CHECK(b.coefficient(Rational(0)) == Scalar::one());
  CHECK(b.coefficient(Rational(1)) == -Scalar::one());
  CHECK(b.coefficient(Rational(2)) == -Scalar::one());
  CHECK(b.coefficient(Rational(3)) == Scalar::zero());
  CHECK(b.coefficient(Rational(4)) == Scalar::zero());
  CHECK(b.coefficient(Rational(5)) == Scalar::one());
}

TEST_CASE("functional equation under the nome: Theta(u/Q) = -u Theta(u)") {
  struct Case {
    CoveringPoint u;
    NomeSpec nome;
    long field;
  };
  const Case cases[] = {
      {CoveringPoint(rat(1, 3), Rational(0)), NomeSpec{Rational(1)}, 3},
      {CoveringPoint(rat(1, 5), rat(1, 3)), NomeSpec{Rational(2)}, 5},
  };
  for (const auto& c : cases) {
    Rational T(4);
    CoveringPoint shifted(c.u.x, c.u.y - 1);
    QSeries lhs = theta_basic(shifted, c.nome, c.field, T);
    QSeries rhs = -(point_monomial(c.u, c.nome, c.field) * theta_basic(c.u, c.nome, c.field, T));
    CHECK(agree_through_common_order(lhs, rhs));
    CHECK_FALSE(first_difference(lhs, rhs).has_value());
  }
}

TEST_CASE("level 1 translate family collapses to the basic theta") {
  NomeSpec e1{Rational(1)};
  CoveringPoint u(rat(1, 5), Rational(0));
  QSeries a = theta_na(1, 0, u, 5, Rational(4));
  QSeries b = theta_basic(u, e1, 5, Rational(4));
  CHECK(a == b);
}

TEST_CASE("root-of-unity translates assemble the level-n zero family") {
  NomeSpec e1{Rational(1)};
  Rational T(4);
  for (long n = 2; n <= 4; ++n) {
    long field = 5 * n;
    CoveringPoint u(rat(1, 5), rat(1, 7));
    QSeries prod = QSeries::one();
    for (long i = 0; i < n; ++i) {
      prod = prod * theta_translate(u, CoveringPoint(rat(i, n), Rational(0)), e1, field, T);
    }
    QSeries rhs = theta_na(n, 0, u, field, T);
    CHECK(agree_through_common_order(prod, rhs));
    CHECK_FALSE(first_difference(prod, rhs).has_value());
  }
}

TEST_CASE("translates through the division nome assemble the residue -1 family") {
  NomeSpec e1{Rational(1)};
  Rational T(4);
  for (long n = 2; n <= 4; ++n) {
    long field = 5 * n;
    CoveringPoint u(rat(1, 5), rat(1, 7));
    QSeries prod = QSeries::one();
    for (long i = 0; i < n; ++i) {
      prod = prod * theta_translate(u, CoveringPoint(rat(i, n), rat(1, n)), e1, field, T);
    }
    QSeries rhs = theta_na(n, -1, u, field, T);
    CHECK(agree_through_common_order(prod, rhs));
    CHECK_FALSE(first_difference(prod, rhs).has_value());
  }
}

TEST_CASE("inversion identities for the translate family") {
  Rational T(4);
  for (long n = 2; n <= 4; ++n) {
    long field = 5 * n;
    CoveringPoint u(rat(1, 5), rat(1, 7));
    QSeries un = QSeries::monomial(Scalar::root_of_unity(frac_mod1(rat(n, 5)), field), Rational(n) * rat(1, 7));

    // residue 0 picks up the factor -u^n
    QSeries lhs0 = theta_na(n, 0, -u, field, T);
    QSeries rhs0 = -(un * theta_na(n, 0, u, field, T));
    CHECK(agree_through_common_order(lhs0, rhs0));

    // nonzero residues swap sign with no prefactor
    for (long a = 1; a < n; ++a) {
      QSeries lhs = theta_na(n, a, -u, field, T);
      QSeries rhs = theta_na(n, -a, u, field, T);
      CHECK(agree_through_common_order(lhs, rhs));
      CHECK_FALSE(first_difference(lhs, rhs).has_value());
    }
  }
}

TEST_CASE("translation by the division point steps the residue") {
  Rational T(4);
  for (long n = 2; n <= 4; ++n) {
    long field = 5 * n;
    CoveringPoint u(rat(1, 5), rat(1, 7));
    CoveringPoint q0u(u.x, u.y + rat(1, n));

    // residue 0 translate: -q^{-1} u^{-n} times residue 1
    QSeries lhs0 = theta_na(n, 0, q0u, field, T);
    QSeries m = QSeries::monomial(Scalar::root_of_unity(frac_mod1(rat(-n, 5)), field),
                                  Rational(-1) - Rational(n) * rat(1, 7));
    QSeries rhs0 = -(m * theta_na(n, 1, u, field, T));
    CHECK(agree_through_common_order(lhs0, rhs0));

    // residue -1 translate closes the cycle
    QSeries lhs1 = theta_na(n, -1, q0u, field, T);
    QSeries rhs1 = theta_na(n, 0, u, field, T);
    CHECK(agree_through_common_order(lhs1, rhs1));
    CHECK_FALSE(first_difference(lhs1, rhs1).has_value());
  }
}

TEST_CASE("numeric backend tracks the exact series") {
  const Complex taus[] = {Complex(0.0, 1.0), Complex(0.3, 0.8)};
  NomeSpec e2{Rational(2)};
  CoveringPoint u(rat(1, 5), rat(1, 3));
  Rational T(8);
  QSeries exact = theta_basic(u, e2, 5, T);
  for (const Complex& tau : taus) {
    Complex a = exact.eval_tau(tau);
    Complex b = theta_eval_num(basic_progressions(e2), u, e2, tau, T);
    CHECK(std::abs(a - b) < 1e-9);
  }
}

TEST_CASE("w-expansion restricts to the point evaluation") {
  NomeSpec e2{Rational(2)};
  CoveringPoint p(rat(1, 5), rat(1, 3));
  Rational T(5);
  auto w = theta_wexp(basic_progressions(e2), p, e2, 5, T, 3);
  QSeries at_point = theta_basic(p, e2, 5, T);
  CHECK(agree_through_common_order(w.coefficient(0), at_point));

  Complex tau(0.2, 1.1);
  auto wn = theta_wexp_num(basic_progressions(e2), p, e2, tau, T, 3);
  for (long k = 0; k <= 3; ++k) {
    CHECK(std::abs(wn.coefficient(k) - w.coefficient(k).eval_tau(tau)) < 1e-9);
  }
}

TEST_CASE("translate family q = 0 slice") {
  Rational T(3);
  for (long n = 2; n <= 4; ++n) {
    CoveringPoint u(rat(1, 5), Rational(0));
    QSeries th = theta_na(n, 0, u, 5, T);
    Scalar expect = Scalar::one() - Scalar::root_of_unity(frac_mod1(rat(-n, 5)), 5);
    CHECK(th.constant_term() == expect);
    // nonzero residues have unit constant slice
    for (long a = 1; a < n; ++a) {
      CHECK(theta_na(n, a, u, 5, T).constant_term() == Scalar::one());
    }
  }
}
