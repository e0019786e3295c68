#include "qgenus/scalar.hpp"

#include <numeric>

namespace qgenus {

Scalar::Scalar(Cyclotomic c) {
  if (c.is_rational())
    value_ = c.rational_part();
  else
    value_ = std::move(c);
}

Scalar Scalar::root_of_unity(const Rational& x, long order) {
  Rational r = frac_mod1(x);
  if (r == 0) return one();
  if (r == Rational(1, 2)) return Scalar(Rational(-1));
  const Int den = rat_den(r);
  require(order % to_long(den) == 0, errc::backend_mismatch,
          "root of unity of order " + den.get_str() + " outside field of order " + std::to_string(order));
  long power = to_long(rat_num(r) * (order / to_long(den)));
  return Scalar(Cyclotomic::root_power(order, power));
}

bool Scalar::is_zero() const {
  if (is_rational()) return rational() == 0;
  if (is_cyclotomic()) return cyclotomic().is_zero();
  return complex_value() == Complex(0.0, 0.0);
}

bool Scalar::is_one() const {
  if (is_rational()) return rational() == 1;
  if (is_cyclotomic()) return false;
  return complex_value() == Complex(1.0, 0.0);
}

const Rational& Scalar::rational() const {
  require(is_rational(), errc::backend_mismatch, "scalar is not rational");
  return std::get<Rational>(value_);
}

const Cyclotomic& Scalar::cyclotomic() const {
  require(is_cyclotomic(), errc::backend_mismatch, "scalar is not cyclotomic");
  return std::get<Cyclotomic>(value_);
}

Complex Scalar::complex_value() const {
  require(is_complex(), errc::backend_mismatch, "scalar is not complex");
  return std::get<Complex>(value_);
}

Rational Scalar::as_rational() const {
  if (is_rational()) return rational();
  if (is_cyclotomic()) return cyclotomic().rational_part();  // throws: canonical cyclotomics are irrational
  fail(errc::backend_mismatch, "complex scalar has no exact rational value");
}

Complex Scalar::to_complex() const {
  if (is_rational()) return Complex(rat_double(rational()), 0.0);
  if (is_cyclotomic()) return cyclotomic().to_complex();
  return complex_value();
}

Scalar Scalar::operator-() const {
  if (is_rational()) return Scalar(Rational(-rational()));
  if (is_cyclotomic()) return Scalar(-cyclotomic());
  return Scalar(-complex_value());
}

namespace {

template <class RatOp, class CycOp, class CplxOp>
Scalar combine(const Scalar& a, const Scalar& b, RatOp rop, CycOp cop, CplxOp zop) {
  if (a.is_rational() && b.is_rational()) return Scalar(rop(a.rational(), b.rational()));
  if (a.is_complex() || b.is_complex()) {
    require(a.is_complex() || a.is_rational(), errc::backend_mismatch, "cannot mix cyclotomic and complex scalars");
    require(b.is_complex() || b.is_rational(), errc::backend_mismatch, "cannot mix cyclotomic and complex scalars");
    return Scalar(zop(a.to_complex(), b.to_complex()));
  }
  /* At least one cyclotomic, none complex; work in the compositum field. */
  long order = 1;
  if (a.is_cyclotomic()) order = a.cyclotomic().order();
  if (b.is_cyclotomic()) order = std::lcm(order, b.cyclotomic().order());
  Cyclotomic ca = a.is_cyclotomic() ? a.cyclotomic().embedded(order) : Cyclotomic::constant(order, a.rational());
  Cyclotomic cb = b.is_cyclotomic() ? b.cyclotomic().embedded(order) : Cyclotomic::constant(order, b.rational());
  return Scalar(cop(ca, cb));
}

}  // namespace

Scalar Scalar::operator+(const Scalar& rhs) const {
  return combine(
      *this, rhs, [](const Rational& a, const Rational& b) { return Rational(a + b); },
      [](const Cyclotomic& a, const Cyclotomic& b) { return a + b; },
      [](const Complex& a, const Complex& b) { return a + b; });
}

Scalar Scalar::operator-(const Scalar& rhs) const {
  return combine(
      *this, rhs, [](const Rational& a, const Rational& b) { return Rational(a - b); },
      [](const Cyclotomic& a, const Cyclotomic& b) { return a - b; },
      [](const Complex& a, const Complex& b) { return a - b; });
}

Scalar Scalar::operator*(const Scalar& rhs) const {
  return combine(
      *this, rhs, [](const Rational& a, const Rational& b) { return Rational(a * b); },
      [](const Cyclotomic& a, const Cyclotomic& b) { return a * b; },
      [](const Complex& a, const Complex& b) { return a * b; });
}

Scalar Scalar::inverse() const {
  require(!is_zero(), errc::inversion_of_zero, "scalar inverse of zero");
  if (is_rational()) return Scalar(Rational(1 / rational()));
  if (is_cyclotomic()) return Scalar(cyclotomic().inverse());
  return Scalar(Complex(1.0, 0.0) / complex_value());
}

Scalar Scalar::scaled(const Rational& f) const {
  if (is_rational()) return Scalar(Rational(rational() * f));
  if (is_cyclotomic()) return Scalar(cyclotomic().scaled(f));
  return Scalar(complex_value() * Complex(rat_double(f), 0.0));
}

Scalar Scalar::pow(long e) const {
  if (e == 0) return one();
  Scalar base = e < 0 ? inverse() : *this;
  unsigned long n = e < 0 ? static_cast<unsigned long>(-(e + 1)) + 1ul : static_cast<unsigned long>(e);
  Scalar acc = one();
  while (n > 0) {
    if (n & 1ul) acc = acc * base;
    base = n > 1 ? base * base : base;
    n >>= 1;
  }
  return acc;
}

bool Scalar::operator==(const Scalar& rhs) const {
  if (is_rational() && rhs.is_rational()) return rational() == rhs.rational();
  if (is_complex() != rhs.is_complex()) {
    if (is_complex() || rhs.is_complex()) {
      /* Exact-vs-complex comparisons are only meaningful through tolerances. */
      fail(errc::backend_mismatch, "cannot compare exact and complex scalars for equality");
    }
  }
  if (is_complex()) return complex_value() == rhs.complex_value();
  /* Canonical demotion means a cyclotomic scalar is never rational-valued. */
  if (is_rational() != rhs.is_rational()) return false;
  const Cyclotomic& a = cyclotomic();
  const Cyclotomic& b = rhs.cyclotomic();
  if (a.order() == b.order()) return a == b;
  /* Canonical coordinates in the compositum decide cross-field equality. */
  const long order = std::lcm(a.order(), b.order());
  return a.embedded(order) == b.embedded(order);
}

}  // namespace qgenus
