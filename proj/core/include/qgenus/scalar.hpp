#pragma once

#include <complex>
#include <variant>

#include "qgenus/cyclotomic.hpp"
#include "qgenus/rational.hpp"

namespace qgenus {

using Complex = std::complex<double>;

/* Coefficient value for series arithmetic. Three backends:
 * exact rational, exact cyclotomic Q(zeta_D), complex floating point.
 *
 * Rationals embed implicitly into either other backend (prime-field
 * embedding). Any other mixing raises backend_mismatch. Cyclotomic results
 * that happen to lie in Q are demoted to the rational backend, so the
 * representation is canonical across backends.
 */
class Scalar {
public:
  Scalar() : value_(Rational(0)) {}
  explicit Scalar(Rational r) : value_(std::move(r)) {}
  explicit Scalar(long n) : value_(Rational(n)) {}
  explicit Scalar(Cyclotomic c);
  explicit Scalar(Complex z) : value_(z) {}

  static Scalar zero() { return Scalar(Rational(0)); }
  static Scalar one() { return Scalar(Rational(1)); }
  /* e^(2 pi i x) for rational x, represented in Q(zeta_order); collapses to
   * a rational +-1 when possible. The reduced denominator of x must divide
   * the field order. */
  static Scalar root_of_unity(const Rational& x, long order);

  bool is_rational() const { return std::holds_alternative<Rational>(value_); }
  bool is_cyclotomic() const { return std::holds_alternative<Cyclotomic>(value_); }
  bool is_complex() const { return std::holds_alternative<Complex>(value_); }
  bool is_exact() const { return !is_complex(); }

  bool is_zero() const;
  bool is_one() const;

  const Rational& rational() const;
  const Cyclotomic& cyclotomic() const;
  Complex complex_value() const;

  /* Exact conversion to a rational; throws backend_mismatch otherwise. */
  Rational as_rational() const;
  /* Numeric value of any backend. */
  Complex to_complex() const;

  Scalar operator-() const;
  Scalar operator+(const Scalar& rhs) const;
  Scalar operator-(const Scalar& rhs) const;
  Scalar operator*(const Scalar& rhs) const;
  Scalar inverse() const;
  Scalar scaled(const Rational& f) const;
  Scalar pow(long e) const;

  /* Exact structural equality; equal values in incompatible exact fields
   * raise backend_mismatch rather than comparing false. */
  bool operator==(const Scalar& rhs) const;
  bool operator!=(const Scalar& rhs) const { return !(*this == rhs); }

private:
  std::variant<Rational, Cyclotomic, Complex> value_;
};

inline bool approx_equal(const Complex& a, const Complex& b, double tol) { return std::abs(a - b) <= tol; }

}  // namespace qgenus
