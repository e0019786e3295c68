#pragma once

#include <complex>
#include <vector>

#include "qgenus/rational.hpp"

namespace qgenus {

/* Coefficients of the D-th cyclotomic polynomial, ascending degree, monic.
 * Derived by exact division of x^D - 1 by the product of the lower-order
 * cyclotomic polynomials at divisors of D. Results are cached per D. */
const std::vector<Int>& cyclotomic_poly(long order);

/* Element of Q(zeta_D) stored as a rational vector modulo Phi_D.
 * The representation is canonical: two elements are equal iff their
 * coordinate vectors are equal. */
class Cyclotomic {
public:
  Cyclotomic() : order_(1), coeffs_(1, Rational(0)) {}
  Cyclotomic(long order, std::vector<Rational> coeffs);

  /* Embeds a rational constant. */
  static Cyclotomic constant(long order, const Rational& value);
  /* zeta_D^power. */
  static Cyclotomic root_power(long order, long power);

  long order() const { return order_; }
  long degree() const { return static_cast<long>(coeffs_.size()); }
  const std::vector<Rational>& coeffs() const { return coeffs_; }

  bool is_zero() const;
  bool is_rational() const;
  /* Requires is_rational(). */
  Rational rational_part() const;

  Cyclotomic operator-() const;
  Cyclotomic operator+(const Cyclotomic& rhs) const;
  Cyclotomic operator-(const Cyclotomic& rhs) const;
  Cyclotomic operator*(const Cyclotomic& rhs) const;
  Cyclotomic inverse() const;

  Cyclotomic scaled(const Rational& factor) const;
  /* Image under Q(zeta_D) -> Q(zeta_order), order a multiple of D. */
  Cyclotomic embedded(long order) const;
  bool operator==(const Cyclotomic& rhs) const { return order_ == rhs.order_ && coeffs_ == rhs.coeffs_; }
  bool operator!=(const Cyclotomic& rhs) const { return !(*this == rhs); }

  std::complex<double> to_complex() const;

private:
  void check_same_field(const Cyclotomic& rhs) const;

  long order_;
  std::vector<Rational> coeffs_;
};

}  // namespace qgenus
