#pragma once

#include <cstddef>
#include <map>
#include <utility>
#include <vector>

#include "qgenus/qseries.hpp"
#include "qgenus/scalar.hpp"

namespace qgenus {

/* Orbifold data for a quasi-homogeneous singularity: one weight per
 * coordinate and a finite abelian group acting diagonally, each element
 * recorded by its vector of rotation numbers. Rotation numbers are read
 * modulo 1 throughout; any representative may be supplied. */
struct LGModel {
  std::vector<Rational> charges;              /* q_i in (0,1) */
  std::vector<std::vector<Rational>> group;   /* rows R_i(g), one per element */

  /* Cyclic group generated by one rotation vector. */
  static LGModel cyclic(std::vector<Rational> charges, const std::vector<Rational>& generator, long order);
};

/* Structural checks: charge range, row arity, identity element, closure of
 * the reduced rows under componentwise addition mod 1, distinct elements. */
void validate_lg(const LGModel& model);

/* Integral total charge and integral rotation sums. Under this condition
 * the orbifold genus below is supported on a single coset of the integer
 * y-exponent lattice (asserted per run). */
bool cy_type_condition(const LGModel& model);

/* One theta factor argument alpha*z + x + t*tau. */
struct ThetaArg {
  Rational zcoef;
  Rational shift;
  Rational tshift;
};

/* Derived lattice data of a model: the cyclotomic order of its phase
 * constants, the exponent denominators of its genus series, and the
 * CY-type verdict. */
struct LGStructure {
  long group_order;
  long field;
  long qden;
  long yden;
  bool cy_type;
};

LGStructure lg_structure(const LGModel& model);

/* Sparse two-variable series in the nome q and the Jacobi variable y.
 * Exponents are rationals over fixed per-series denominators; the order
 * stamp truncates the q-direction only (inclusive, as in QSeries).
 * Zero coefficients are never stored. */
class QYSeries {
public:
  using Key = std::pair<long long, long long>;  /* scaled (q-exp, y-exp) */

  QYSeries() : qden_(1), yden_(1), order_(QOrder::inf()) {}

  static QYSeries zero() { return QYSeries(); }
  static QYSeries constant(Scalar c);
  static QYSeries one() { return constant(Scalar::one()); }
  /* c * q^qe * y^ye, exact. */
  static QYSeries monomial(Scalar c, const Rational& qe, const Rational& ye);
  static QYSeries from_terms(long qden, long yden, std::map<Key, Scalar> terms, QOrder order);

  long qden() const { return qden_; }
  long yden() const { return yden_; }
  const std::map<Key, Scalar>& terms() const { return terms_; }
  const QOrder& order() const { return order_; }

  bool is_zero() const { return terms_.empty(); }
  Scalar coefficient(const Rational& qe, const Rational& ye) const;
  /* All y-exponents at one q-exponent. */
  std::map<Rational, Scalar> y_slice(const Rational& qe) const;
  bool has_integer_y_exponents() const;

  QYSeries operator-() const;
  QYSeries operator+(const QYSeries& rhs) const;
  QYSeries operator-(const QYSeries& rhs) const;
  QYSeries operator*(const QYSeries& rhs) const;
  QYSeries scaled(const Scalar& c) const;
  /* Multiplication by the exact monomial c * q^qe * y^ye. */
  QYSeries shifted_scaled(const Scalar& c, const Rational& qe, const Rational& ye) const;
  QYSeries truncated(const QOrder& order) const;
  /* Minimal exponent denominators, canonical form. */
  QYSeries normalized() const;

  /* Specialization y -> 1: collapse each q-row to a scalar. */
  QSeries at_y_one() const;

  /* Numeric evaluation with q = e^(2 pi i tau), y = e^(2 pi i z). */
  Complex eval(const Complex& tau, const Complex& z) const;

  bool operator==(const QYSeries& rhs) const;
  bool operator!=(const QYSeries& rhs) const { return !(*this == rhs); }

private:
  void insert_term(long long qn, long long yn, const Scalar& c);

  long qden_;
  long yden_;
  std::map<Key, Scalar> terms_;
  QOrder order_;
};

/* Coefficientwise equality through the smaller q-order stamp. */
bool agree_through_common_q_order(const QYSeries& a, const QYSeries& b);

/* Ratio of products of odd theta factors, as a series in (q, y) truncated
 * at q-order T. Each factor with argument alpha*z + x + t*tau enters by its
 * reduced product form
 *   (y_v^{1/2} - y_v^{-1/2}) prod_{k>=1} (1 - q^k y_v)(1 - q^k y_v^{-1}),
 * y_v = y^alpha e^{2 pi i x} q^t, with half-powers resolved monomial by
 * monomial; the t-direction is reduced to [0,1) by the exact
 * quasi-periodicity of that form. Constant prefactors cancel between
 * numerator and denominator, which must have equal counts. The assembled
 * ratio must be a Laurent polynomial in y at each q-order; ratios that are
 * genuinely rational in y are reported, never expanded one-sidedly. */
QYSeries theta1_ratio(const std::vector<ThetaArg>& num, const std::vector<ThetaArg>& den, long T);

/* One term of the orbifold sum: the product over coordinates of
 *   y^{-R_i(g2)} * Theta((1-q_i)z - R_i(g1) - R_i(g2)tau)
 *              / Theta(q_i z + R_i(g1) + R_i(g2)tau),
 * without the 1/|G| weight. Terms whose y-structure is rational rather
 * than polynomial (possible for special pairs; the poles cancel only in
 * the full sum) raise not_polynomial. */
QYSeries lg_sector(const LGModel& model, std::size_t g1, std::size_t g2, long T);

/* Orbifold genus: the |G|^2 sector sum weighted by 1/|G|, exact. */
QYSeries ell_genus(const LGModel& model, long T);

/* Numeric backend: the same truncated sum evaluated in floating point at
 * concrete (tau, z). Degenerate denominators at the chosen point raise
 * denominator_vanishes. */
Complex ell_genus_num(const LGModel& model, long T, const Complex& tau, const Complex& z);

}  // namespace qgenus
