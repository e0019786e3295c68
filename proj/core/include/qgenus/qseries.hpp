#pragma once

#include <map>
#include <optional>
#include <vector>

#include "qgenus/scalar.hpp"

namespace qgenus {

/* Truncation order: exponents <= value are faithfully represented.
 * Exact objects (monomials, constants) carry an infinite order. */
struct QOrder {
  bool finite = false;
  Rational value = Rational(0);

  static QOrder inf() { return QOrder{false, Rational(0)}; }
  static QOrder at(Rational v) { return QOrder{true, std::move(v)}; }

  bool operator==(const QOrder& o) const { return finite == o.finite && (!finite || value == o.value); }
};

inline QOrder qorder_min(const QOrder& a, const QOrder& b) {
  if (!a.finite) return b;
  if (!b.finite) return a;
  return QOrder::at(a.value <= b.value ? a.value : b.value);
}

inline QOrder qorder_shift(const QOrder& a, const Rational& d) {
  return a.finite ? QOrder::at(a.value + d) : a;
}

inline bool qorder_le(const Rational& e, const QOrder& o) { return !o.finite || e <= o.value; }

/* Sparse truncated Puiseux series in the nome q.
 * Exponents are rationals stored as integer numerators over a common
 * denominator per series; arithmetic rebases to the lcm. Finitely many
 * negative exponents are allowed. Zero coefficients are never stored. */
class QSeries {
public:
  QSeries() : denom_(1), order_(QOrder::inf()) {}

  static QSeries zero() { return QSeries(); }
  static QSeries constant(Scalar c);
  static QSeries one() { return constant(Scalar::one()); }
  /* c * q^exp, exact. */
  static QSeries monomial(Scalar c, const Rational& exp);
  static QSeries from_terms(long denom, std::map<long long, Scalar> terms, QOrder order);

  long denom() const { return denom_; }
  const std::map<long long, Scalar>& terms() const { return terms_; }
  const QOrder& order() const { return order_; }

  bool is_zero() const { return terms_.empty(); }
  /* Lowest exponent of a nonzero series. */
  std::optional<Rational> lowest_exponent() const;
  Scalar coefficient(const Rational& exp) const;
  Scalar constant_term() const { return coefficient(Rational(0)); }
  /* True when the series is invertible without a pole shift. */
  bool is_unit() const;

  QSeries operator-() const;
  QSeries operator+(const QSeries& rhs) const;
  QSeries operator-(const QSeries& rhs) const;
  QSeries operator*(const QSeries& rhs) const;
  QSeries scaled(const Scalar& c) const;
  QSeries scaled_rat(const Rational& c) const;
  /* Multiplication by the exact monomial q^d (validity shifts by d). */
  QSeries shifted(const Rational& d) const;
  QSeries pow(long e) const;

  /* Reciprocal. For a series of lowest exponent v and order T the result
   * carries order T - 2v; exact inputs need an explicit target order. */
  QSeries inverse(std::optional<QOrder> target = std::nullopt) const;

  QSeries truncated(const QOrder& order) const;
  QSeries with_order(const QOrder& order) const;
  /* Minimal exponent denominator, canonical form. */
  QSeries normalized() const;

  /* All coefficients rational (demotes nothing; verifies). */
  bool has_rational_coefficients() const;

  /* Numeric evaluation with q = e^(2 pi i tau); branch-free in the exponent. */
  Complex eval_tau(const Complex& tau) const;

  bool operator==(const QSeries& rhs) const;
  bool operator!=(const QSeries& rhs) const { return !(*this == rhs); }

private:
  QSeries(long denom, QOrder order) : denom_(denom), order_(order) {}
  void insert_term(long long num, const Scalar& c);
  void prune_beyond_order();

  long denom_;
  std::map<long long, Scalar> terms_;
  QOrder order_;
};

/* True when a and b agree coefficientwise through the smaller of the two
 * orders (which must be finite for a meaningful comparison unless both are
 * exact). */
bool agree_through_common_order(const QSeries& a, const QSeries& b);

/* First exponent where a and b differ within the common valid range. */
std::optional<Rational> first_difference(const QSeries& a, const QSeries& b);

}  // namespace qgenus
