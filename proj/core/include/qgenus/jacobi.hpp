#pragma once

#include <map>
#include <vector>

#include "qgenus/points.hpp"
#include "qgenus/qseries.hpp"
#include "qgenus/theta.hpp"
#include "qgenus/wseries.hpp"

namespace qgenus {

/* A theta-quotient with simple poles on a group orbit and simple zeroes on a
 * translated orbit, scaled so the expansion at the identity is 1/w + O(1).
 * Raw value: u^m prod Theta(u - r_i) / prod Theta(u - g_i); the stored
 * normalizer A is the w^{-1} coefficient of the raw expansion. */
class JacobiFunction {
 public:
  /* Ratio of theta translates for the orbit of gamma against the group. The
   * zero rep over the identity absorbs the lattice part of gamma^n, so the
   * covering product matches the group side whenever gamma is torsion of the
   * group order. */
  static JacobiFunction from_divisor(const NomeSpec& nome, std::vector<DivisionPoint> group,
                                     const DivisionPoint& gamma, long field_order,
                                     const Rational& T);

  /* The explicit ratio on nome q: poles at the n-th roots of 1, zeroes at the
   * n-th roots of q, and a bare 1/u. Its raw modulus at a root of q is that
   * root to the n-1. */
  static JacobiFunction special_level(long n, long field_order, const Rational& T);

  long level() const { return static_cast<long>(poles_.size()); }
  const NomeSpec& nome() const { return nome_; }
  long field_order() const { return field_; }
  const Rational& truncation() const { return trunc_; }
  const std::vector<CoveringPoint>& pole_reps() const { return poles_; }
  const std::vector<CoveringPoint>& zero_reps() const { return zeros_; }
  const QSeries& normalizer() const { return norm_; }

  QSeries eval(const CoveringPoint& p) const;
  WSeries<QSeries> expand(const CoveringPoint& base, long Z) const;
  Complex eval_num(const CoveringPoint& p, const Complex& tau) const;
  WSeries<Complex> expand_num(const CoveringPoint& base, const Complex& tau, long Z) const;

  /* Multiplier of f under translation by g; constant by construction, checked
   * at two points. Cached. */
  Scalar character(const DivisionPoint& g) const;

  /* c(r) = f(p) f(r-p), checked constant at two points. Keyed on the reduced
   * point. */
  QSeries modulus(const CoveringPoint& r) const;
  Complex modulus_num(const CoveringPoint& r, const Complex& tau) const;

 private:
  JacobiFunction() = default;

  QSeries eval_raw(const CoveringPoint& p) const;
  QSeries eval_raw(const CoveringPoint& p, const Rational& extra) const;
  /* eval(p+g)/eval(p), padded until the quotient window shows the constant;
   * the normalizer cancels, so raw values suffice. */
  QSeries translation_ratio(const CoveringPoint& p, const CoveringPoint& gt) const;
  /* f(p) f(r-p), padded until the window reaches the truncation target. */
  QSeries pair_value(const CoveringPoint& p, const CoveringPoint& r) const;
  void normalize();
  /* Truncation target for the constituent theta factors at this argument.
   * Factors with negative lowest exponents charge the capped product order,
   * so the target is padded by the total of those bounds. */
  Rational eval_target(const CoveringPoint& base) const;
  /* Generic sample point: avoids the divisor and, when extra is given, keeps
   * extra - p off it too. skip picks distinct points. */
  CoveringPoint sample_point(long skip, const CoveringPoint* extra) const;
  bool on_divisor(const CoveringPoint& p) const;

  NomeSpec nome_{Rational(1)};
  long field_ = 1;
  Rational trunc_;
  long upower_ = 0;
  std::vector<CoveringPoint> poles_, zeros_;
  QSeries norm_, norm_inv_;

  mutable std::map<DivisionPoint, Scalar> character_;
  mutable std::map<DivisionPoint, QSeries> modulus_;
};

/* Level-2 quantities of (f')^2 = f^4 - 2 delta f^2 + epsilon, solved from two
 * coefficients of the expansion at the identity and verified through w-order
 * Z (throws ode_mismatch otherwise). */
struct Level2Data {
  QSeries delta, epsilon;
};
Level2Data level2_data(const JacobiFunction& f, long Z);

}  // namespace qgenus
