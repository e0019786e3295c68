#pragma once

#include "qgenus/points.hpp"
#include "qgenus/qseries.hpp"
#include "qgenus/wseries.hpp"

namespace qgenus {

/* A theta-type product is two arithmetic progressions of q-exponents, one
 * attached to u and one to 1/u:
 *   prod over b in {plus_start, plus_start+step, ...}  of (1 - q^b u)
 * x prod over b in {minus_start, minus_start+step, ...} of (1 - q^b / u).
 * Exponents are in global-q units. */
struct Progressions {
  Rational plus_start, minus_start, step;
};

/* Theta(u) = (1 - 1/u) prod (1 - Q^k u)(1 - Q^k / u) on the curve with nome
 * Q = q^e. */
Progressions basic_progressions(const NomeSpec& nome);

/* The level-n translate family with residue a: factors (1 - q^l u) for l >= 1,
 * l = a mod n, and (1 - q^{-l} / u) for l <= 0, l = a mod n. */
Progressions theta_na_progressions(long n, long a);

/* Exact backend: coefficients in Q(zeta_{field_order}), truncation order T. */
QSeries theta_eval(const Progressions& pr, const CoveringPoint& u, const NomeSpec& nome,
                   long field_order, const Rational& T);

/* Expansion of the product at u_p e^w: Laurent-free in w (each factor is
 * entire), with each w-coefficient a QSeries faithful through T. */
WSeries<QSeries> theta_wexp(const Progressions& pr, const CoveringPoint& base, const NomeSpec& nome,
                            long field_order, const Rational& T, long Z);

/* Numeric backend at concrete tau: q^b = exp(2 pi i tau b), no branch choice.
 * The retention bound T plays the tail-size role: dropped factors differ from
 * 1 by O(|q|^T). */
Complex theta_eval_num(const Progressions& pr, const CoveringPoint& u, const NomeSpec& nome,
                       const Complex& tau, const Rational& T);
WSeries<Complex> theta_wexp_num(const Progressions& pr, const CoveringPoint& base, const NomeSpec& nome,
                                const Complex& tau, const Rational& T, long Z);

/* Lowest q-exponent of the product value at u: the sum of the negative
 * progression exponents. Zero when every factor starts at q^0. Lets callers
 * that multiply several theta values pad their truncation targets so the
 * capped product order still covers the window they need. */
Rational theta_lower_bound(const Progressions& pr, const CoveringPoint& u, const NomeSpec& nome);

/* prod (1 - q^b) over b = start, start+step, ... truncated at T. */
QSeries binomial_product(const Rational& start, const Rational& step, const Rational& T);

QSeries theta_basic(const CoveringPoint& u, const NomeSpec& nome, long field_order, const Rational& T);
QSeries theta_na(long n, long a, const CoveringPoint& u, long field_order, const Rational& T);

}  // namespace qgenus
