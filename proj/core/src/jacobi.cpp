#include "qgenus/jacobi.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace qgenus {

namespace {

const double kTwoPi = 8.0 * std::atan(1.0);

Complex unit_phase(const Rational& x) { return std::polar(1.0, kTwoPi * rat_double(x)); }

Complex nome_power(const Complex& tau, const Rational& expo) {
  return std::exp(Complex(0.0, 1.0) * kTwoPi * tau * rat_double(expo));
}

}  // namespace

JacobiFunction JacobiFunction::from_divisor(const NomeSpec& nome, std::vector<DivisionPoint> group,
                                            const DivisionPoint& gamma, long field_order,
                                            const Rational& T) {
  require(is_closed_group(group), errc::invalid_config, "pole orbit is not a group");
  for (const auto& g : group)
    require(g != gamma, errc::trivial_coset, "zero orbit coincides with the pole orbit");
  std::sort(group.begin(), group.end());

  JacobiFunction f;
  f.nome_ = nome;
  f.field_ = field_order;
  f.trunc_ = T;
  f.upower_ = 0;

  const long n = static_cast<long>(group.size());
  CoveringPoint gt(gamma);
  /* lattice part of gamma^n, absorbed by the rep over the identity */
  Rational s(0);
  if (is_integer(gamma.x * n) && is_integer(gt.y * n)) s = gt.y * n;

  for (const auto& g : group) {
    CoveringPoint gc(g);
    f.poles_.push_back(gc);
    if (g.is_identity())
      f.zeros_.push_back(CoveringPoint(gt.x, gt.y - s));
    else
      f.zeros_.push_back(gc + gt);
  }
  f.normalize();
  return f;
}

JacobiFunction JacobiFunction::special_level(long n, long field_order, const Rational& T) {
  require(n >= 1, errc::invalid_config, "level must be positive");
  JacobiFunction f;
  f.nome_ = NomeSpec(Rational(1));
  f.field_ = field_order;
  f.trunc_ = T;
  f.upower_ = -1;
  for (long k = 0; k < n; ++k) {
    f.poles_.push_back(CoveringPoint(rat(k, n), Rational(0)));
    f.zeros_.push_back(CoveringPoint(rat(k, n), rat(1, n)));
  }
  f.normalize();
  return f;
}

Rational JacobiFunction::eval_target(const CoveringPoint& base) const {
  auto pr = basic_progressions(nome_);
  Rational drop(0);
  for (const auto& r : zeros_) drop += theta_lower_bound(pr, base - r, nome_);
  for (const auto& g : poles_) drop += theta_lower_bound(pr, base - g, nome_);
  if (upower_ != 0) {
    Rational e = nome_.e * base.y * upower_;
    if (e < 0) drop += e;
  }
  return trunc_ - drop;
}

QSeries JacobiFunction::eval_raw(const CoveringPoint& p) const { return eval_raw(p, Rational(0)); }

QSeries JacobiFunction::eval_raw(const CoveringPoint& p, const Rational& extra) const {
  const Rational Tp = eval_target(p) + extra;
  QSeries num = QSeries::one(), den = QSeries::one();
  for (const auto& r : zeros_) num = num * theta_basic(p - r, nome_, field_, Tp);
  for (const auto& g : poles_) den = den * theta_basic(p - g, nome_, field_, Tp);
  QSeries v = num * den.inverse();
  if (upower_ != 0) {
    v = v * QSeries::monomial(Scalar::root_of_unity(frac_mod1(p.x * upower_), field_),
                              nome_.e * p.y * upower_);
  }
  return v;
}

void JacobiFunction::normalize() {
  auto pr = basic_progressions(nome_);
  CoveringPoint origin;
  const long Z = 2;
  const Rational Tp = eval_target(origin);
  WSeries<QSeries> num = WSeries<QSeries>::one(), den = WSeries<QSeries>::one();
  for (const auto& r : zeros_) num = num * theta_wexp(pr, origin - r, nome_, field_, Tp, Z);
  for (const auto& g : poles_) den = den * theta_wexp(pr, origin - g, nome_, field_, Tp, Z);
  WSeries<QSeries> raw = num * den.inverse();
  if (upower_ != 0) raw = raw * exp_w<QSeries>(Rational(upower_), Z);
  norm_ = raw.coefficient(-1);
  require(!norm_.is_zero(), errc::internal, "expansion at the identity has no simple pole");
  norm_inv_ = norm_.inverse();
}

QSeries JacobiFunction::eval(const CoveringPoint& p) const { return eval_raw(p) * norm_inv_; }

WSeries<QSeries> JacobiFunction::expand(const CoveringPoint& base, long Z) const {
  auto pr = basic_progressions(nome_);
  const long Zp = Z + 2;
  const Rational Tp = eval_target(base);
  WSeries<QSeries> num = WSeries<QSeries>::one(), den = WSeries<QSeries>::one();
  for (const auto& r : zeros_) num = num * theta_wexp(pr, base - r, nome_, field_, Tp, Zp);
  for (const auto& g : poles_) den = den * theta_wexp(pr, base - g, nome_, field_, Tp, Zp);
  WSeries<QSeries> v = num * den.inverse();
  if (upower_ != 0) {
    QSeries um = QSeries::monomial(Scalar::root_of_unity(frac_mod1(base.x * upower_), field_),
                                   nome_.e * base.y * upower_);
    v = v * exp_w<QSeries>(Rational(upower_), Zp).scaled(um);
  }
  return v.scaled(norm_inv_);
}

Complex JacobiFunction::eval_num(const CoveringPoint& p, const Complex& tau) const {
  auto pr = basic_progressions(nome_);
  const Rational Tp = eval_target(p);
  Complex num(1.0, 0.0), den(1.0, 0.0);
  for (const auto& r : zeros_) num *= theta_eval_num(pr, p - r, nome_, tau, Tp);
  for (const auto& g : poles_) den *= theta_eval_num(pr, p - g, nome_, tau, Tp);
  Complex v = num / den;
  if (upower_ != 0)
    v *= unit_phase(p.x * upower_) * nome_power(tau, nome_.e * p.y * upower_);
  return v / norm_.eval_tau(tau);
}

WSeries<Complex> JacobiFunction::expand_num(const CoveringPoint& base, const Complex& tau,
                                            long Z) const {
  auto pr = basic_progressions(nome_);
  const long Zp = Z + 2;
  const Rational Tp = eval_target(base);
  WSeries<Complex> num = WSeries<Complex>::one(), den = WSeries<Complex>::one();
  for (const auto& r : zeros_) num = num * theta_wexp_num(pr, base - r, nome_, tau, Tp, Zp);
  for (const auto& g : poles_) den = den * theta_wexp_num(pr, base - g, nome_, tau, Tp, Zp);
  WSeries<Complex> v = num * den.inverse();
  if (upower_ != 0) {
    Complex um = unit_phase(base.x * upower_) * nome_power(tau, nome_.e * base.y * upower_);
    v = v * exp_w<Complex>(Rational(upower_), Zp).scaled(um);
  }
  return v.scaled(Complex(1.0, 0.0) / norm_.eval_tau(tau));
}

bool JacobiFunction::on_divisor(const CoveringPoint& p) const {
  DivisionPoint d = p.reduce();
  for (const auto& g : poles_)
    if (g.reduce() == d) return true;
  for (const auto& r : zeros_)
    if (r.reduce() == d) return true;
  return false;
}

CoveringPoint JacobiFunction::sample_point(long skip, const CoveringPoint* extra) const {
  static const Rational ys[] = {rat(1, 7), rat(2, 7), rat(3, 7), rat(2, 11), rat(5, 11)};
  long found = 0;
  for (long t = 0; t < 16 * field_; ++t) {
    Rational x = rat(1 + t % field_, field_);
    CoveringPoint p(x, ys[(t / field_) % 5]);
    if (on_divisor(p)) continue;
    if (extra && on_divisor(*extra - p)) continue;
    if (found == skip) return p;
    ++found;
  }
  fail(errc::internal, "no generic sample point found");
}

/* Values far from the identity can sit entirely beyond the default window:
 * their lowest exponent grows with the covering height of the argument. The
 * two derived quantities below are window-insensitive, so they pad locally
 * until the result shows itself rather than charging the global target. */
QSeries JacobiFunction::translation_ratio(const CoveringPoint& p, const CoveringPoint& gt) const {
  for (Rational extra(0);; extra = extra == 0 ? Rational(1) : extra * 2) {
    require(extra <= 256, errc::truncation_insufficient, "translation ratio window is empty");
    QSeries a = eval_raw(p + gt, extra), b = eval_raw(p, extra);
    if (a.is_zero() || b.is_zero()) continue;
    QSeries ratio = a * b.inverse();
    if (ratio.is_zero() || !qorder_le(Rational(1), ratio.order())) continue;
    return ratio;
  }
}

QSeries JacobiFunction::pair_value(const CoveringPoint& p, const CoveringPoint& r) const {
  for (Rational extra(0);; extra = extra == 0 ? Rational(1) : extra * 2) {
    require(extra <= 256, errc::truncation_insufficient, "modulus window is empty");
    QSeries c = eval_raw(p, extra) * eval_raw(r - p, extra);
    if (c.is_zero() || !qorder_le(trunc_, c.order())) continue;
    return (c * norm_inv_) * norm_inv_;
  }
}

Scalar JacobiFunction::character(const DivisionPoint& g) const {
  auto it = character_.find(g);
  if (it != character_.end()) return it->second;

  CoveringPoint gt(g);
  Scalar value = Scalar::one();
  long skip = 0;
  for (long trial = 0; trial < 2; ++trial) {
    CoveringPoint p;
    do {
      p = sample_point(skip++, nullptr);
    } while (on_divisor(p + gt));
    QSeries ratio = translation_ratio(p, gt);
    Scalar c = ratio.constant_term();
    require(!c.is_zero(), errc::character_not_constant,
            "translation multiplier has no constant term");
    require(!first_difference(ratio, QSeries::constant(c)).has_value(),
            errc::character_not_constant, "translation multiplier is not constant");
    if (trial == 0)
      value = c;
    else
      require(value == c, errc::character_not_constant,
              "translation multiplier differs between sample points");
  }
  character_.emplace(g, value);
  return value;
}

QSeries JacobiFunction::modulus(const CoveringPoint& r) const {
  DivisionPoint key = r.reduce();
  auto it = modulus_.find(key);
  if (it != modulus_.end()) return it->second;

  QSeries c0 = QSeries::zero();
  for (long trial = 0; trial < 2; ++trial) {
    CoveringPoint p = sample_point(trial, &r);
    QSeries c = pair_value(p, r);
    if (trial == 0)
      c0 = c;
    else
      require(!first_difference(c0, c).has_value(), errc::modulus_not_constant,
              "modulus differs between sample points");
  }
  modulus_.emplace(key, c0);
  return c0;
}

Complex JacobiFunction::modulus_num(const CoveringPoint& r, const Complex& tau) const {
  CoveringPoint p0 = sample_point(0, &r), p1 = sample_point(1, &r);
  Complex c0 = eval_num(p0, tau) * eval_num(r - p0, tau);
  Complex c1 = eval_num(p1, tau) * eval_num(r - p1, tau);
  /* agreement is limited by the theta truncation tail, not roundoff */
  double tail = std::exp(-2.0 * std::numbers::pi * tau.imag() * rat_double(trunc_));
  require(std::abs(c0 - c1) < (1e-8 + 1e3 * tail) * (1.0 + std::abs(c0)),
          errc::modulus_not_constant, "numeric modulus differs between sample points");
  return c0;
}

Level2Data level2_data(const JacobiFunction& f, long Z) {
  require(f.level() == 2, errc::invalid_config, "differential equation data needs level 2");
  CoveringPoint origin;
  WSeries<QSeries> F = f.expand(origin, Z + 4);
  WSeries<QSeries> Fp = F.derivative();
  WSeries<QSeries> F2 = F * F;
  WSeries<QSeries> R = Fp * Fp - F2 * F2;

  QSeries delta = (R.coefficient(-2) * F2.coefficient(-2).inverse()).scaled_rat(rat(-1, 2));
  QSeries eps = R.coefficient(0) + (delta * F2.coefficient(0)).scaled_rat(Rational(2));

  WSeries<QSeries> rem =
      R + F2.scaled(delta.scaled_rat(Rational(2))) - WSeries<QSeries>::constant(eps);
  for (long k = rem.lead(); k <= rem.top() && k <= Z; ++k)
    require(rem.coefficient(k).is_zero(), errc::ode_mismatch,
            "differential equation fails at this w-order");
  return {delta, eps};
}

}  // namespace qgenus
