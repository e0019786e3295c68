#include "qgenus/qseries.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "qgenus/error.hpp"

namespace qgenus {

namespace {

constexpr long kDenomLimit = 1000000;

/* Exponent e as numerator over denom d; e must lie on the lattice. */
long long numerator_on(const Rational& e, long d) {
  Rational scaled = e * d;
  require(is_integer(scaled), errc::internal, "exponent off the lattice");
  return to_long(scaled.get_num());
}

}  // namespace

QSeries QSeries::constant(Scalar c) {
  QSeries s;
  if (!c.is_zero()) s.terms_.emplace(0, std::move(c));
  return s;
}

QSeries QSeries::monomial(Scalar c, const Rational& exp) {
  QSeries s;
  if (c.is_zero()) return s;
  long d = to_long(rat_den(exp));
  s.denom_ = d;
  s.terms_.emplace(to_long(rat_num(exp)), std::move(c));
  return s;
}

QSeries QSeries::from_terms(long denom, std::map<long long, Scalar> terms, QOrder order) {
  require(denom >= 1, errc::internal, "series denominator must be positive");
  QSeries s(denom, order);
  for (auto& [k, c] : terms)
    if (!c.is_zero()) s.terms_.emplace(k, std::move(c));
  s.prune_beyond_order();
  return s;
}

std::optional<Rational> QSeries::lowest_exponent() const {
  if (terms_.empty()) return std::nullopt;
  return rat(terms_.begin()->first, denom_);
}

Scalar QSeries::coefficient(const Rational& exp) const {
  Rational scaled = exp * denom_;
  if (!is_integer(scaled)) return Scalar::zero();
  auto it = terms_.find(to_long(scaled.get_num()));
  return it == terms_.end() ? Scalar::zero() : it->second;
}

bool QSeries::is_unit() const {
  return !terms_.empty() && terms_.begin()->first == 0;
}

void QSeries::insert_term(long long num, const Scalar& c) {
  auto it = terms_.find(num);
  if (it == terms_.end()) {
    if (!c.is_zero()) terms_.emplace(num, c);
    return;
  }
  it->second = it->second + c;
  if (it->second.is_zero()) terms_.erase(it);
}

void QSeries::prune_beyond_order() {
  if (!order_.finite) return;
  for (auto it = terms_.begin(); it != terms_.end();) {
    if (!qorder_le(rat(it->first, denom_), order_))
      it = terms_.erase(it);
    else
      ++it;
  }
}

QSeries QSeries::operator-() const {
  QSeries r(denom_, order_);
  for (const auto& [k, c] : terms_) r.terms_.emplace(k, -c);
  return r;
}

QSeries QSeries::operator+(const QSeries& rhs) const {
  long d = to_long(lcm_int(denom_, rhs.denom_));
  require(d <= kDenomLimit, errc::internal, "exponent denominator overflow");
  QSeries r(d, qorder_min(order_, rhs.order_));
  long ma = d / denom_, mb = d / rhs.denom_;
  for (const auto& [k, c] : terms_) r.insert_term(k * ma, c);
  for (const auto& [k, c] : rhs.terms_) r.insert_term(k * mb, c);
  r.prune_beyond_order();
  return r;
}

QSeries QSeries::operator-(const QSeries& rhs) const { return *this + (-rhs); }

QSeries QSeries::operator*(const QSeries& rhs) const {
  /* Unknown tails: A's tail times B's known part first appears beyond
   * T_A + l_B, so validity is min over both sides, capped at the bare
   * orders (l > 0 never extends a claim here). */
  QOrder order = QOrder::inf();
  auto low_or_zero = [](const QSeries& s) {
    auto l = s.lowest_exponent();
    Rational lv = l ? *l : Rational(0);
    return lv < 0 ? lv : Rational(0);
  };
  if (order_.finite) order = qorder_min(order, QOrder::at(order_.value + low_or_zero(rhs)));
  if (rhs.order_.finite) order = qorder_min(order, QOrder::at(rhs.order_.value + low_or_zero(*this)));

  long d = to_long(lcm_int(denom_, rhs.denom_));
  require(d <= kDenomLimit, errc::internal, "exponent denominator overflow");
  QSeries r(d, order);
  long ma = d / denom_, mb = d / rhs.denom_;
  for (const auto& [ka, ca] : terms_) {
    long long base = ka * ma;
    for (const auto& [kb, cb] : rhs.terms_) {
      long long key = base + kb * mb;
      if (!qorder_le(rat(key, d), order)) break;
      r.insert_term(key, ca * cb);
    }
  }
  return r;
}

QSeries QSeries::scaled(const Scalar& c) const {
  if (c.is_zero()) return QSeries::zero().with_order(order_);
  QSeries r(denom_, order_);
  for (const auto& [k, v] : terms_) r.insert_term(k, v * c);
  return r;
}

QSeries QSeries::scaled_rat(const Rational& c) const { return scaled(Scalar(c)); }

QSeries QSeries::shifted(const Rational& d) const {
  long nd = to_long(lcm_int(denom_, to_long(rat_den(d))));
  require(nd <= kDenomLimit, errc::internal, "exponent denominator overflow");
  long m = nd / denom_;
  long long off = numerator_on(d, nd);
  QSeries r(nd, qorder_shift(order_, d));
  for (const auto& [k, c] : terms_) r.terms_.emplace(k * m + off, c);
  return r;
}

QSeries QSeries::pow(long e) const {
  require(e >= 0, errc::internal, "negative power needs an explicit inverse");
  QSeries acc = QSeries::one();
  if (order_.finite) acc = acc.with_order(order_);
  QSeries base = *this;
  for (long k = e; k > 0; k >>= 1) {
    if (k & 1) acc = acc * base;
    if (k > 1) base = base * base;
  }
  return acc;
}

QSeries QSeries::inverse(std::optional<QOrder> target) const {
  require(!terms_.empty(), errc::inversion_of_zero, "cannot invert the zero series");
  long long vnum = terms_.begin()->first;
  Rational v = rat(vnum, denom_);

  if (terms_.size() == 1) {
    /* Reciprocal of a monomial is exact. */
    QOrder order = order_.finite ? QOrder::at(order_.value - 2 * v) : QOrder::inf();
    if (target) order = qorder_min(order, *target);
    QSeries r(denom_, order);
    r.insert_term(-vnum, terms_.begin()->second.inverse());
    r.prune_beyond_order();
    return r;
  }

  QOrder order = order_.finite ? QOrder::at(order_.value - 2 * v) : QOrder();
  if (!order_.finite) {
    require(target.has_value() && target->finite, errc::internal,
            "inverting an exact series needs a target order");
    order = *target;
  } else if (target) {
    order = qorder_min(order, *target);
  }

  /* Unit part u = q^-v * this has exponents 0..; invert coefficientwise. */
  Rational rel_bound = order.value + v;
  require(rel_bound >= 0, errc::truncation_insufficient, "inverse order below its lowest exponent");
  long long kmax = to_long(rat_floor(rel_bound * denom_));

  std::vector<std::pair<long long, Scalar>> a;
  a.reserve(terms_.size());
  for (const auto& [k, c] : terms_) {
    long long rk = k - vnum;
    if (rk > kmax) break;
    a.emplace_back(rk, c);
  }
  Scalar a0inv = a.front().second.inverse();
  std::vector<Scalar> b(static_cast<size_t>(kmax) + 1, Scalar::zero());
  b[0] = a0inv;
  for (long long e = 1; e <= kmax; ++e) {
    Scalar s = Scalar::zero();
    for (const auto& [k, c] : a) {
      if (k == 0) continue;
      if (k > e) break;
      const Scalar& be = b[static_cast<size_t>(e - k)];
      if (!be.is_zero()) s = s + c * be;
    }
    if (!s.is_zero()) b[static_cast<size_t>(e)] = -(a0inv * s);
  }

  QSeries r(denom_, order);
  for (long long e = 0; e <= kmax; ++e)
    if (!b[static_cast<size_t>(e)].is_zero()) r.terms_.emplace(e - vnum, b[static_cast<size_t>(e)]);
  r.prune_beyond_order();
  return r;
}

QSeries QSeries::truncated(const QOrder& order) const {
  QSeries r(denom_, qorder_min(order_, order));
  r.terms_ = terms_;
  r.prune_beyond_order();
  return r;
}

QSeries QSeries::with_order(const QOrder& order) const {
  QSeries r(denom_, order);
  r.terms_ = terms_;
  r.prune_beyond_order();
  return r;
}

QSeries QSeries::normalized() const {
  if (terms_.empty()) {
    QSeries r(1, order_);
    return r;
  }
  long long g = denom_;
  for (const auto& [k, c] : terms_) {
    g = std::gcd(g, k < 0 ? -k : k);
    if (g == 1) break;
  }
  if (g <= 1) return *this;
  QSeries r(static_cast<long>(denom_ / g), order_);
  for (const auto& [k, c] : terms_) r.terms_.emplace(k / g, c);
  return r;
}

bool QSeries::has_rational_coefficients() const {
  return std::all_of(terms_.begin(), terms_.end(),
                     [](const auto& t) { return t.second.is_rational(); });
}

Complex QSeries::eval_tau(const Complex& tau) const {
  static const double kTwoPi = 8.0 * std::atan(1.0);
  Complex sum(0.0, 0.0);
  for (const auto& [k, c] : terms_) {
    double e = static_cast<double>(k) / static_cast<double>(denom_);
    Complex phase = std::exp(Complex(0.0, kTwoPi) * tau * e);
    sum += c.to_complex() * phase;
  }
  return sum;
}

bool QSeries::operator==(const QSeries& rhs) const {
  QSeries a = normalized(), b = rhs.normalized();
  if (!(a.order_ == b.order_) || a.denom_ != b.denom_) return false;
  if (a.terms_.size() != b.terms_.size()) return false;
  auto ia = a.terms_.begin(), ib = b.terms_.begin();
  for (; ia != a.terms_.end(); ++ia, ++ib)
    if (ia->first != ib->first || !(ia->second == ib->second)) return false;
  return true;
}

bool agree_through_common_order(const QSeries& a, const QSeries& b) {
  return !first_difference(a, b).has_value();
}

std::optional<Rational> first_difference(const QSeries& a, const QSeries& b) {
  QOrder bound = qorder_min(a.order(), b.order());
  long d = to_long(lcm_int(a.denom(), b.denom()));
  std::map<long long, int> keys;
  long ma = d / a.denom(), mb = d / b.denom();
  for (const auto& [k, c] : a.terms()) keys[k * ma] = 1;
  for (const auto& [k, c] : b.terms()) keys[k * mb] = 1;
  for (const auto& [k, tag] : keys) {
    (void)tag;
    Rational e = rat(k, d);
    if (!qorder_le(e, bound)) break;
    Scalar ca = a.coefficient(e), cb = b.coefficient(e);
    if (ca.is_exact() != cb.is_exact()) {
      if (!approx_equal(ca.to_complex(), cb.to_complex(), 1e-9)) return e;
    } else if (!(ca == cb)) {
      return e;
    }
  }
  return std::nullopt;
}

}  // namespace qgenus
