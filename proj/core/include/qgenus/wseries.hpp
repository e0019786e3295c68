#pragma once

#include <limits>
#include <vector>

#include "qgenus/error.hpp"
#include "qgenus/qseries.hpp"

namespace qgenus {

/* Coefficient-ring glue so the same Laurent-series code runs over exact
 * q-series coefficients and over plain complex numbers. */
inline bool ws_is_zero(const QSeries& c) { return c.is_zero(); }
inline bool ws_is_zero(const Complex& c) { return c == Complex(0.0, 0.0); }
inline QSeries ws_from_rational(const Rational& r, const QSeries&) {
  return QSeries::constant(Scalar(r));
}
inline Complex ws_from_rational(const Rational& r, const Complex&) {
  return Complex(rat_double(r), 0.0);
}
inline QSeries ws_scale_rat(const QSeries& c, const Rational& r) { return c.scaled_rat(r); }
inline Complex ws_scale_rat(const Complex& c, const Rational& r) { return c * rat_double(r); }
inline QSeries ws_inverse(const QSeries& c) { return c.inverse(); }
inline Complex ws_inverse(const Complex& c) {
  require(c != Complex(0.0, 0.0), errc::inversion_of_zero, "numeric coefficient is zero");
  return Complex(1.0, 0.0) / c;
}

/* Dense truncated Laurent series in w with coefficients in R. Exponents run
 * from a (possibly negative) lead through the faithful bound top, inclusive. */
template <class R>
class WSeries {
public:
  static constexpr long kTopInf = std::numeric_limits<long>::max() / 4;

  WSeries() : lead_(0), top_(kTopInf) {}

  static WSeries zero() { return WSeries(); }
  static WSeries constant(R c) {
    WSeries s;
    if (!ws_is_zero(c)) {
      s.coeffs_.push_back(std::move(c));
    }
    return s;
  }
  static WSeries monomial(R c, long k) {
    WSeries s = constant(std::move(c));
    s.lead_ = s.coeffs_.empty() ? 0 : k;
    return s;
  }
  static WSeries one() { return constant(ws_from_rational(Rational(1), R())); }

  long lead() const { return lead_; }
  long top() const { return top_; }
  bool is_zero() const { return coeffs_.empty(); }

  R coefficient(long k) const {
    if (k < lead_ || k >= lead_ + static_cast<long>(coeffs_.size())) return R();
    return coeffs_[static_cast<size_t>(k - lead_)];
  }

  /* Lowest exponent with a (structurally) nonzero coefficient. */
  long valuation() const {
    require(!coeffs_.empty(), errc::internal, "valuation of the zero series");
    return lead_;
  }

  WSeries operator-() const {
    WSeries r = *this;
    for (auto& c : r.coeffs_) c = -c;
    return r;
  }

  WSeries operator+(const WSeries& rhs) const {
    long top = std::min(top_, rhs.top_);
    if (coeffs_.empty()) return rhs.truncated(top);
    if (rhs.coeffs_.empty()) return truncated(top);
    long lo = std::min(lead_, rhs.lead_);
    long hi = std::min(top, std::max(upper(), rhs.upper()));
    WSeries r;
    r.lead_ = lo;
    r.top_ = top;
    if (hi >= lo) {
      r.coeffs_.assign(static_cast<size_t>(hi - lo + 1), R());
      for (long k = lo; k <= hi; ++k) r.coeffs_[static_cast<size_t>(k - lo)] = coefficient(k) + rhs.coefficient(k);
    }
    r.trim();
    return r;
  }

  WSeries operator-(const WSeries& rhs) const { return *this + (-rhs); }

  WSeries operator*(const WSeries& rhs) const {
    long top = kTopInf;
    auto neg_low = [](const WSeries& s) { return s.coeffs_.empty() ? 0L : std::min(s.lead_, 0L); };
    if (top_ < kTopInf) top = std::min(top, top_ + neg_low(rhs));
    if (rhs.top_ < kTopInf) top = std::min(top, rhs.top_ + neg_low(*this));
    WSeries r;
    r.top_ = top;
    if (coeffs_.empty() || rhs.coeffs_.empty()) return r;
    long lo = lead_ + rhs.lead_;
    long hi = std::min(top, upper() + rhs.upper());
    if (hi < lo) return r;
    r.lead_ = lo;
    r.coeffs_.assign(static_cast<size_t>(hi - lo + 1), R());
    for (size_t i = 0; i < coeffs_.size(); ++i) {
      if (ws_is_zero(coeffs_[i])) continue;
      long ka = lead_ + static_cast<long>(i);
      for (size_t j = 0; j < rhs.coeffs_.size(); ++j) {
        long k = ka + rhs.lead_ + static_cast<long>(j);
        if (k > hi) break;
        if (ws_is_zero(rhs.coeffs_[j])) continue;
        r.coeffs_[static_cast<size_t>(k - lo)] = r.coeffs_[static_cast<size_t>(k - lo)] + coeffs_[i] * rhs.coeffs_[j];
      }
    }
    r.trim();
    return r;
  }

  template <class S>
  WSeries scaled(const S& c) const {
    WSeries r = *this;
    for (auto& v : r.coeffs_) v = v * c;
    r.trim();
    return r;
  }

  WSeries scaled_rat(const Rational& c) const {
    WSeries r = *this;
    for (auto& v : r.coeffs_) v = ws_scale_rat(v, c);
    r.trim();
    return r;
  }

  /* Multiplication by the exact monomial w^dk. */
  WSeries shifted(long dk) const {
    WSeries r = *this;
    r.lead_ += dk;
    if (r.top_ < kTopInf) r.top_ += dk;
    return r;
  }

  WSeries truncated(long top) const {
    WSeries r = *this;
    r.top_ = std::min(r.top_, top);
    if (!r.coeffs_.empty() && r.upper() > r.top_) {
      long keep = r.top_ - r.lead_ + 1;
      if (keep <= 0)
        r.coeffs_.clear();
      else
        r.coeffs_.resize(static_cast<size_t>(keep));
    }
    r.trim();
    return r;
  }

  WSeries with_top(long top) const {
    WSeries r = truncated(top);
    r.top_ = top;
    return r;
  }

  WSeries pow(long e) const {
    require(e >= 0, errc::internal, "negative power needs an explicit inverse");
    WSeries acc = one();
    if (top_ < kTopInf) acc.top_ = top_;
    WSeries base = *this;
    for (long k = e; k > 0; k >>= 1) {
      if (k & 1) acc = acc * base;
      if (k > 1) base = base * base;
    }
    return acc;
  }

  /* Reciprocal; the leading coefficient must be a unit of R, which callers
   * know structurally (theta leads are nonvanishing at q = 0). */
  WSeries inverse() const {
    require(!coeffs_.empty(), errc::inversion_of_zero, "cannot invert the zero series");
    require(top_ < kTopInf || coeffs_.size() == 1, errc::internal,
            "inverting an exact w-series needs a truncation");
    long v = lead_;
    long top = top_ < kTopInf ? top_ - 2 * v : kTopInf;
    WSeries r;
    r.top_ = top;
    r.lead_ = -v;
    long n = top < kTopInf ? top + v : 0;  // relative faithful bound of the unit part
    if (n < 0) return r;
    R a0inv = ws_inverse(coeffs_[0]);
    std::vector<R> b(static_cast<size_t>(n) + 1, R());
    b[0] = a0inv;
    for (long e = 1; e <= n; ++e) {
      R s = R();
      long kmax = std::min<long>(e, static_cast<long>(coeffs_.size()) - 1);
      for (long k = 1; k <= kmax; ++k) {
        if (ws_is_zero(coeffs_[static_cast<size_t>(k)]) || ws_is_zero(b[static_cast<size_t>(e - k)])) continue;
        s = s + coeffs_[static_cast<size_t>(k)] * b[static_cast<size_t>(e - k)];
      }
      b[static_cast<size_t>(e)] = -(a0inv * s);
    }
    r.coeffs_ = std::move(b);
    r.trim();
    return r;
  }

  /* d/dw. */
  WSeries derivative() const {
    WSeries r;
    r.top_ = top_ < kTopInf ? top_ - 1 : kTopInf;
    r.lead_ = lead_ - 1;
    r.coeffs_.reserve(coeffs_.size());
    for (size_t i = 0; i < coeffs_.size(); ++i)
      r.coeffs_.push_back(ws_scale_rat(coeffs_[i], Rational(lead_ + static_cast<long>(i))));
    r.trim();
    if (!r.coeffs_.empty() && r.upper() > r.top_) return r.truncated(r.top_);
    return r;
  }

  /* w -> m w for nonzero rational m; exponent k picks up m^k. */
  WSeries compose_scale(const Rational& m) const {
    require(m != 0, errc::invalid_config, "scale factor must be nonzero");
    WSeries r = *this;
    for (size_t i = 0; i < r.coeffs_.size(); ++i) {
      long k = r.lead_ + static_cast<long>(i);
      r.coeffs_[i] = ws_scale_rat(r.coeffs_[i], pow_rat(m, k));
    }
    return r;
  }

private:
  long upper() const { return lead_ + static_cast<long>(coeffs_.size()) - 1; }

  void trim() {
    while (!coeffs_.empty() && ws_is_zero(coeffs_.back())) coeffs_.pop_back();
    size_t skip = 0;
    while (skip < coeffs_.size() && ws_is_zero(coeffs_[skip])) ++skip;
    if (skip > 0) {
      coeffs_.erase(coeffs_.begin(), coeffs_.begin() + static_cast<long>(skip));
      lead_ += static_cast<long>(skip);
    }
    if (coeffs_.empty()) lead_ = 0;
  }

  long lead_;
  std::vector<R> coeffs_;
  long top_;
};

/* e^{a w} through w^top, coefficients a^k / k!. */
template <class R>
WSeries<R> exp_w(const Rational& a, long top) {
  Rational ak(1);
  Rational fact(1);
  WSeries<R> acc = WSeries<R>::zero().with_top(top);
  for (long k = 0; k <= top; ++k) {
    if (k > 0) {
      ak *= a;
      fact *= k;
    }
    acc = acc + WSeries<R>::monomial(ws_from_rational(ak / fact, R()), k).with_top(top);
  }
  return acc;
}

}  // namespace qgenus
