#pragma once

#include <map>
#include <vector>

#include "qgenus/error.hpp"
#include "qgenus/wseries.hpp"

namespace qgenus {

/* Polynomial in several w variables, truncated per variable: exponent j runs
 * through cap[j] inclusive. Keys iterate lexicographically, so every walk
 * over the terms is deterministic. */
template <class R>
class MultiPoly {
public:
  explicit MultiPoly(std::vector<int> caps) : caps_(std::move(caps)) {}

  static MultiPoly constant(std::vector<int> caps, R c) {
    MultiPoly p(std::move(caps));
    if (!ws_is_zero(c)) p.terms_.emplace(std::vector<int>(p.caps_.size(), 0), std::move(c));
    return p;
  }
  static MultiPoly one(std::vector<int> caps) {
    return constant(std::move(caps), ws_from_rational(Rational(1), R()));
  }
  /* The variable w_j itself (zero if the cap forbids it). */
  static MultiPoly variable(std::vector<int> caps, size_t j) {
    MultiPoly p(std::move(caps));
    require(j < p.caps_.size(), errc::internal, "variable index out of range");
    if (p.caps_[j] >= 1) {
      std::vector<int> key(p.caps_.size(), 0);
      key[j] = 1;
      p.terms_.emplace(std::move(key), ws_from_rational(Rational(1), R()));
    }
    return p;
  }

  const std::vector<int>& caps() const { return caps_; }
  const std::map<std::vector<int>, R>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  R coefficient(const std::vector<int>& key) const {
    auto it = terms_.find(key);
    return it == terms_.end() ? R() : it->second;
  }

  MultiPoly operator+(const MultiPoly& rhs) const {
    check_shape(rhs);
    MultiPoly r = *this;
    for (const auto& [k, c] : rhs.terms_) r.accumulate(k, c);
    return r;
  }

  MultiPoly operator-() const {
    MultiPoly r = *this;
    for (auto& [k, c] : r.terms_) c = -c;
    return r;
  }

  MultiPoly operator-(const MultiPoly& rhs) const { return *this + (-rhs); }

  MultiPoly operator*(const MultiPoly& rhs) const {
    check_shape(rhs);
    MultiPoly r(caps_);
    for (const auto& [ka, ca] : terms_) {
      if (ws_is_zero(ca)) continue;
      for (const auto& [kb, cb] : rhs.terms_) {
        std::vector<int> k(caps_.size());
        bool ok = true;
        for (size_t j = 0; j < caps_.size(); ++j) {
          k[j] = ka[j] + kb[j];
          if (k[j] > caps_[j]) {
            ok = false;
            break;
          }
        }
        if (ok) r.accumulate(k, ca * cb);
      }
    }
    return r;
  }

  template <class S>
  MultiPoly scaled(const S& c) const {
    MultiPoly r(caps_);
    for (const auto& [k, v] : terms_) r.accumulate(k, v * c);
    return r;
  }

  MultiPoly pow(long e) const {
    require(e >= 0, errc::internal, "negative multivariate power");
    MultiPoly acc = one(caps_);
    MultiPoly base = *this;
    for (long k = e; k > 0; k >>= 1) {
      if (k & 1) acc = acc * base;
      if (k > 1) base = base * base;
    }
    return acc;
  }

private:
  void check_shape(const MultiPoly& rhs) const {
    require(caps_ == rhs.caps_, errc::internal, "multipoly cap mismatch");
  }

  void accumulate(const std::vector<int>& key, const R& c) {
    if (ws_is_zero(c)) return;
    auto it = terms_.find(key);
    if (it == terms_.end()) {
      terms_.emplace(key, c);
      return;
    }
    it->second = it->second + c;
    if (ws_is_zero(it->second)) terms_.erase(it);
  }

  std::vector<int> caps_;
  std::map<std::vector<int>, R> terms_;
};

/* g(sum_j c_j w_j) for a univariate power series g given by its coefficients
 * g[0..], built by incremental multiplication with the linear form. The
 * series must be regular (no negative exponents); truncation is by the caps. */
template <class R>
MultiPoly<R> compose_linear(const WSeries<R>& g, const std::vector<long>& form,
                            const std::vector<int>& caps) {
  require(g.is_zero() || g.lead() >= 0, errc::pole_in_composition,
          "composed series must be regular at the origin");
  require(form.size() == caps.size(), errc::internal, "linear form arity mismatch");
  long total_cap = 0;
  for (int c : caps) total_cap += c;

  MultiPoly<R> linear(caps);
  for (size_t j = 0; j < form.size(); ++j)
    if (form[j] != 0)
      linear = linear + MultiPoly<R>::variable(caps, j).scaled(ws_from_rational(Rational(form[j]), R()));

  long kmax = total_cap;
  if (g.top() < WSeries<R>::kTopInf) kmax = std::min(kmax, g.top());
  MultiPoly<R> acc(caps);
  MultiPoly<R> power = MultiPoly<R>::one(caps);
  for (long k = 0; k <= kmax; ++k) {
    if (k > 0) {
      power = power * linear;
      if (power.is_zero()) break;
    }
    R gk = g.coefficient(k);
    if (!ws_is_zero(gk)) acc = acc + power.scaled(gk);
  }
  return acc;
}

}  // namespace qgenus
