#include "qgenus/lg.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <optional>
#include <set>
#include <tuple>
#include <utility>
#include <vector>

#include "qgenus/error.hpp"

namespace qgenus {

namespace {

constexpr long kDenomLimit = 1000000;

long long numerator_on2(const Rational& e, long qd, long yd) {
  /* only used with exponents already on the lattice */
  (void)yd;
  Rational scaled = e * qd;
  scaled.canonicalize();
  require(is_integer(scaled), errc::internal, "exponent off the common lattice");
  return to_long(rat_num(scaled));
}

std::pair<long long, long long> rebase_key(const std::pair<long long, long long>& k,
                                           long fq, long fy) {
  return {k.first * fq, k.second * fy};
}

}  /* namespace */

/* ---------- QYSeries ---------- */

QYSeries::QYSeries() : qden_(1), yden_(1), order_(QOrder::at(-1)) {}

QYSeries QYSeries::zero() { return QYSeries(); }

QYSeries QYSeries::constant(const Scalar& c) {
  QYSeries s;
  s.order_ = QOrder::inf();
  if (!c.is_zero()) s.terms_.emplace(Key{0, 0}, c);
  return s;
}

QYSeries QYSeries::one() { return constant(Scalar::one()); }

QYSeries QYSeries::monomial(const Scalar& c, const Rational& qexp, const Rational& yexp) {
  return one().shifted_scaled(c, qexp, yexp);
}

QYSeries QYSeries::from_terms(long qden, long yden,
                              const std::map<Key, Scalar>& terms, QOrder order) {
  require(qden >= 1 && yden >= 1, errc::internal, "exponent denominators must be positive");
  QYSeries s;
  s.qden_ = qden;
  s.yden_ = yden;
  s.order_ = order;
  for (const auto& [k, c] : terms) {
    if (c.is_zero()) continue;
    if (!qorder_le(Rational(k.first, qden), order)) continue;
    s.terms_.emplace(k, c);
  }
  return s;
}

bool QYSeries::is_zero() const { return terms_.empty(); }

Scalar QYSeries::coefficient(const Rational& qexp, const Rational& yexp) const {
  Rational qs = qexp * qden_;
  qs.canonicalize();
  Rational ys = yexp * yden_;
  ys.canonicalize();
  if (!is_integer(qs) || !is_integer(ys)) return Scalar::zero();
  auto it = terms_.find(Key{to_long(rat_num(qs)), to_long(rat_num(ys))});
  return it == terms_.end() ? Scalar::zero() : it->second;
}

std::map<Rational, Scalar> QYSeries::y_slice(const Rational& qexp) const {
  std::map<Rational, Scalar> out;
  Rational qs = qexp * qden_;
  qs.canonicalize();
  if (!is_integer(qs)) return out;
  const long long slot = to_long(rat_num(qs));
  for (auto it = terms_.lower_bound(Key{slot, std::numeric_limits<long long>::min()});
       it != terms_.end() && it->first.first == slot; ++it)
    out.emplace(rat(it->first.second, yden_), it->second);
  return out;
}

bool QYSeries::has_integer_y_exponents() const {
  for (const auto& [k, c] : terms_)
    if (k.second % yden_ != 0) return false;
  return true;
}

void QYSeries::insert_term(const Key& k, const Scalar& c) {
  if (c.is_zero()) return;
  if (!qorder_le(Rational(k.first, qden_), order_)) return;
  auto it = terms_.find(k);
  if (it == terms_.end()) {
    terms_.emplace(k, c);
    return;
  }
  it->second = it->second + c;
  if (it->second.is_zero()) terms_.erase(it);
}

QYSeries QYSeries::operator-() const {
  QYSeries s = *this;
  for (auto& [k, c] : s.terms_) c = -c;
  return s;
}

QYSeries QYSeries::operator+(const QYSeries& other) const {
  const long qd = lcm_long(qden_, other.qden_);
  const long yd = lcm_long(yden_, other.yden_);
  require(qd <= kDenomLimit && yd <= kDenomLimit, errc::internal,
          "exponent denominator overflow");
  QYSeries s;
  s.qden_ = qd;
  s.yden_ = yd;
  s.order_ = qorder_min(order_, other.order_);
  const long aq = qd / qden_, ay = yd / yden_;
  const long bq = qd / other.qden_, by = yd / other.yden_;
  for (const auto& [k, c] : terms_) s.insert_term(rebase_key(k, aq, ay), c);
  for (const auto& [k, c] : other.terms_) s.insert_term(rebase_key(k, bq, by), c);
  return s;
}

QYSeries QYSeries::operator-(const QYSeries& other) const { return *this + (-other); }

QYSeries QYSeries::operator*(const QYSeries& other) const {
  const long qd = lcm_long(qden_, other.qden_);
  const long yd = lcm_long(yden_, other.yden_);
  require(qd <= kDenomLimit && yd <= kDenomLimit, errc::internal,
          "exponent denominator overflow");
  QYSeries s;
  s.qden_ = qd;
  s.yden_ = yd;
  /* validity of the product: each factor's tail is blurred by the other's
   * lowest q-exponent (clamped at zero, matching the plain series rule) */
  auto low_or_zero = [](const QYSeries& f) {
    Rational low(0);
    if (!f.terms_.empty()) {
      Rational l = rat(f.terms_.begin()->first.first, f.qden_);
      if (l < 0) low = l;
    }
    return low;
  };
  s.order_ = qorder_min(qorder_shift(order_, low_or_zero(other)),
                        qorder_shift(other.order_, low_or_zero(*this)));
  const long aq = qd / qden_, ay = yd / yden_;
  const long bq = qd / other.qden_, by = yd / other.yden_;
  for (const auto& [ka, ca] : terms_) {
    for (const auto& [kb, cb] : other.terms_) {
      Key k{ka.first * aq + kb.first * bq, ka.second * ay + kb.second * by};
      if (!qorder_le(Rational(k.first, qd), s.order_)) break;
      s.insert_term(k, ca * cb);
    }
  }
  return s;
}

QYSeries QYSeries::scaled(const Scalar& c) const {
  QYSeries s;
  s.qden_ = qden_;
  s.yden_ = yden_;
  s.order_ = order_;
  if (c.is_zero()) return s;
  for (const auto& [k, v] : terms_) {
    Scalar w = v * c;
    if (!w.is_zero()) s.terms_.emplace(k, w);
  }
  return s;
}

QYSeries QYSeries::shifted_scaled(const Scalar& c, const Rational& qexp,
                                  const Rational& yexp) const {
  const long qd = lcm_long(qden_, to_long(rat_den(qexp)));
  const long yd = lcm_long(yden_, to_long(rat_den(yexp)));
  require(qd <= kDenomLimit && yd <= kDenomLimit, errc::internal,
          "exponent denominator overflow");
  QYSeries s;
  s.qden_ = qd;
  s.yden_ = yd;
  s.order_ = qorder_shift(order_, qexp);
  if (c.is_zero()) return s;
  const long long dq = numerator_on2(qexp, qd, yd);
  Rational ys = yexp * yd;
  ys.canonicalize();
  const long long dy = to_long(rat_num(ys));
  const long aq = qd / qden_, ay = yd / yden_;
  for (const auto& [k, v] : terms_) {
    Scalar w = v * c;
    if (!w.is_zero()) s.terms_.emplace(Key{k.first * aq + dq, k.second * ay + dy}, w);
  }
  return s;
}

QYSeries QYSeries::truncated(QOrder order) const {
  QYSeries s;
  s.qden_ = qden_;
  s.yden_ = yden_;
  s.order_ = qorder_min(order_, order);
  for (const auto& [k, c] : terms_)
    if (qorder_le(Rational(k.first, qden_), s.order_)) s.terms_.emplace(k, c);
  return s;
}

QYSeries QYSeries::normalized() const {
  QYSeries s = *this;
  auto shrink = [](long den, auto key_of, auto& terms, auto rewrite) {
    Int g(den);
    for (const auto& [k, c] : terms) {
      (void)c;
      g = gcd(g, Int(key_of(k)));
      if (g == 1) break;
    }
    long f = to_long(g);
    if (f > 1) rewrite(f);
    return den / std::max(f, 1L);
  };
  (void)shrink;
  Int gq(qden_), gy(yden_);
  for (const auto& [k, c] : terms_) {
    (void)c;
    gq = gcd(gq, Int(k.first));
    gy = gcd(gy, Int(k.second));
  }
  const long fq = to_long(gq), fy = to_long(gy);
  if (fq > 1 || fy > 1) {
    std::map<Key, Scalar> rebased;
    for (const auto& [k, c] : terms_)
      rebased.emplace(Key{k.first / std::max(fq, 1L), k.second / std::max(fy, 1L)}, c);
    s.terms_ = std::move(rebased);
    s.qden_ = qden_ / std::max(fq, 1L);
    s.yden_ = yden_ / std::max(fy, 1L);
  }
  return s;
}

QSeries QYSeries::at_y_one() const {
  std::map<long long, Scalar> rows;
  for (const auto& [k, c] : terms_) {
    auto it = rows.find(k.first);
    if (it == rows.end())
      rows.emplace(k.first, c);
    else
      it->second = it->second + c;
  }
  for (auto it = rows.begin(); it != rows.end();)
    it = it->second.is_zero() ? rows.erase(it) : std::next(it);
  return QSeries::from_terms(qden_, rows, order_);
}

Complex QYSeries::eval(const Complex& tau, const Complex& z) const {
  const Complex two_pi_i(0.0, 2.0 * std::acos(-1.0));
  Complex acc(0.0, 0.0);
  for (const auto& [k, c] : terms_) {
    Complex ex = two_pi_i * (tau * (static_cast<double>(k.first) / qden_) +
                             z * (static_cast<double>(k.second) / yden_));
    acc += c.to_complex() * std::exp(ex);
  }
  return acc;
}

bool QYSeries::operator==(const QYSeries& other) const {
  QYSeries a = normalized();
  QYSeries b = other.normalized();
  if (!(a.order_ == b.order_)) return false;
  if (a.qden_ != b.qden_ || a.yden_ != b.yden_) return false;
  if (a.terms_.size() != b.terms_.size()) return false;
  auto it = a.terms_.begin();
  auto jt = b.terms_.begin();
  for (; it != a.terms_.end(); ++it, ++jt) {
    if (it->first != jt->first) return false;
    if (!(it->second == jt->second)) return false;
  }
  return true;
}

bool QYSeries::operator!=(const QYSeries& other) const { return !(*this == other); }

bool agree_through_common_q_order(const QYSeries& a, const QYSeries& b) {
  QOrder common = qorder_min(a.order(), b.order());
  return (a - b).truncated(common).is_zero();
}

/* ---------- model validation ---------- */

void validate_lg(const LGModel& model) {
  require(!model.charges.empty(), errc::invalid_config,
          "model needs at least one coordinate");
  for (const auto& q : model.charges)
    require(q > 0 && q < 1, errc::invalid_config,
            "charges must lie strictly between 0 and 1");
  require(!model.group.empty(), errc::invalid_config, "group must be nonempty");
  const std::size_t n = model.charges.size();
  std::set<std::vector<Rational>> rows;
  std::vector<std::vector<Rational>> reduced;
  for (const auto& row : model.group) {
    require(row.size() == n, errc::invalid_config,
            "group element arity does not match the coordinate count");
    std::vector<Rational> r;
    r.reserve(n);
    for (const auto& e : row) r.push_back(frac_mod1(e));
    require(rows.insert(r).second, errc::invalid_config,
            "group elements must be distinct mod 1");
    reduced.push_back(std::move(r));
  }
  require(rows.count(std::vector<Rational>(n, Rational(0))) == 1, errc::invalid_config,
          "group must contain the identity");
  for (const auto& a : reduced) {
    for (const auto& b : reduced) {
      std::vector<Rational> sum;
      sum.reserve(n);
      for (std::size_t i = 0; i < n; ++i) sum.push_back(frac_mod1(a[i] + b[i]));
      require(rows.count(sum) == 1, errc::invalid_config,
              "group is not closed under addition mod 1");
    }
  }
}

LGModel LGModel::cyclic(std::vector<Rational> charges,
                        const std::vector<Rational>& generator, long order) {
  require(order >= 1, errc::invalid_config, "cyclic group order must be positive");
  require(generator.size() == charges.size(), errc::invalid_config,
          "generator arity does not match the coordinate count");
  LGModel m;
  m.charges = std::move(charges);
  m.group.reserve(static_cast<std::size_t>(order));
  for (long j = 0; j < order; ++j) {
    std::vector<Rational> row;
    row.reserve(generator.size());
    for (const auto& g : generator) row.push_back(frac_mod1(Rational(j) * g));
    m.group.push_back(std::move(row));
  }
  validate_lg(m);
  return m;
}

bool cy_type_condition(const LGModel& model) {
  Rational s(0);
  for (const auto& q : model.charges) s += q;
  if (!is_integer(s)) return false;
  for (const auto& row : model.group) {
    Rational r(0);
    for (const auto& e : row) r += frac_mod1(e);
    if (!is_integer(r)) return false;
  }
  return true;
}

/* ---------- reduced theta blocks ---------- */

namespace {

/* Laurent polynomials in u = y^(1/M). */
using YPoly = std::map<long, Scalar>;

void yacc(YPoly& p, long e, const Scalar& c) {
  if (c.is_zero()) return;
  auto it = p.find(e);
  if (it == p.end()) {
    p.emplace(e, c);
    return;
  }
  it->second = it->second + c;
  if (it->second.is_zero()) p.erase(it);
}

YPoly ymul(const YPoly& a, const YPoly& b) {
  YPoly out;
  for (const auto& [ea, ca] : a)
    for (const auto& [eb, cb] : b) yacc(out, ea + eb, ca * cb);
  return out;
}

YPoly yneg(const YPoly& a) {
  YPoly out;
  for (const auto& [e, c] : a) out.emplace(e, -c);
  return out;
}

void yadd_into(YPoly& a, const YPoly& b) {
  for (const auto& [e, c] : b) yacc(a, e, c);
}

/* Exact Laurent quotient; empty optional when the division leaves a
 * remainder.  An exact quotient can never need an exponent below
 * low(num) - low(den), which bounds the loop. */
std::optional<YPoly> ydiv(const YPoly& num, const YPoly& den) {
  require(!den.empty(), errc::internal, "division by the zero polynomial");
  if (num.empty()) return YPoly{};
  const long dtop = std::prev(den.end())->first;
  const long dlow = den.begin()->first;
  const long qlow = num.begin()->first - dlow;
  const Scalar dlead_inv = std::prev(den.end())->second.inverse();
  YPoly rem = num, quot;
  while (!rem.empty()) {
    const long rtop = std::prev(rem.end())->first;
    const long qe = rtop - dtop;
    if (qe < qlow) return std::nullopt;
    const Scalar qc = std::prev(rem.end())->second * dlead_inv;
    yacc(quot, qe, qc);
    for (const auto& [e, c] : den) yacc(rem, e + qe, -(c * qc));
  }
  return quot;
}

/* e^{2 pi i phase} q^{qe} u^{ue} */
struct Mono {
  Rational phase = Rational(0);
  Rational qe = Rational(0);
  long ue = 0;
};

void mono_mul(Mono& m, const Rational& phase, const Rational& qe, long ue) {
  m.phase += phase;
  m.qe += qe;
  m.ue += ue;
}

void mono_mul(Mono& m, const Mono& o, long count) {
  m.phase += Rational(count) * o.phase;
  m.qe += Rational(count) * o.qe;
  m.ue += count * o.ue;
}

Mono mono_inverse(const Mono& m) { return Mono{-m.phase, -m.qe, -m.ue}; }

/* u^d - e^{2 pi i phase}, with d > 0 or (d == 0 and phase != 0) */
struct BinKey {
  long d = 0;
  Rational phase = Rational(0);
  bool operator<(const BinKey& o) const {
    if (d != o.d) return d < o.d;
    return phase < o.phase;
  }
};

/* 1 - q^{qe} e^{2 pi i phase} u^{ue}, qe > 0 */
struct FactorSym {
  Rational qe;
  Rational phase;
  long ue;
};

struct BlockSym {
  bool zero = false;
  Mono mono;
  std::optional<BinKey> bin;
  std::vector<FactorSym> fac;
};

struct Ctx {
  long field;       /* cyclotomic order of the phase constants */
  long dq;          /* q-exponent denominator */
  long m;           /* u = y^(1/m) */
  Rational window;  /* inclusive q-order of the computation */
};

/* Reduced product form of theta1 at alpha*z + x + t*tau, up to the common
 * eta^3 normalization that cancels in every ratio:
 *
 *   (y_v^{1/2} - y_v^{-1/2}) prod_{k>=1} (1 - q^k y_v)(1 - q^k y_v^{-1}),
 *   y_v = e^{2 pi i x} q^t u^{alpha m}.
 *
 * The t direction is first brought into [0,1) by the exact quasi-periodicity
 * RP(v + tau) = -q^{-1/2} y_v^{-1} RP(v), folding each step's monomial
 * multiplier into the leading Mono.  What remains is a single monomial, at
 * most one q^0 binomial slice (u^d - const), and unit factors of strictly
 * positive q-order listed up to the window. */
BlockSym make_block(const Rational& alpha, const Rational& x, Rational t, const Ctx& ctx,
                    bool factors) {
  BlockSym b;
  Rational am = alpha * ctx.m;
  am.canonicalize();
  require(is_integer(am), errc::internal, "z-coefficient off the u-lattice");
  const long A = to_long(rat_num(am));
  require(A % 2 == 0, errc::internal, "u-lattice must be even");
  while (t >= 1) {
    t -= 1;
    mono_mul(b.mono, rat(1, 2) - x, rat(-1, 2) - t, -A);
  }
  while (t < 0) {
    mono_mul(b.mono, rat(1, 2) + x, rat(1, 2) + t, A);
    t += 1;
  }
  if (t > 0) {
    /* leading monomial -y_v^{-1/2}; every surviving factor has q-order > 0 */
    mono_mul(b.mono, rat(1, 2) - x / 2, -t / 2, -A / 2);
    if (!factors) return b;
    if (t <= ctx.window) b.fac.push_back({t, x, A});
    for (long k = 1; Rational(k) - t <= ctx.window; ++k) {
      if (Rational(k) + t <= ctx.window) b.fac.push_back({Rational(k) + t, x, A});
      b.fac.push_back({Rational(k) - t, -x, -A});
    }
  } else {
    /* q^0 slice is the binomial u^|A| - e^{2 pi i (sign) x} */
    if (A >= 0) {
      mono_mul(b.mono, x / 2, Rational(0), -A / 2);
      b.bin = BinKey{A, frac_mod1(-x)};
    } else {
      mono_mul(b.mono, rat(1, 2) - x / 2, Rational(0), A / 2);
      b.bin = BinKey{-A, frac_mod1(x)};
    }
    if (b.bin->d == 0 && b.bin->phase == 0) {
      b.zero = true;
      return b;
    }
    if (!factors) return b;
    for (long k = 1; Rational(k) <= ctx.window; ++k) {
      b.fac.push_back({Rational(k), x, A});
      b.fac.push_back({Rational(k), -x, -A});
    }
  }
  return b;
}

/* ---------- q-slot series over a coefficient ring ---------- */

struct RingY {
  using C = YPoly;
  static C one() { return YPoly{{0, Scalar::one()}}; }
  static bool is_zero(const C& c) { return c.empty(); }
  static bool is_one(const C& c) {
    return c.size() == 1 && c.begin()->first == 0 && c.begin()->second.is_one();
  }
  static C mul(const C& a, const C& b) { return ymul(a, b); }
  static void acc(C& a, const C& b) { yadd_into(a, b); }
  static C neg(const C& a) { return yneg(a); }
};

struct RingC {
  using C = Complex;
  static C one() { return Complex(1.0, 0.0); }
  static bool is_zero(const C& c) { return c == Complex(0.0, 0.0); }
  static bool is_one(const C& c) { return c == Complex(1.0, 0.0); }
  static C mul(const C& a, const C& b) { return a * b; }
  static void acc(C& a, const C& b) { a += b; }
  static C neg(const C& a) { return -a; }
};

template <class R>
using Ser = std::map<long long, typename R::C>;

template <class R>
void ser_acc(Ser<R>& a, long long s, const typename R::C& v) {
  if (R::is_zero(v)) return;
  auto it = a.find(s);
  if (it == a.end()) {
    a.emplace(s, v);
    return;
  }
  R::acc(it->second, v);
  if (R::is_zero(it->second)) a.erase(it);
}

/* a *= (1 - m q^{ds}) truncated at cap */
template <class R>
void ser_apply_factor(Ser<R>& a, long long ds, const typename R::C& m, long long cap) {
  require(ds > 0, errc::internal, "unit factor must have positive q-order");
  std::vector<std::pair<long long, typename R::C>> adds;
  for (const auto& [s, c] : a)
    if (s + ds <= cap) adds.emplace_back(s + ds, R::neg(R::mul(c, m)));
  for (auto& [s, v] : adds) ser_acc<R>(a, s, v);
}

template <class R>
Ser<R> ser_mul(const Ser<R>& a, const Ser<R>& b, long long cap) {
  Ser<R> out;
  for (const auto& [sa, ca] : a) {
    for (const auto& [sb, cb] : b) {
      if (sa + sb > cap) break;
      ser_acc<R>(out, sa + sb, R::mul(ca, cb));
    }
  }
  return out;
}

template <class R>
Ser<R> ser_pow(const Ser<R>& base, int e, long long cap) {
  require(e >= 1, errc::internal, "series power wants a positive exponent");
  Ser<R> acc = base;
  for (int i = 1; i < e; ++i) acc = ser_mul<R>(acc, base, cap);
  return acc;
}

/* Reciprocal of a unit series whose q^0 coefficient is exactly one.  Slots
 * are filled in ascending order through the sparse support closure of the
 * tail, so gaps cost nothing. */
template <class R>
Ser<R> ser_inverse(const Ser<R>& u, long long cap) {
  auto it0 = u.find(0);
  require(it0 != u.end() && R::is_one(it0->second), errc::internal,
          "inverse wants a unit series");
  Ser<R> v;
  v.emplace(0, R::one());
  std::set<long long> cand;
  for (const auto& [k, c] : u) {
    (void)c;
    if (k > 0 && k <= cap) cand.insert(k);
  }
  while (!cand.empty()) {
    const long long s = *cand.begin();
    cand.erase(cand.begin());
    typename R::C acc{};
    for (const auto& [k, uk] : u) {
      if (k <= 0) continue;
      if (k > s) break;
      auto jt = v.find(s - k);
      if (jt != v.end()) R::acc(acc, R::mul(uk, jt->second));
    }
    if (!R::is_zero(acc)) {
      v.emplace(s, R::neg(acc));
      for (const auto& [k, c] : u) {
        (void)c;
        if (k > 0 && s + k <= cap) cand.insert(s + k);
      }
    }
  }
  return v;
}

/* ---------- coefficient environments ---------- */

struct ExactEnv {
  const Ctx* ctx;
  YPoly coeff(const Rational& phase, long ue) const {
    return YPoly{{ue, Scalar::root_of_unity(frac_mod1(phase), ctx->field)}};
  }
  Scalar phase_scalar(const Rational& phase) const {
    return Scalar::root_of_unity(frac_mod1(phase), ctx->field);
  }
};

struct NumEnv {
  const Ctx* ctx;
  Complex z;
  Complex coeff(const Rational& phase, long ue) const {
    const double two_pi = 2.0 * std::acos(-1.0);
    Complex ex = Complex(0.0, 1.0) * two_pi *
                 (Complex(rat_double(phase), 0.0) + z * (static_cast<double>(ue) / ctx->m));
    return std::exp(ex);
  }
};

template <class R, class Env>
Ser<R> build_unit(const BlockSym& b, const Env& env, const Ctx& ctx, long long cap) {
  Ser<R> u;
  u.emplace(0, R::one());
  for (const auto& f : b.fac) {
    const long long ds = numerator_on2(f.qe, ctx.dq, ctx.m);
    if (ds > cap) continue;
    ser_apply_factor<R>(u, ds, env.coeff(f.phase, f.ue), cap);
  }
  return u;
}

/* ---------- exact term assembly ---------- */

YPoly bin_poly(const BinKey& k, const Ctx& ctx) {
  YPoly p;
  p.emplace(k.d, Scalar::one());
  yacc(p, 0, -Scalar::root_of_unity(k.phase, ctx.field));
  return p;
}

struct SectorFrac {
  Ser<RingY> ser;               /* numerator, monomial already applied */
  std::map<BinKey, int> den;    /* residual symbolic binomial denominator */
};

struct BlockEntry {
  BlockSym sym;
  Ser<RingY> unit;
  std::optional<Ser<RingY>> inv;
};

using BlockKey = std::tuple<Rational, Rational, Rational>;
using BlockCache = std::map<BlockKey, BlockEntry>;

BlockEntry& cached_block(BlockCache& cache, const Rational& alpha, const Rational& x,
                         const Rational& t, const Ctx& ctx, long long cap) {
  const BlockKey key{alpha, x, t};
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  BlockEntry e;
  e.sym = make_block(alpha, x, t, ctx, true);
  if (!e.sym.zero) e.unit = build_unit<RingY>(e.sym, ExactEnv{&ctx}, ctx, cap);
  return cache.emplace(key, std::move(e)).first->second;
}

const Ser<RingY>& cached_inverse(BlockEntry& e, long long cap) {
  if (!e.inv) e.inv = ser_inverse<RingY>(e.unit, cap);
  return *e.inv;
}

void apply_mono_exact(Ser<RingY>& ser, const Mono& mono, const Ctx& ctx, long long cap) {
  const long long ds = numerator_on2(mono.qe, ctx.dq, ctx.m);
  const Scalar c = Scalar::root_of_unity(frac_mod1(mono.phase), ctx.field);
  Ser<RingY> out;
  for (const auto& [s, p] : ser) {
    if (s + ds > cap) continue;
    YPoly q;
    for (const auto& [e, coef] : p) q.emplace(e + mono.ue, coef * c);
    out.emplace(s + ds, std::move(q));
  }
  ser = std::move(out);
}

/* Divide every slot by b; false when any slot fails to divide exactly. */
bool try_divide(Ser<RingY>& ser, const YPoly& b) {
  Ser<RingY> out;
  for (const auto& [s, p] : ser) {
    auto q = ydiv(p, b);
    if (!q) return false;
    if (!q->empty()) out.emplace(s, std::move(*q));
  }
  ser = std::move(out);
  return true;
}

struct TermArgs {
  /* each entry: alpha, x, t with a repetition count */
  std::vector<std::pair<std::array<Rational, 3>, int>> num, den;
  Mono prefactor;
};

/* Net q-exponent of the term's full monomial; decides how much slack the
 * window needs before truncation. */
Rational term_net_qe(const TermArgs& a, const Ctx& ctx) {
  Rational net = a.prefactor.qe;
  for (const auto& [arg, c] : a.num) {
    BlockSym b = make_block(arg[0], arg[1], arg[2], ctx, false);
    net += Rational(c) * b.mono.qe;
  }
  for (const auto& [arg, c] : a.den) {
    BlockSym b = make_block(arg[0], arg[1], arg[2], ctx, false);
    net -= Rational(c) * b.mono.qe;
  }
  return net;
}

/* One ratio term as a fraction: unit-series numerator times residual
 * binomial denominators.  Empty optional means the term is identically
 * zero; a vanishing denominator block reports instead of regularizing. */
std::optional<SectorFrac> term_fraction(const TermArgs& a, const Ctx& ctx,
                                        BlockCache& cache, long long build_cap,
                                        long long final_cap) {
  Mono total = a.prefactor;
  std::map<BinKey, int> num_bins;
  SectorFrac frac;
  std::vector<std::pair<const Ser<RingY>*, int>> chain;
  for (const auto& [arg, c] : a.den) {
    BlockEntry& e = cached_block(cache, arg[0], arg[1], arg[2], ctx, build_cap);
    require(!e.sym.zero, errc::denominator_vanishes,
            "a denominator theta factor vanishes identically");
    mono_mul(total, mono_inverse(e.sym.mono), c);
    if (e.sym.bin) frac.den[*e.sym.bin] += c;
    chain.emplace_back(&cached_inverse(e, build_cap), c);
  }
  for (const auto& [arg, c] : a.num) {
    BlockEntry& e = cached_block(cache, arg[0], arg[1], arg[2], ctx, build_cap);
    if (e.sym.zero) return std::nullopt;
    mono_mul(total, e.sym.mono, c);
    if (e.sym.bin) num_bins[*e.sym.bin] += c;
    chain.emplace_back(&e.unit, c);
  }
  Ser<RingY> ser;
  ser.emplace(0, RingY::one());
  for (const auto& [s, c] : chain) ser = ser_mul<RingY>(ser, ser_pow<RingY>(*s, c, build_cap), build_cap);
  for (const auto& [k, c] : num_bins) {
    YPoly p = bin_poly(k, ctx);
    YPoly pc = p;
    for (int i = 1; i < c; ++i) pc = ymul(pc, p);
    for (auto& [s, q] : ser) q = ymul(q, pc);
  }
  apply_mono_exact(ser, total, ctx, final_cap);
  /* opportunistic exact division shrinks the residual denominator early */
  for (auto it = frac.den.begin(); it != frac.den.end();) {
    const YPoly p = bin_poly(it->first, ctx);
    while (it->second > 0 && try_divide(ser, p)) --it->second;
    it = it->second == 0 ? frac.den.erase(it) : std::next(it);
  }
  frac.ser = std::move(ser);
  return frac;
}

/* Sum of fractions over the max-multiset common denominator, then one exact
 * division.  Polynomiality of the result is a structural invariant; failure
 * is reported, never patched. */
Ser<RingY> sum_fractions(std::vector<SectorFrac>& fracs, const Ctx& ctx, errc on_fail) {
  std::map<BinKey, int> common;
  for (const auto& f : fracs)
    for (const auto& [k, c] : f.den)
      common[k] = std::max(common[k], c);
  Ser<RingY> total;
  for (auto& f : fracs) {
    YPoly mult{{0, Scalar::one()}};
    for (const auto& [k, c] : common) {
      auto it = f.den.find(k);
      const int deficit = c - (it == f.den.end() ? 0 : it->second);
      const YPoly p = bin_poly(k, ctx);
      for (int i = 0; i < deficit; ++i) mult = ymul(mult, p);
    }
    if (RingY::is_one(mult)) {
      for (auto& [s, p] : f.ser) ser_acc<RingY>(total, s, p);
    } else {
      for (auto& [s, p] : f.ser) ser_acc<RingY>(total, s, ymul(p, mult));
    }
  }
  for (const auto& [k, c] : common) {
    const YPoly p = bin_poly(k, ctx);
    for (int i = 0; i < c; ++i)
      require(try_divide(total, p), on_fail,
              "the y-direction does not close into a Laurent polynomial");
  }
  return total;
}

QYSeries emit(const Ser<RingY>& ser, const Ctx& ctx, long T, const Scalar& scale) {
  std::map<QYSeries::Key, Scalar> terms;
  for (const auto& [s, p] : ser)
    for (const auto& [e, c] : p) terms.emplace(QYSeries::Key{s, e}, c * scale);
  return QYSeries::from_terms(ctx.dq, ctx.m, terms, QOrder::at(T)).normalized();
}

/* ---------- shared model context ---------- */

long lcm_denoms(long seed, const std::vector<Rational>& vals) {
  Int acc(seed);
  for (const auto& v : vals) acc = lcm_int(acc, rat_den(v));
  return to_long(acc);
}

Ctx model_ctx(const LGModel& model, long T) {
  std::vector<Rational> all;
  for (const auto& q : model.charges) all.push_back(q);
  for (const auto& row : model.group)
    for (const auto& e : row) all.push_back(frac_mod1(e));
  Ctx ctx;
  ctx.field = 2 * lcm_denoms(1, all);
  ctx.dq = ctx.field;
  ctx.m = ctx.field;
  ctx.window = Rational(T);
  require(ctx.field <= kDenomLimit, errc::invalid_config,
          "model denominators are too large");
  return ctx;
}

TermArgs sector_args(const LGModel& model, const std::vector<Rational>& r1,
                     const std::vector<Rational>& r2, const Ctx& ctx) {
  TermArgs a;
  std::map<std::array<Rational, 3>, int> num, den;
  long pre_ue = 0;
  for (std::size_t i = 0; i < model.charges.size(); ++i) {
    const Rational& q = model.charges[i];
    const Rational x = r1[i], t = r2[i];
    num[{Rational(1) - q, -x, -t}] += 1;
    den[{q, x, t}] += 1;
    Rational tm = t * ctx.m;
    tm.canonicalize();
    pre_ue -= to_long(rat_num(tm));
  }
  a.num.assign(num.begin(), num.end());
  a.den.assign(den.begin(), den.end());
  a.prefactor = Mono{Rational(0), Rational(0), pre_ue};
  return a;
}

void check_y_lattice(const QYSeries& s, const LGModel& model) {
  if (!cy_type_condition(model)) return;
  /* integral charge and rotation totals pin every y-exponent into the coset
   * (sum of charges - n/2) mod 1; integral exactly when that offset is */
  Rational mu(0);
  for (const auto& q : model.charges) mu += q;
  mu -= rat(static_cast<long>(model.charges.size()), 2);
  for (const auto& [k, c] : s.terms()) {
    (void)c;
    require(frac_mod1(rat(k.second, s.yden()) - mu) == 0, errc::internal,
            "y-exponents landed off the expected coset");
  }
}

}  /* namespace */

/* ---------- public operations ---------- */

LGStructure lg_structure(const LGModel& model) {
  validate_lg(model);
  const Ctx ctx = model_ctx(model, 0);
  return LGStructure{static_cast<long>(model.group.size()), ctx.field, ctx.dq, ctx.m,
                     cy_type_condition(model)};
}

QYSeries theta1_ratio(const std::vector<ThetaArg>& num, const std::vector<ThetaArg>& den,
                      long T) {
  require(num.size() == den.size(), errc::unbalanced_ratio,
          "ratio wants equally many numerator and denominator factors");
  require(T >= 0, errc::invalid_config, "truncation order must be nonnegative");
  Ctx ctx;
  {
    std::vector<Rational> xs, ts, zs;
    for (const auto* side : {&num, &den}) {
      for (const auto& a : *side) {
        xs.push_back(a.shift);
        ts.push_back(a.tshift);
        zs.push_back(a.zcoef);
      }
    }
    ctx.field = 2 * lcm_denoms(1, xs);
    ctx.dq = 2 * lcm_denoms(lcm_denoms(1, ts), xs);
    ctx.m = 2 * lcm_denoms(1, zs);
    require(ctx.field <= kDenomLimit && ctx.dq <= kDenomLimit && ctx.m <= kDenomLimit,
            errc::invalid_config, "argument denominators are too large");
  }
  TermArgs args;
  for (const auto& a : num) args.num.push_back({{a.zcoef, a.shift, a.tshift}, 1});
  for (const auto& a : den) args.den.push_back({{a.zcoef, a.shift, a.tshift}, 1});
  ctx.window = Rational(T);
  const Rational net = term_net_qe(args, ctx);
  if (net < 0) ctx.window = Rational(T) - net;
  const long long build_cap = numerator_on2(ctx.window, ctx.dq, ctx.m);
  const long long final_cap = numerator_on2(Rational(T), ctx.dq, ctx.m);
  BlockCache cache;
  auto frac = term_fraction(args, ctx, cache, build_cap, final_cap);
  if (!frac) {
    QYSeries z = QYSeries::zero();
    return z.truncated(QOrder::at(T));
  }
  std::vector<SectorFrac> fracs{std::move(*frac)};
  Ser<RingY> total = sum_fractions(fracs, ctx, errc::not_polynomial);
  return emit(total, ctx, T, Scalar::one());
}

QYSeries lg_sector(const LGModel& model, std::size_t g1, std::size_t g2, long T) {
  validate_lg(model);
  require(T >= 0, errc::invalid_config, "truncation order must be nonnegative");
  require(g1 < model.group.size() && g2 < model.group.size(), errc::invalid_config,
          "sector index out of range");
  Ctx ctx = model_ctx(model, T);
  std::vector<Rational> r1, r2;
  for (const auto& e : model.group[g1]) r1.push_back(frac_mod1(e));
  for (const auto& e : model.group[g2]) r2.push_back(frac_mod1(e));
  const TermArgs args = sector_args(model, r1, r2, ctx);
  require(term_net_qe(args, ctx) == 0, errc::internal,
          "sector monomial failed to balance");
  const long long cap = numerator_on2(ctx.window, ctx.dq, ctx.m);
  BlockCache cache;
  auto frac = term_fraction(args, ctx, cache, cap, cap);
  if (!frac) {
    QYSeries z = QYSeries::zero();
    return z.truncated(QOrder::at(T));
  }
  std::vector<SectorFrac> fracs{std::move(*frac)};
  Ser<RingY> total = sum_fractions(fracs, ctx, errc::not_polynomial);
  return emit(total, ctx, T, Scalar::one());
}

QYSeries ell_genus(const LGModel& model, long T) {
  validate_lg(model);
  require(T >= 0, errc::invalid_config, "truncation order must be nonnegative");
  Ctx ctx = model_ctx(model, T);
  const long long cap = numerator_on2(ctx.window, ctx.dq, ctx.m);
  std::vector<std::vector<Rational>> rows;
  for (const auto& row : model.group) {
    std::vector<Rational> r;
    for (const auto& e : row) r.push_back(frac_mod1(e));
    rows.push_back(std::move(r));
  }
  BlockCache cache;
  std::vector<SectorFrac> fracs;
  for (const auto& r1 : rows) {
    for (const auto& r2 : rows) {
      const TermArgs args = sector_args(model, r1, r2, ctx);
      require(term_net_qe(args, ctx) == 0, errc::internal,
              "sector monomial failed to balance");
      auto frac = term_fraction(args, ctx, cache, cap, cap);
      if (frac) fracs.push_back(std::move(*frac));
    }
  }
  Ser<RingY> total = sum_fractions(fracs, ctx, errc::internal);
  const Scalar scale = Scalar(rat(1, static_cast<long>(model.group.size())));
  QYSeries out = emit(total, ctx, T, scale);
  check_y_lattice(out, model);
  return out;
}

/* ---------- numeric mirror ---------- */

namespace {

struct NumBlockEntry {
  BlockSym sym;
  Ser<RingC> unit;
  std::optional<Ser<RingC>> inv;
};

using NumCache = std::map<BlockKey, NumBlockEntry>;

NumBlockEntry& cached_block_num(NumCache& cache, const Rational& alpha, const Rational& x,
                                const Rational& t, const Ctx& ctx, const NumEnv& env,
                                long long cap) {
  const BlockKey key{alpha, x, t};
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  NumBlockEntry e;
  e.sym = make_block(alpha, x, t, ctx, true);
  if (!e.sym.zero) e.unit = build_unit<RingC>(e.sym, env, ctx, cap);
  return cache.emplace(key, std::move(e)).first->second;
}

Complex bin_value(const BinKey& k, const Ctx& ctx, const Complex& z) {
  const double two_pi = 2.0 * std::acos(-1.0);
  const Complex ud =
      std::exp(Complex(0.0, 1.0) * two_pi * z * (static_cast<double>(k.d) / ctx.m));
  const Complex ph = std::exp(Complex(0.0, 1.0) * two_pi * rat_double(k.phase));
  return ud - ph;
}

}  /* namespace */

Complex ell_genus_num(const LGModel& model, long T, const Complex& tau, const Complex& z) {
  validate_lg(model);
  require(T >= 0, errc::invalid_config, "truncation order must be nonnegative");
  Ctx ctx = model_ctx(model, T);
  const long long cap = numerator_on2(ctx.window, ctx.dq, ctx.m);
  const NumEnv env{&ctx, z};
  const double two_pi = 2.0 * std::acos(-1.0);
  std::vector<std::vector<Rational>> rows;
  for (const auto& row : model.group) {
    std::vector<Rational> r;
    for (const auto& e : row) r.push_back(frac_mod1(e));
    rows.push_back(std::move(r));
  }
  NumCache cache;
  Ser<RingC> total;
  for (const auto& r1 : rows) {
    for (const auto& r2 : rows) {
      const TermArgs args = sector_args(model, r1, r2, ctx);
      Mono mono = args.prefactor;
      Complex denval(1.0, 0.0);
      bool zero = false;
      std::vector<std::pair<const Ser<RingC>*, int>> chain;
      for (const auto& [arg, c] : args.den) {
        NumBlockEntry& e = cached_block_num(cache, arg[0], arg[1], arg[2], ctx, env, cap);
        require(!e.sym.zero, errc::denominator_vanishes,
                "a denominator theta factor vanishes identically");
        mono_mul(mono, mono_inverse(e.sym.mono), c);
        if (e.sym.bin) {
          const Complex bv = bin_value(*e.sym.bin, ctx, z);
          require(std::abs(bv) > 1e-10, errc::denominator_vanishes,
                  "denominator vanishes at this z");
          for (int i = 0; i < c; ++i) denval *= bv;
        }
        if (!e.inv) e.inv = ser_inverse<RingC>(e.unit, cap);
        chain.emplace_back(&*e.inv, c);
      }
      for (const auto& [arg, c] : args.num) {
        NumBlockEntry& e = cached_block_num(cache, arg[0], arg[1], arg[2], ctx, env, cap);
        if (e.sym.zero) {
          zero = true;
          break;
        }
        mono_mul(mono, e.sym.mono, c);
        if (e.sym.bin) {
          const Complex bv = bin_value(*e.sym.bin, ctx, z);
          for (int i = 0; i < c; ++i) denval = denval / (Complex(1.0, 0.0) / bv);
        }
        chain.emplace_back(&e.unit, c);
      }
      if (zero) continue;
      Ser<RingC> ser;
      ser.emplace(0, RingC::one());
      for (const auto& [s, c] : chain)
        ser = ser_mul<RingC>(ser, ser_pow<RingC>(*s, c, cap), cap);
      /* total monomial: phase and u-power as a value, q-power as a slot shift */
      const long long ds = numerator_on2(mono.qe, ctx.dq, ctx.m);
      const Complex mv = env.coeff(mono.phase, mono.ue) / denval;
      for (const auto& [s, c] : ser) {
        if (s + ds > cap) continue;
        ser_acc<RingC>(total, s + ds, c * mv);
      }
    }
  }
  Complex acc(0.0, 0.0);
  for (const auto& [s, c] : total)
    acc += c * std::exp(Complex(0.0, 1.0) * two_pi * tau * (static_cast<double>(s) / ctx.dq));
  return acc / Complex(static_cast<double>(model.group.size()), 0.0);
}

}  /* namespace qgenus */
