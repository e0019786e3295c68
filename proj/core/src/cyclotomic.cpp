#include "qgenus/cyclotomic.hpp"

#include <cmath>
#include <algorithm>
#include <map>
#include <mutex>
#include <numbers>

namespace qgenus {

namespace {

/* Exact division of integer polynomials, ascending coefficients.
 * Requires the divisor to be monic and the division to be exact. */
std::vector<Int> divide_exact(std::vector<Int> num, const std::vector<Int>& den) {
  const long dn = static_cast<long>(num.size()) - 1;
  const long dd = static_cast<long>(den.size()) - 1;
  require(dd >= 0 && den.back() == 1, errc::internal, "divisor must be monic");
  require(dn >= dd, errc::internal, "degree underflow in polynomial division");
  std::vector<Int> quot(dn - dd + 1, Int(0));
  for (long k = dn - dd; k >= 0; --k) {
    Int c = num[k + dd];
    if (c == 0) continue;
    quot[k] = c;
    for (long j = 0; j <= dd; ++j) num[k + j] -= c * den[j];
  }
  for (const Int& c : num) require(c == 0, errc::internal, "inexact polynomial division");
  return quot;
}

std::vector<Int> compute_cyclotomic(long order) {
  if (order == 1) return {Int(-1), Int(1)};
  std::vector<Int> num(order + 1, Int(0));
  num[0] = -1;
  num[order] = 1;
  for (long d = 1; d < order; ++d) {
    if (order % d != 0) continue;
    num = divide_exact(std::move(num), cyclotomic_poly(d));
  }
  return num;
}

struct FieldTable {
  std::vector<Int> phi;
  /* reduction[k] = x^(deg+k) mod Phi. Rows cover both product reduction
   * (k < deg-1) and bare root powers (deg+k < order). Integer entries since
   * Phi is monic. */
  std::vector<std::vector<Int>> reduction;
};

const FieldTable& field_table(long order) {
  static std::map<long, FieldTable> cache;
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(order);
  if (it != cache.end()) return it->second;

  FieldTable t;
  t.phi = cyclotomic_poly(order);
  const long deg = static_cast<long>(t.phi.size()) - 1;
  const long rows = std::max(deg - 1, order - deg);
  std::vector<Int> row(deg, Int(0));
  for (long j = 0; j < deg; ++j) row[j] = -t.phi[j];
  if (rows >= 1) {
    t.reduction.reserve(rows);
    t.reduction.push_back(row);
    for (long k = 1; k < rows; ++k) {
      std::vector<Int> next(deg, Int(0));
      const Int top = row[deg - 1];
      for (long j = 1; j < deg; ++j) next[j] = row[j - 1];
      if (top != 0)
        for (long j = 0; j < deg; ++j) next[j] += top * t.reduction[0][j];
      row = next;
      t.reduction.push_back(std::move(next));
    }
  }
  return cache.emplace(order, std::move(t)).first->second;
}

long count_nonzero(const std::vector<Rational>& v) {
  long n = 0;
  for (const auto& c : v)
    if (c != 0) ++n;
  return n;
}

}  // namespace

const std::vector<Int>& cyclotomic_poly(long order) {
  require(order >= 1, errc::invalid_config, "cyclotomic order must be positive");
  static std::map<long, std::vector<Int>> cache;
  static std::mutex mu;
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(order);
    if (it != cache.end()) return it->second;
  }
  std::vector<Int> phi = compute_cyclotomic(order);
  std::lock_guard<std::mutex> lock(mu);
  return cache.emplace(order, std::move(phi)).first->second;
}

Cyclotomic::Cyclotomic(long order, std::vector<Rational> coeffs) : order_(order), coeffs_(std::move(coeffs)) {
  const long deg = static_cast<long>(cyclotomic_poly(order).size()) - 1;
  require(static_cast<long>(coeffs_.size()) == deg, errc::internal, "cyclotomic coordinate size mismatch");
}

Cyclotomic Cyclotomic::constant(long order, const Rational& value) {
  const long deg = static_cast<long>(cyclotomic_poly(order).size()) - 1;
  std::vector<Rational> c(deg, Rational(0));
  c[0] = value;
  return Cyclotomic(order, std::move(c));
}

Cyclotomic Cyclotomic::root_power(long order, long power) {
  const long deg = static_cast<long>(cyclotomic_poly(order).size()) - 1;
  long k = power % order;
  if (k < 0) k += order;
  std::vector<Rational> c(deg, Rational(0));
  if (k < deg) {
    c[k] = 1;
    return Cyclotomic(order, std::move(c));
  }
  const auto& table = field_table(order).reduction;
  const auto& row = table[k - deg];
  for (long j = 0; j < deg; ++j) c[j] = Rational(row[j]);
  return Cyclotomic(order, std::move(c));
}

bool Cyclotomic::is_zero() const {
  for (const auto& c : coeffs_)
    if (c != 0) return false;
  return true;
}

bool Cyclotomic::is_rational() const {
  for (size_t j = 1; j < coeffs_.size(); ++j)
    if (coeffs_[j] != 0) return false;
  return true;
}

Rational Cyclotomic::rational_part() const {
  require(is_rational(), errc::backend_mismatch, "cyclotomic value is not rational");
  return coeffs_[0];
}

void Cyclotomic::check_same_field(const Cyclotomic& rhs) const {
  require(order_ == rhs.order_, errc::backend_mismatch, "cyclotomic order mismatch");
}

Cyclotomic Cyclotomic::operator-() const {
  std::vector<Rational> c(coeffs_.size());
  for (size_t j = 0; j < coeffs_.size(); ++j) c[j] = -coeffs_[j];
  return Cyclotomic(order_, std::move(c));
}

Cyclotomic Cyclotomic::operator+(const Cyclotomic& rhs) const {
  check_same_field(rhs);
  std::vector<Rational> c(coeffs_.size());
  for (size_t j = 0; j < coeffs_.size(); ++j) c[j] = coeffs_[j] + rhs.coeffs_[j];
  return Cyclotomic(order_, std::move(c));
}

Cyclotomic Cyclotomic::operator-(const Cyclotomic& rhs) const {
  check_same_field(rhs);
  std::vector<Rational> c(coeffs_.size());
  for (size_t j = 0; j < coeffs_.size(); ++j) c[j] = coeffs_[j] - rhs.coeffs_[j];
  return Cyclotomic(order_, std::move(c));
}

Cyclotomic Cyclotomic::operator*(const Cyclotomic& rhs) const {
  check_same_field(rhs);
  const long deg = degree();
  /* Sparse-aware: iterate only nonzero coordinates of the sparser operand. */
  const bool lhs_sparser = count_nonzero(coeffs_) <= count_nonzero(rhs.coeffs_);
  const auto& a = lhs_sparser ? coeffs_ : rhs.coeffs_;
  const auto& b = lhs_sparser ? rhs.coeffs_ : coeffs_;
  std::vector<Rational> raw(2 * deg - 1, Rational(0));
  for (long i = 0; i < deg; ++i) {
    if (a[i] == 0) continue;
    for (long j = 0; j < deg; ++j) {
      if (b[j] == 0) continue;
      raw[i + j] += a[i] * b[j];
    }
  }
  std::vector<Rational> c(raw.begin(), raw.begin() + deg);
  const auto& table = field_table(order_).reduction;
  for (long k = deg; k < 2 * deg - 1; ++k) {
    if (raw[k] == 0) continue;
    const auto& row = table[k - deg];
    for (long j = 0; j < deg; ++j) {
      if (row[j] != 0) c[j] += raw[k] * Rational(row[j]);
    }
  }
  return Cyclotomic(order_, std::move(c));
}

Cyclotomic Cyclotomic::scaled(const Rational& factor) const {
  std::vector<Rational> c(coeffs_.size());
  for (size_t j = 0; j < coeffs_.size(); ++j) c[j] = coeffs_[j] * factor;
  return Cyclotomic(order_, std::move(c));
}

Cyclotomic Cyclotomic::embedded(long order) const {
  if (order == order_) return *this;
  require(order > 0 && order % order_ == 0, errc::backend_mismatch,
          "cyclotomic field embedding needs a multiple of the source order");
  const long step = order / order_;
  Cyclotomic acc = constant(order, Rational(0));
  for (long k = 0; k < degree(); ++k) {
    if (coeffs_[static_cast<size_t>(k)] == 0) continue;
    acc = acc + root_power(order, k * step).scaled(coeffs_[static_cast<size_t>(k)]);
  }
  return acc;
}

Cyclotomic Cyclotomic::inverse() const {
  require(!is_zero(), errc::inversion_of_zero, "inverse of zero cyclotomic value");
  if (is_rational()) return constant(order_, 1 / coeffs_[0]);

  /* Extended Euclid over Q[x] against Phi: since Phi is irreducible and the
   * element is a nonzero residue, the gcd is a nonzero constant. */
  using Poly = std::vector<Rational>;
  auto deg_of = [](const Poly& p) {
    for (long k = static_cast<long>(p.size()) - 1; k >= 0; --k)
      if (p[k] != 0) return k;
    return -1L;
  };
  const auto& phi_int = field_table(order_).phi;
  Poly r0(phi_int.size());
  for (size_t j = 0; j < phi_int.size(); ++j) r0[j] = Rational(phi_int[j]);
  Poly r1 = coeffs_;
  Poly s0(1, Rational(0)), s1(1, Rational(1));  // coefficients of the element in the Bezout identity
  while (true) {
    long d1 = deg_of(r1);
    require(d1 >= 0, errc::internal, "cyclotomic gcd collapsed");
    if (d1 == 0) break;
    long d0 = deg_of(r0);
    if (d0 < d1) {
      std::swap(r0, r1);
      std::swap(s0, s1);
      continue;
    }
    /* r0 -= (lead0/lead1) x^(d0-d1) r1, mirrored on s. */
    Rational c = r0[d0] / r1[d1];
    long shift = d0 - d1;
    if (static_cast<long>(s0.size()) < static_cast<long>(s1.size()) + shift)
      s0.resize(s1.size() + shift, Rational(0));
    for (long j = 0; j <= d1; ++j) r0[j + shift] -= c * r1[j];
    for (long j = 0; j < static_cast<long>(s1.size()); ++j) s0[j + shift] -= c * s1[j];
  }
  Rational unit = r1[0];
  std::vector<Rational> out(coeffs_.size(), Rational(0));
  /* s1 may exceed the field degree formally; reduce through multiplication. */
  Cyclotomic acc = constant(order_, Rational(0));
  Cyclotomic xpow = constant(order_, Rational(1));
  Cyclotomic x = root_power(order_, 1);
  for (size_t j = 0; j < s1.size(); ++j) {
    if (s1[j] != 0) acc = acc + xpow.scaled(s1[j] / unit);
    if (j + 1 < s1.size()) xpow = xpow * x;
  }
  return acc;
}

std::complex<double> Cyclotomic::to_complex() const {
  const double two_pi = 2.0 * std::numbers::pi;
  std::complex<double> zeta = std::polar(1.0, two_pi / static_cast<double>(order_));
  std::complex<double> acc(0.0, 0.0);
  for (long j = degree() - 1; j >= 0; --j) acc = acc * zeta + std::complex<double>(rat_double(coeffs_[j]), 0.0);
  return acc;
}

}  // namespace qgenus
