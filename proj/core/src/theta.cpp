#include "qgenus/theta.hpp"

#include <cmath>
#include <numbers>
#include <vector>

#include "qgenus/error.hpp"

namespace qgenus {

namespace {

/* One retained factor 1 - zeta(xpart) q^mu u_dir, where u_dir tracks which
 * side of the product it came from (+1: the u side, -1: the 1/u side). */
struct Factor {
  Rational mu;
  Rational xpart;  // reduced mod 1
  int dir;
};

/* Enumerate the factors that can touch exponents <= T. A first pass sums the
 * negative exponent contributions L (finitely many factors have mu < 0); a
 * factor beyond T - L multiplies the product by 1 + O(q^{>T-L}) and shifts at
 * most by L, so it cannot reach exponent T. */
std::vector<Factor> collect_factors(const Progressions& pr, const CoveringPoint& u,
                                    const NomeSpec& nome, const Rational& T) {
  require(pr.step > 0, errc::internal, "progression step must be positive");
  require(pr.plus_start >= 0 && pr.minus_start >= 0, errc::internal,
          "progression starts must be nonnegative");
  Rational c = nome.e * u.y;
  Rational bound = T - theta_lower_bound(pr, u, nome);
  std::vector<Factor> out;
  for (Rational b = pr.minus_start; b - c <= bound; b += pr.step)
    out.push_back(Factor{b - c, frac_mod1(-u.x), -1});
  for (Rational b = pr.plus_start; b + c <= bound; b += pr.step)
    out.push_back(Factor{b + c, frac_mod1(u.x), +1});
  return out;
}

struct ExactBackend {
  using Ring = QSeries;
  long field_order;

  Ring monomial(const Factor& f) const {
    return QSeries::monomial(Scalar::root_of_unity(f.xpart, field_order), f.mu);
  }
  Ring one_capped(const Rational& cap) const {
    return QSeries::one().with_order(QOrder::at(cap));
  }
  Ring one_exact() const { return QSeries::one(); }
};

struct NumericBackend {
  using Ring = Complex;
  Complex tau;

  Ring monomial(const Factor& f) const {
    static const double kTwoPi = 2.0 * std::numbers::pi;
    Complex zeta = f.xpart == 0 ? Complex(1.0, 0.0) : std::polar(1.0, kTwoPi * rat_double(f.xpart));
    Complex qmu = f.mu == 0 ? Complex(1.0, 0.0)
                            : std::exp(Complex(0.0, kTwoPi) * tau * rat_double(f.mu));
    return zeta * qmu;
  }
  Ring one_capped(const Rational&) const { return Complex(1.0, 0.0); }
  Ring one_exact() const { return Complex(1.0, 0.0); }
};

template <class B>
typename B::Ring eval_impl(const B& backend, const Progressions& pr, const CoveringPoint& u,
                           const NomeSpec& nome, const Rational& T) {
  auto factors = collect_factors(pr, u, nome, T);
  Rational suffix(0);
  for (const auto& f : factors)
    if (f.mu < 0) suffix += f.mu;
  typename B::Ring acc = backend.one_capped(T - suffix);
  for (const auto& f : factors) {
    typename B::Ring m = backend.monomial(f);
    acc = acc * (backend.one_exact() - m);
  }
  return acc;
}

template <class B>
WSeries<typename B::Ring> wexp_impl(const B& backend, const Progressions& pr,
                                    const CoveringPoint& base, const NomeSpec& nome,
                                    const Rational& T, long Z) {
  using Ring = typename B::Ring;
  auto factors = collect_factors(pr, base, nome, T);
  Rational suffix(0);
  for (const auto& f : factors)
    if (f.mu < 0) suffix += f.mu;
  WSeries<Ring> acc = WSeries<Ring>::constant(backend.one_capped(T - suffix)).with_top(Z);
  for (const auto& f : factors) {
    Ring m = backend.monomial(f);
    WSeries<Ring> factor = WSeries<Ring>::one().with_top(Z) - exp_w<Ring>(Rational(f.dir), Z).scaled(m);
    acc = acc * factor;
  }
  return acc;
}

}  // namespace

Progressions basic_progressions(const NomeSpec& nome) {
  return Progressions{nome.e, Rational(0), nome.e};
}

Progressions theta_na_progressions(long n, long a) {
  require(n >= 1, errc::invalid_config, "level must be positive");
  long ap = a % n;
  if (ap < 0) ap += n;
  long plus = ((ap - 1) % n + n) % n + 1;  // smallest l >= 1 with l = a mod n
  long minus = (n - ap) % n;               // smallest -l >= 0 with l = a mod n
  return Progressions{Rational(plus), Rational(minus), Rational(n)};
}

QSeries theta_eval(const Progressions& pr, const CoveringPoint& u, const NomeSpec& nome,
                   long field_order, const Rational& T) {
  return eval_impl(ExactBackend{field_order}, pr, u, nome, T);
}

WSeries<QSeries> theta_wexp(const Progressions& pr, const CoveringPoint& base, const NomeSpec& nome,
                            long field_order, const Rational& T, long Z) {
  return wexp_impl(ExactBackend{field_order}, pr, base, nome, T, Z);
}

Complex theta_eval_num(const Progressions& pr, const CoveringPoint& u, const NomeSpec& nome,
                       const Complex& tau, const Rational& T) {
  return eval_impl(NumericBackend{tau}, pr, u, nome, T);
}

WSeries<Complex> theta_wexp_num(const Progressions& pr, const CoveringPoint& base, const NomeSpec& nome,
                                const Complex& tau, const Rational& T, long Z) {
  return wexp_impl(NumericBackend{tau}, pr, base, nome, T, Z);
}

Rational theta_lower_bound(const Progressions& pr, const CoveringPoint& u, const NomeSpec& nome) {
  Rational c = nome.e * u.y;
  Rational lneg(0);
  for (Rational b = pr.plus_start; b + c < 0; b += pr.step) lneg += b + c;
  for (Rational b = pr.minus_start; b - c < 0; b += pr.step) lneg += b - c;
  return lneg;
}

QSeries binomial_product(const Rational& start, const Rational& step, const Rational& T) {
  require(step > 0 && start > 0, errc::internal, "binomial product needs positive exponents");
  QSeries acc = QSeries::one().with_order(QOrder::at(T));
  for (Rational b = start; b <= T; b += step)
    acc = acc * (QSeries::one() - QSeries::monomial(Scalar::one(), b));
  return acc;
}

QSeries theta_basic(const CoveringPoint& u, const NomeSpec& nome, long field_order, const Rational& T) {
  return theta_eval(basic_progressions(nome), u, nome, field_order, T);
}

QSeries theta_na(long n, long a, const CoveringPoint& u, long field_order, const Rational& T) {
  // the factors pair with the n-th power of the argument
  return theta_eval(theta_na_progressions(n, a), u.scaled(n), NomeSpec(Rational(1)), field_order, T);
}

}  // namespace qgenus
