#pragma once

#include <gmpxx.h>

#include <string>

#include "qgenus/error.hpp"

namespace qgenus {

using Int = mpz_class;
using Rational = mpq_class;

inline Rational rat(long num, long den = 1) {
  require(den != 0, errc::invalid_config, "rational with zero denominator");
  Rational r(num, den);
  r.canonicalize();
  return r;
}

inline Int rat_num(const Rational& r) { return r.get_num(); }
inline Int rat_den(const Rational& r) { return r.get_den(); }

inline bool is_integer(const Rational& r) { return rat_den(r) == 1; }

/* Floor of a rational as an integer. */
inline Int rat_floor(const Rational& r) {
  Int q;
  mpz_fdiv_q(q.get_mpz_t(), rat_num(r).get_mpz_t(), rat_den(r).get_mpz_t());
  return q;
}

/* Fractional part in [0, 1). */
inline Rational frac_mod1(const Rational& r) {
  Rational f = r - Rational(rat_floor(r));
  f.canonicalize();
  return f;
}

/* r reduced modulo a positive rational period, result in [0, period). */
inline Rational mod_period(const Rational& r, const Rational& period) {
  require(period > 0, errc::internal, "mod_period needs positive period");
  Rational f = frac_mod1(r / period) * period;
  f.canonicalize();
  return f;
}

inline Int lcm_int(const Int& a, const Int& b) {
  Int l;
  mpz_lcm(l.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return l;
}

inline long to_long(const Int& v) {
  require(v.fits_slong_p(), errc::internal, "integer out of machine range");
  return v.get_si();
}

inline Rational pow_rat(const Rational& base, long e) {
  if (e == 0) return Rational(1);
  Rational b = base;
  bool inv = e < 0;
  unsigned long n = inv ? static_cast<unsigned long>(-(e + 1)) + 1ul : static_cast<unsigned long>(e);
  Rational out;
  mpz_pow_ui(out.get_num_mpz_t(), b.get_num_mpz_t(), n);
  mpz_pow_ui(out.get_den_mpz_t(), b.get_den_mpz_t(), n);
  out.canonicalize();
  if (inv) {
    require(out != 0, errc::inversion_of_zero, "0^negative");
    out = 1 / out;
  }
  return out;
}

inline std::string rat_str(const Rational& r) { return r.get_str(); }

/* Parse "a" or "a/b"; throws invalid_config on malformed input. */
inline Rational parse_rational(const std::string& s) {
  Rational r;
  if (s.empty() || mpq_set_str(r.get_mpq_t(), s.c_str(), 10) != 0)
    fail(errc::invalid_config, "malformed rational: '" + s + "'");
  require(rat_den(r) != 0, errc::invalid_config, "zero denominator: '" + s + "'");
  r.canonicalize();
  return r;
}

inline double rat_double(const Rational& r) { return r.get_d(); }

}  // namespace qgenus
