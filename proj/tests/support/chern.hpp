#pragma once

/* Characteristic-class oracle for hypersurfaces X(m) in CP^{N-1}, used to pin
 * the q^0 slice of the level 2 genus. Everything here is plain truncated
 * polynomial arithmetic over mpq_class on the hyperplane class h; it shares
 * no code with the series engine on purpose. */

#include <gmpxx.h>

#include <cstddef>
#include <vector>

namespace chern {

using Rat = mpq_class;
/* coefficient k = h^k, degrees beyond cap discarded */
using Poly = std::vector<Rat>;

inline Poly poly_mul(const Poly& a, const Poly& b, std::size_t cap) {
  Poly r(cap + 1, Rat(0));
  for (std::size_t i = 0; i < a.size() && i <= cap; ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size() && i + j <= cap; ++j) r[i + j] += a[i] * b[j];
  }
  return r;
}

/* reciprocal of a unit (a[0] != 0) */
inline Poly poly_inverse(const Poly& a, std::size_t cap) {
  Poly r(cap + 1, Rat(0));
  r[0] = 1 / a[0];
  for (std::size_t k = 1; k <= cap; ++k) {
    Rat s(0);
    for (std::size_t j = 1; j <= k && j < a.size(); ++j) s += a[j] * r[k - j];
    r[k] = -s / a[0];
  }
  return r;
}

inline Poly poly_pow(const Poly& a, long e, std::size_t cap) {
  Poly r(cap + 1, Rat(0));
  r[0] = 1;
  for (long k = 0; k < e; ++k) r = poly_mul(r, a, cap);
  return r;
}

/* h -> m h */
inline Poly poly_scale_arg(const Poly& a, long m, std::size_t cap) {
  Poly r(cap + 1, Rat(0));
  Rat mk(1);
  for (std::size_t k = 0; k < a.size() && k <= cap; ++k) {
    r[k] = a[k] * mk;
    mk *= m;
  }
  return r;
}

/* (w/2)/tanh(w/2) = 1 + w^2/12 - w^4/720 + w^6/30240 - w^8/1209600 + ...,
 * the even Bernoulli expansion of (x coth x) at x = w/2. Frozen through w^8,
 * which covers every ambient dimension used in the tests. */
inline Poly characteristic_series(std::size_t cap) {
  Poly q(cap + 1, Rat(0));
  const long nums[] = {1, 1, -1, 1, -1};
  const long dens[] = {1, 12, 720, 30240, 1209600};
  for (std::size_t k = 0; 2 * k <= cap && k < 5; ++k) q[2 * k] = Rat(nums[k], dens[k]);
  return q;
}

/* Genus of X(m) in CP^{N-1} at q = 0 via adjunction and the Gysin push:
 * m * [h^{N-2}] of Q(h)^N / Q(m h). */
inline Rat hypersurface_genus_q0(long N, long m) {
  const std::size_t cap = static_cast<std::size_t>(N - 2);
  Poly num = poly_pow(characteristic_series(cap), N, cap);
  Poly den = poly_scale_arg(characteristic_series(cap), m, cap);
  Poly ratio = poly_mul(num, poly_inverse(den, cap), cap);
  return Rat(m) * ratio[cap];
}

/* Projective space itself: [h^{N-1}] of Q(h)^N. */
inline Rat projective_genus_q0(long N) {
  const std::size_t cap = static_cast<std::size_t>(N - 1);
  Poly num = poly_pow(characteristic_series(cap), N, cap);
  return num[cap];
}

/* Euler characteristic of X(m) from c(X) = (1+h)^N / (1+mh):
 * m * [h^{N-2}] of that total Chern class. */
inline Rat euler_char_hypersurface(long N, long m) {
  const std::size_t cap = static_cast<std::size_t>(N - 2);
  Poly amb(cap + 1, Rat(0));
  {
    Poly lin(cap + 1, Rat(0));
    lin[0] = 1;
    if (cap >= 1) lin[1] = 1;
    amb = poly_pow(lin, N, cap);
  }
  Poly div(cap + 1, Rat(0));
  div[0] = 1;
  if (cap >= 1) div[1] = m;
  Poly total = poly_mul(amb, poly_inverse(div, cap), cap);
  return Rat(m) * total[cap];
}

}  // namespace chern
