#include "qgenus/genus.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

namespace qgenus {

namespace {

long lcm_long(long a, long b) { return to_long(lcm_int(Int(a), Int(b))); }

long denom_of(const Rational& r) { return to_long(rat_den(r)); }

long parity_sign(long e) { return (e % 2 == 0) ? 1 : -1; }

Complex cpow(const Complex& base, long e) {
  Complex r(1.0, 0.0);
  for (long k = 0; k < e; ++k) r *= base;
  return r;
}

/* The level function is lattice-periodic, so points can be pushed into the
 * fundamental square; small coordinates keep the theta windows cheap. */
CoveringPoint reduced(const CoveringPoint& p) { return CoveringPoint(p.reduce()); }

std::vector<long> column_sums_long(const IntMatrix& m) {
  std::vector<Int> s = m.column_sums();
  std::vector<long> out(s.size());
  for (size_t j = 0; j < s.size(); ++j) out[j] = to_long(s[j]);
  return out;
}

/* [mu] h = sum_j (sum_i m_ij) h_j; lands in the vertical subgroup whenever h
 * is a transversal element. */
DivisionPoint mu_image(const std::vector<long>& colsum, const std::vector<DivisionPoint>& h) {
  DivisionPoint acc;
  for (size_t j = 0; j < h.size(); ++j) acc = acc + h[j].scaled(colsum[j]);
  return acc;
}

struct DivisionSetup {
  long n = 2;
  long t = 0;
  long det = 0;
  long field = 1;
  DivisionPoint r;
  std::vector<long> colsum;
  std::vector<DivisionPoint> s;
  std::vector<std::vector<DivisionPoint>> reps;
};

DivisionSetup division_setup(const CIModel& ci, const GenusSpec& spec) {
  validate_model(ci);
  validate_spec(spec);
  const IntMatrix& m = ci.matrix;
  require(m.rows() == m.cols() && m.rows() >= 1, errc::invalid_config,
          "division sum needs a square degree matrix");
  DivisionSetup d;
  d.n = spec.level;
  d.t = m.cols();
  Int det = m.det();
  require(det != 0, errc::singular_matrix, "degree matrix is singular");
  d.det = to_long(det);
  require(cy_condition(m, ci.dims, d.n), errc::condition_violated,
          "column sums must match the dimensions modulo the level");
  d.colsum = column_sums_long(m);
  DivisionPoint r(rat(spec.root_index, d.n), Rational(0));
  d.r = r;
  d.s = solve_division(m, std::vector<DivisionPoint>(d.t, r));
  d.reps = coset_reps(m, d.n);
  long field = d.n;
  for (long j = 0; j < d.t; ++j) field = lcm_long(field, denom_of(d.s[j].x));
  for (const auto& h : d.reps)
    for (const auto& p : h) field = lcm_long(field, denom_of(p.x));
  d.field = field;
  return d;
}

/* Terms whose arguments meet the divisor of f: a slot on the zero side kills
 * the whole term, and a slot on the pole side must be so covered, or the sum
 * itself would diverge. */
bool divisor_kills(const JacobiFunction& f, const std::vector<DivisionPoint>& pts) {
  bool zero = false, pole = false;
  for (const auto& p : pts) {
    for (const auto& z : f.zero_reps())
      if (z.reduce() == p) zero = true;
    for (const auto& g : f.pole_reps())
      if (g.reduce() == p) pole = true;
  }
  require(zero || !pole, errc::internal, "division term has an unmatched pole");
  return zero;
}

std::vector<DivisionPoint> term_points(const DivisionSetup& d, const std::vector<DivisionPoint>& h) {
  std::vector<DivisionPoint> pts(static_cast<size_t>(d.t));
  for (long j = 0; j < d.t; ++j)
    pts[static_cast<size_t>(j)] = (CoveringPoint(d.s[static_cast<size_t>(j)]) +
                                   CoveringPoint(h[static_cast<size_t>(j)]))
                                      .reduce();
  return pts;
}

/* The raw transversal sum of chi(-[mu] h) prod_j f(s_j + h_j)^{N_j}. Many
 * elements share coordinates, so the powered values are cached per slot. */
QSeries division_sum_core(const JacobiFunction& f, const CIModel& ci, const DivisionSetup& d) {
  std::vector<std::map<DivisionPoint, QSeries>> powers(static_cast<size_t>(d.t));
  QSeries sum = QSeries::zero();
  for (const auto& h : d.reps) {
    std::vector<DivisionPoint> pts = term_points(d, h);
    if (divisor_kills(f, pts)) continue;
    DivisionPoint g = -mu_image(d.colsum, h);
    require(g.x == 0, errc::internal, "degree functional left the vertical subgroup");
    QSeries term = QSeries::constant(f.character(g));
    for (long j = 0; j < d.t; ++j) {
      const DivisionPoint& p = pts[static_cast<size_t>(j)];
      auto [it, fresh] = powers[static_cast<size_t>(j)].try_emplace(p);
      if (fresh) it->second = f.eval(CoveringPoint(p)).pow(ci.dims[static_cast<size_t>(j)]);
      term = term * it->second;
    }
    sum = sum + term;
  }
  return sum;
}

Complex division_sum_core_num(const JacobiFunction& f, const CIModel& ci, const DivisionSetup& d,
                              const Complex& tau) {
  Complex sum(0.0, 0.0);
  for (const auto& h : d.reps) {
    std::vector<DivisionPoint> pts = term_points(d, h);
    if (divisor_kills(f, pts)) continue;
    Complex term = f.character(-mu_image(d.colsum, h)).to_complex();
    for (long j = 0; j < d.t; ++j)
      term *= cpow(f.eval_num(CoveringPoint(pts[static_cast<size_t>(j)]), tau),
                   ci.dims[static_cast<size_t>(j)]);
    sum += term;
  }
  return sum;
}

/* Coefficient of prod_j w_j^{N_j - 1} in prod_j S(w_j)^{N_j} prod_i V(mu_i w)
 * with S = w f(w) and V = w / S(w); the numerator is assembled first and the
 * denominator factors are folded in one row at a time. */
template <class R>
R residue_extraction(const CIModel& ci, const WSeries<R>& fhat) {
  const size_t t = ci.dims.size();
  std::vector<int> caps(t);
  for (size_t j = 0; j < t; ++j) caps[j] = static_cast<int>(ci.dims[j] - 1);
  WSeries<R> s = fhat.shifted(1);
  WSeries<R> v = s.inverse().shifted(1);
  MultiPoly<R> acc = MultiPoly<R>::one(caps);
  for (size_t j = 0; j < t; ++j) {
    std::vector<long> axis(t, 0);
    axis[j] = 1;
    acc = acc * compose_linear(s.pow(ci.dims[j]), axis, caps);
  }
  for (long i = 0; i < ci.matrix.rows(); ++i) {
    std::vector<long> row(t);
    bool all_zero = true;
    for (size_t j = 0; j < t; ++j) {
      row[j] = to_long(ci.matrix.at(i, static_cast<long>(j)));
      if (row[j] != 0) all_zero = false;
    }
    require(!all_zero, errc::invalid_config, "zero multidegree row");
    acc = acc * compose_linear(v, row, caps);
  }
  std::vector<int> key(caps.begin(), caps.end());
  return acc.coefficient(key);
}

/* Faithful q window of an expansion: the weakest order stamp among its
 * coefficients. Used to stamp extraction results whose terms cancelled away
 * (the sparse accumulator drops exact zeroes together with their stamps). */
QOrder expansion_window(const WSeries<QSeries>& fhat) {
  QOrder w = QOrder::inf();
  if (fhat.is_zero()) return w;
  for (long k = fhat.lead(); k <= fhat.top(); ++k) w = qorder_min(w, fhat.coefficient(k).order());
  return w;
}

long residue_w_top(const CIModel& ci) {
  long z = 1;
  for (long n : ci.dims) z += n - 1;
  return z;
}

/* Run a q-window-sensitive computation, once at the requested order and, if
 * negative lowest exponents ate part of the window, once more with the loss
 * added back. The loss is independent of the working order, so one repair
 * pass settles it. */
template <class Fn>
QSeries padded_series(const Rational& target, Fn&& fn) {
  QSeries out = fn(target);
  if (!qorder_le(target, out.order())) {
    Rational deficit = target - out.order().value;
    out = fn(target + deficit);
    require(qorder_le(target, out.order()), errc::truncation_insufficient,
            "window still short after padding");
  }
  return out.truncated(QOrder::at(target));
}

}  // namespace

void validate_model(const CIModel& ci) {
  require(!ci.dims.empty(), errc::invalid_config, "need at least one projective factor");
  for (long n : ci.dims) require(n >= 1, errc::invalid_config, "factor dimensions are positive");
  require(ci.matrix.cols() == static_cast<long>(ci.dims.size()), errc::invalid_config,
          "degree matrix width must match the number of factors");
}

CIModel worked_model() {
  return CIModel{{4, 3, 2}, IntMatrix::from_rows({{3, 0, 0}, {1, 2, 0}, {0, 1, 2}})};
}

void validate_spec(const GenusSpec& spec) {
  require(spec.level >= 2, errc::invalid_config, "level must be at least 2");
  require(spec.root_index >= 1 && spec.root_index < spec.level &&
              std::gcd(spec.root_index, spec.level) == 1,
          errc::invalid_config, "root index must pick a primitive root");
  require(spec.T > 0, errc::invalid_config, "q truncation must be positive");
  require(spec.Z >= 0, errc::invalid_config, "w order must be nonnegative");
}

JacobiFunction level_function(long n, long k, long field_order, const Rational& T) {
  std::vector<DivisionPoint> vertical = cyclic_group(DivisionPoint(Rational(0), rat(1, n)), n);
  return JacobiFunction::from_divisor(NomeSpec(Rational(n)), std::move(vertical),
                                      DivisionPoint(rat(k, n), Rational(0)), field_order, T);
}

ModelStructure model_structure(const CIModel& ci, const GenusSpec& spec) {
  validate_model(ci);
  validate_spec(spec);
  ModelStructure st;
  const IntMatrix& m = ci.matrix;
  if (m.rows() != m.cols() || m.rows() == 0 || m.det() == 0) return st;
  SNFResult s = snf(m);
  long det = 1;
  for (long i = 0; i < s.D.rows(); ++i) {
    st.diagonal.push_back(to_long(s.D.at(i, i)));
    det *= st.diagonal.back();
  }
  st.coset_count = det * det;
  st.cy_holds = cy_condition(m, ci.dims, spec.level);
  st.field_order = st.cy_holds ? division_setup(ci, spec).field : spec.level;
  return st;
}

QSeries residue_genus(const CIModel& ci, const GenusSpec& spec) {
  validate_model(ci);
  validate_spec(spec);
  const long z = residue_w_top(ci);
  auto once = [&](const Rational& target) {
    JacobiFunction f = level_function(spec.level, spec.root_index, spec.level, target);
    WSeries<QSeries> fhat = f.expand(CoveringPoint(), z);
    QSeries out = residue_extraction<QSeries>(ci, fhat);
    if (!out.order().finite) out = out.with_order(expansion_window(fhat));
    return out;
  };
  QSeries out = padded_series(spec.T, once);
  /* At level 2 every root of unity in sight is a sign, so surviving
   * cyclotomic parts can only be bookkeeping mistakes. Higher levels take
   * values in the cyclotomic field itself. */
  if (spec.level == 2)
    require(out.has_rational_coefficients(), errc::internal,
            "root-of-unity parts of the residue failed to cancel");
  return out;
}

Complex residue_genus_num(const CIModel& ci, const GenusSpec& spec) {
  validate_model(ci);
  validate_spec(spec);
  JacobiFunction f = level_function(spec.level, spec.root_index, spec.level, spec.T);
  return residue_extraction<Complex>(ci, f.expand_num(CoveringPoint(), spec.tau, residue_w_top(ci)));
}

QSeries division_sum_genus(const CIModel& ci, const GenusSpec& spec) {
  DivisionSetup d = division_setup(ci, spec);
  auto once = [&](const Rational& target) {
    JacobiFunction f = level_function(d.n, spec.root_index, d.field, target);
    QSeries cr = f.modulus(CoveringPoint(d.r)).pow(d.t);
    QSeries sum = division_sum_core(f, ci, d);
    return sum * cr.scaled_rat(Rational(parity_sign(d.t + 1) * d.det)).inverse();
  };
  return padded_series(spec.T, once);
}

Complex division_sum_genus_num(const CIModel& ci, const GenusSpec& spec) {
  DivisionSetup d = division_setup(ci, spec);
  JacobiFunction f = level_function(d.n, spec.root_index, d.field, spec.T);
  Complex cr = cpow(f.modulus_num(CoveringPoint(d.r), spec.tau), d.t);
  Complex sum = division_sum_core_num(f, ci, d, spec.tau);
  return sum / (static_cast<double>(parity_sign(d.t + 1) * d.det) * cr);
}

QSeries hypersurface_level2(long N, long m, const GenusSpec& spec) {
  validate_spec(spec);
  require(spec.level == 2, errc::invalid_config, "closed form is a level 2 statement");
  require(N >= 2 && m >= 1, errc::invalid_config, "need an ambient space and a degree");
  require((N - m) % 2 == 0, errc::parity_mismatch, "N and m must have the same parity");
  const long field = 2 * m;
  auto once = [&](const Rational& target) {
    JacobiFunction f = level_function(2, spec.root_index, field, target);
    QSeries c_half = f.modulus(CoveringPoint(rat(1, 2), Rational(0)));
    QSeries sum = QSeries::zero();
    for (long a = 0; a < m; ++a)
      for (long b = 0; b < m; ++b) {
        QSeries v = f.eval(CoveringPoint(rat(1, 2 * m) + rat(b, m), rat(a, 2 * m))).pow(N);
        sum = (a % 2) ? sum - v : sum + v;
      }
    return sum * c_half.scaled_rat(Rational(m)).inverse();
  };
  return padded_series(spec.T, once);
}

Complex hypersurface_level2_num(long N, long m, const GenusSpec& spec) {
  validate_spec(spec);
  require(spec.level == 2, errc::invalid_config, "closed form is a level 2 statement");
  require(N >= 2 && m >= 1, errc::invalid_config, "need an ambient space and a degree");
  require((N - m) % 2 == 0, errc::parity_mismatch, "N and m must have the same parity");
  JacobiFunction f = level_function(2, spec.root_index, 2 * m, spec.T);
  Complex c_half = f.modulus_num(CoveringPoint(rat(1, 2), Rational(0)), spec.tau);
  Complex sum(0.0, 0.0);
  for (long a = 0; a < m; ++a)
    for (long b = 0; b < m; ++b) {
      Complex v = cpow(f.eval_num(CoveringPoint(rat(1, 2 * m) + rat(b, m), rat(a, 2 * m)), spec.tau), N);
      sum += (a % 2) ? -v : v;
    }
  return sum / (static_cast<double>(m) * c_half);
}

namespace {

/* The three slots of the published sum: coordinates of s + (a + b tau) v for
 * v = (1/3, -1/6, 1/12), in curve units. */
CoveringPoint example_point(long slot, long a, long b) {
  switch (slot) {
    case 0:
      return reduced(CoveringPoint(rat(1, 6) + rat(a, 3), rat(b, 6)));
    case 1:
      return reduced(CoveringPoint(rat(1, 6) - rat(a, 6), -rat(b, 12)));
    default:
      return reduced(CoveringPoint(rat(1, 6) + rat(a, 12), rat(b, 24)));
  }
}

}  // namespace

QSeries ci_example_level2(const GenusSpec& spec) {
  validate_spec(spec);
  require(spec.level == 2, errc::invalid_config, "the worked sum is a level 2 statement");
  const long exps[3] = {4, 3, 2};
  auto once = [&](const Rational& target) {
    JacobiFunction f = level_function(2, 1, 12, target);
    QSeries c_half = f.modulus(CoveringPoint(rat(1, 2), Rational(0)));
    std::map<DivisionPoint, QSeries> powers[3];
    QSeries sum = QSeries::zero();
    for (long a = 0; a < 12; ++a)
      for (long b = 0; b < 12; ++b) {
        std::vector<DivisionPoint> pts(3);
        for (long slot = 0; slot < 3; ++slot) pts[slot] = example_point(slot, a, b).reduce();
        if (divisor_kills(f, pts)) continue;
        QSeries term = QSeries::one();
        for (long slot = 0; slot < 3; ++slot) {
          auto [it, fresh] = powers[slot].try_emplace(pts[slot]);
          if (fresh) it->second = f.eval(CoveringPoint(pts[slot])).pow(exps[slot]);
          term = term * it->second;
        }
        sum = (b % 2) ? sum - term : sum + term;
      }
    return sum * c_half.pow(3).scaled_rat(Rational(12)).inverse();
  };
  return padded_series(spec.T, once);
}

Complex ci_example_level2_num(const GenusSpec& spec) {
  validate_spec(spec);
  require(spec.level == 2, errc::invalid_config, "the worked sum is a level 2 statement");
  const long exps[3] = {4, 3, 2};
  JacobiFunction f = level_function(2, 1, 12, spec.T);
  Complex c_half = f.modulus_num(CoveringPoint(rat(1, 2), Rational(0)), spec.tau);
  Complex sum(0.0, 0.0);
  for (long a = 0; a < 12; ++a)
    for (long b = 0; b < 12; ++b) {
      std::vector<DivisionPoint> pts(3);
      for (long slot = 0; slot < 3; ++slot) pts[slot] = example_point(slot, a, b).reduce();
      if (divisor_kills(f, pts)) continue;
      Complex term(1.0, 0.0);
      for (long slot = 0; slot < 3; ++slot)
        term *= cpow(f.eval_num(CoveringPoint(pts[slot]), spec.tau), exps[slot]);
      sum += (b % 2) ? -term : term;
    }
  return sum / (12.0 * cpow(c_half, 3));
}

ResidueSumReport verify_residue_sum(const CIModel& ci, const GenusSpec& spec) {
  DivisionSetup d = division_setup(ci, spec);
  const long z = residue_w_top(ci);
  const Rational nt = pow_rat(Rational(d.n), d.t);
  auto once = [&](const Rational& target) {
    JacobiFunction f = level_function(d.n, spec.root_index, d.field, target);
    ResidueSumReport rep;
    WSeries<QSeries> fhat = f.expand(CoveringPoint(), z);
    QSeries origin = residue_extraction<QSeries>(ci, fhat);
    if (!origin.order().finite) origin = origin.with_order(expansion_window(fhat));
    QSeries cr = f.modulus(CoveringPoint(d.r)).pow(d.t);
    QSeries second = division_sum_core(f, ci, d) *
                     cr.scaled_rat(Rational(parity_sign(d.t) * d.det)).inverse();
    rep.origin_part = origin.scaled_rat(nt);
    rep.division_part = second.scaled_rat(nt);
    rep.total = rep.origin_part + rep.division_part;
    return rep;
  };
  ResidueSumReport rep = once(spec.T);
  if (!qorder_le(spec.T, rep.total.order())) rep = once(spec.T + (spec.T - rep.total.order().value));
  require(qorder_le(spec.T, rep.total.order()), errc::truncation_insufficient,
          "window still short after padding");
  rep.origin_part = rep.origin_part.truncated(QOrder::at(spec.T));
  rep.division_part = rep.division_part.truncated(QOrder::at(spec.T));
  rep.total = rep.total.truncated(QOrder::at(spec.T));
  std::optional<Rational> off = first_difference(rep.total, QSeries::zero());
  require(!off.has_value(), errc::residue_sum_nonzero,
          off ? "residues fail to cancel at exponent " + rat_str(*off) : "");
  return rep;
}

Complex verify_residue_sum_num(const CIModel& ci, const GenusSpec& spec, double tol) {
  DivisionSetup d = division_setup(ci, spec);
  JacobiFunction f = level_function(d.n, spec.root_index, d.field, spec.T);
  Complex origin = residue_extraction<Complex>(
      ci, f.expand_num(CoveringPoint(), spec.tau, residue_w_top(ci)));
  Complex cr = cpow(f.modulus_num(CoveringPoint(d.r), spec.tau), d.t);
  Complex second = division_sum_core_num(f, ci, d, spec.tau) /
                   (static_cast<double>(parity_sign(d.t) * d.det) * cr);
  Complex total = std::pow(static_cast<double>(d.n), static_cast<double>(d.t)) * (origin + second);
  require(std::abs(total) <= tol, errc::residue_sum_nonzero, "numeric residues fail to cancel");
  return total;
}

PartialFractionReport verify_partial_fraction(long m, const GenusSpec& spec) {
  validate_spec(spec);
  require(spec.level == 2, errc::invalid_config, "partial fractions are a level 2 statement");
  require(m >= 2 && m % 2 == 0, errc::invalid_config, "the pole pairing needs even m");
  const long field = lcm_long(2 * m, 5);
  const long z = std::max<long>(spec.Z, 2);
  const CoveringPoint base(rat(1, 5), Rational(0));
  auto omega = [&](long a, long b) {
    return CoveringPoint(rat(1, 2 * m) + rat(b, m), rat(a, 2 * m));
  };

  auto build = [&](const Rational& target) {
    JacobiFunction f = level_function(2, spec.root_index, field, target);
    QSeries c_half = f.modulus(CoveringPoint(rat(1, 2), Rational(0)));
    PartialFractionReport rep;
    rep.lhs = f.expand(reduced(base.scaled(m)), z + 1).compose_scale(Rational(m)).inverse();

    /* Each pole pair {omega_{a,b}, omega_{m-a,-b-1}} is crossed by exactly two
     * equal terms of the doubled range, so the full range with weight 1/(2m)
     * puts residue 1 on every pole orbit. Restricting to a < m would count
     * the self-paired rows twice and miss their shifts by tau entirely. */
    WSeries<QSeries> around_base = f.expand(base, z + 1);
    WSeries<QSeries> slope = around_base.derivative();
    WSeries<QSeries> acc = WSeries<QSeries>::zero();
    for (long a = 0; a < 2 * m; ++a)
      for (long b = 0; b < m; ++b) {
        WSeries<QSeries> den = around_base - WSeries<QSeries>::constant(f.eval(omega(a, b)));
        WSeries<QSeries> term = slope * den.inverse();
        acc = (a % 2) ? acc - term : acc + term;
      }
    rep.rhs = acc.scaled(c_half.scaled_rat(Rational(-2 * m)).inverse());

    /* Local data at every pole: the computed residue, the printed value
     * -(-1)^a / (m c(1/2)), and the character route through chi(-m h). */
    rep.residues.reserve(static_cast<size_t>(2 * m * m));
    for (long a = 0; a < 2 * m; ++a)
      for (long b = 0; b < m; ++b) {
        WSeries<QSeries> local =
            f.expand(reduced(omega(a, b).scaled(m)), 2).compose_scale(Rational(m)).inverse();
        QSeries res = local.coefficient(-1);
        QSeries printed = c_half.scaled_rat(Rational(parity_sign(a + 1) * m)).inverse();
        require(!first_difference(res, printed).has_value(), errc::identity_failed,
                "pole residue differs from the printed value");
        DivisionPoint h(rat(b, m), rat(a, 2 * m));
        require(f.character(-h.scaled(m)) == Scalar(Rational(parity_sign(a))),
                errc::identity_failed, "character route disagrees at a pole");
        rep.residues.push_back(res);
      }

    /* The involution z -> tau - z fixes f and pairs the poles. */
    for (long a = 0; a < m; ++a)
      for (long b = 0; b < m; ++b) {
        QSeries left = f.eval(omega(a, b));
        QSeries right = f.eval(omega((m - a) % (2 * m), m - 1 - b));
        require(!first_difference(left, right).has_value(), errc::identity_failed,
                "pole pairing fails under the involution");
      }

    rep.agreement_top = std::min(rep.lhs.top(), rep.rhs.top());
    long lead = std::min(rep.lhs.is_zero() ? 0 : rep.lhs.lead(),
                         rep.rhs.is_zero() ? 0 : rep.rhs.lead());
    for (long k = lead; k <= rep.agreement_top; ++k)
      require(!first_difference(rep.lhs.coefficient(k), rep.rhs.coefficient(k)).has_value(),
              errc::identity_failed, "sides differ at w-order " + std::to_string(k));
    return rep;
  };

  auto window = [&](const PartialFractionReport& rep) {
    QOrder o = QOrder::inf();
    long lead = std::min(rep.lhs.is_zero() ? 0 : rep.lhs.lead(),
                         rep.rhs.is_zero() ? 0 : rep.rhs.lead());
    for (long k = lead; k <= rep.agreement_top; ++k) {
      o = qorder_min(o, rep.lhs.coefficient(k).order());
      o = qorder_min(o, rep.rhs.coefficient(k).order());
    }
    for (const auto& r : rep.residues) o = qorder_min(o, r.order());
    return o;
  };

  PartialFractionReport rep = build(spec.T);
  QOrder got = window(rep);
  if (!qorder_le(spec.T, got)) {
    rep = build(spec.T + (spec.T - got.value));
    got = window(rep);
    require(qorder_le(spec.T, got), errc::truncation_insufficient,
            "window still short after padding");
  }
  return rep;
}

}  // namespace qgenus
