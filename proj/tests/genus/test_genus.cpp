#include <doctest.h>

#include <complex>
#include <numeric>

#include "../support/chern.hpp"
#include "qgenus/error.hpp"
#include "qgenus/genus.hpp"

using namespace qgenus;

namespace {

GenusSpec spec_at(long T) {
  GenusSpec s;
  s.T = Rational(T);
  return s;
}

CIModel hypersurface(long N, long m) { return CIModel{{N}, IntMatrix::from_rows({{m}})}; }

CIModel projective(std::vector<long> dims) {
  const long l = static_cast<long>(dims.size());
  return CIModel{std::move(dims), IntMatrix(0, l)};
}

Rational q_coeff(const QSeries& s, long k) { return s.coefficient(Rational(k)).as_rational(); }

template <class Fn>
errc thrown_code(Fn&& fn) {
  try {
    std::forward<Fn>(fn)();
  } catch (const error& e) {
    return e.code();
  }
  FAIL("expected an engine error");
  return errc::internal;
}

}  // namespace

TEST_CASE("characteristic class oracle fixes the constant terms") {
  CHECK(chern::hypersurface_genus_q0(4, 4) == chern::Rat(-4));
  CHECK(chern::hypersurface_genus_q0(4, 2) == chern::Rat(0));
  CHECK(chern::hypersurface_genus_q0(6, 2) == chern::Rat(1, 8));
  CHECK(chern::hypersurface_genus_q0(6, 4) == chern::Rat(25, 4));
  CHECK(chern::projective_genus_q0(3) == chern::Rat(1, 4));
  // classical Euler characteristics anchor the normalization
  CHECK(chern::euler_char_hypersurface(5, 5) == chern::Rat(-200));
  CHECK(chern::euler_char_hypersurface(4, 4) == chern::Rat(24));
  CHECK(chern::euler_char_hypersurface(4, 2) == chern::Rat(4));
}

TEST_CASE("residue route starts where the characteristic classes say") {
  GenusSpec s = spec_at(2);
  for (long m : {2L, 4L})
    CHECK(q_coeff(residue_genus(hypersurface(4, m), s), 0) == chern::hypersurface_genus_q0(4, m));
  for (long m : {2L, 4L})
    CHECK(q_coeff(residue_genus(hypersurface(6, m), s), 0) == chern::hypersurface_genus_q0(6, m));
  CHECK(q_coeff(residue_genus(projective({3}), s), 0) == chern::projective_genus_q0(3));
}

TEST_CASE("products of projective spaces multiply") {
  GenusSpec s = spec_at(3);
  QSeries pt = residue_genus(projective({1}), s);
  CHECK(pt.terms().size() == 1);
  CHECK(pt.coefficient(Rational(0)) == Scalar::one());

  QSeries p2 = residue_genus(projective({3}), s);
  CHECK(q_coeff(p2, 0) == Rational(1, 4));
  CHECK(q_coeff(p2, 1) == Rational(6));
  CHECK(q_coeff(p2, 2) == Rational(6));
  CHECK(q_coeff(p2, 3) == Rational(24));

  QSeries p2p2 = residue_genus(projective({3, 3}), s);
  CHECK(!p2p2.is_zero());
  CHECK(agree_through_common_order(p2p2, p2 * p2));

  // odd complex dimension kills each factor, and the zero window stays stamped
  QSeries p1 = residue_genus(projective({2}), s);
  QSeries p1p1 = residue_genus(projective({2, 2}), s);
  CHECK(p1.is_zero());
  CHECK(p1p1.is_zero());
  CHECK(p1.order() == QOrder::at(Rational(3)));
  CHECK(agree_through_common_order(p1p1, p1 * p1));
}

TEST_CASE("all three routes pin the quartic surface series") {
  GenusSpec s = spec_at(3);
  QSeries res = residue_genus(hypersurface(4, 4), s);
  CHECK(q_coeff(res, 0) == Rational(-4));
  CHECK(q_coeff(res, 1) == Rational(-96));
  CHECK(q_coeff(res, 2) == Rational(-96));
  CHECK(q_coeff(res, 3) == Rational(-384));
  CHECK(division_sum_genus(hypersurface(4, 4), s) == res);
  CHECK(hypersurface_level2(4, 4, s) == res);

  // the even quadric vanishes without being odd-dimensional
  CHECK(residue_genus(hypersurface(4, 2), s).is_zero());
  CHECK(division_sum_genus(hypersurface(4, 2), s).is_zero());
  CHECK(hypersurface_level2(4, 2, s).is_zero());
}

TEST_CASE("bidegree model of the same surface crosses the routes") {
  GenusSpec s = spec_at(3);
  CIModel ci{{3, 3}, IntMatrix::from_rows({{1, 2}, {2, 1}})};
  QSeries a = residue_genus(ci, s);
  QSeries b = division_sum_genus(ci, s);
  CHECK(a == b);
  // same cobordism class as the quartic, so the same series
  CHECK(q_coeff(a, 0) == Rational(-4));
  CHECK(q_coeff(a, 1) == Rational(-96));
  CHECK(q_coeff(a, 2) == Rational(-96));
  CHECK(q_coeff(a, 3) == Rational(-384));
}

TEST_CASE("worked intersection vanishes through every route") {
  GenusSpec s = spec_at(2);
  QSeries r = residue_genus(worked_model(), s);
  QSeries d = division_sum_genus(worked_model(), s);
  QSeries c = ci_example_level2(s);
  CHECK(r.is_zero());
  CHECK(d.is_zero());
  CHECK(c.is_zero());
  CHECK(r.order() == QOrder::at(Rational(2)));
}

TEST_CASE("odd dimension forces vanishing with a stamped window") {
  GenusSpec s = spec_at(3);
  QSeries a = residue_genus(hypersurface(5, 3), s);
  QSeries b = residue_genus(hypersurface(5, 5), s);
  CHECK(a.is_zero());
  CHECK(b.is_zero());
  CHECK(a.order() == QOrder::at(Rational(3)));
  CHECK(b.order() == QOrder::at(Rational(3)));
  CHECK(division_sum_genus(hypersurface(5, 5), s).is_zero());
}

TEST_CASE("level 3 output is cyclotomic and the routes agree across fields") {
  GenusSpec s = spec_at(2);
  s.level = 3;
  CHECK(residue_genus(hypersurface(3, 3), s).is_zero());
  CHECK(division_sum_genus(hypersurface(3, 3), s).is_zero());

  QSeries r = residue_genus(hypersurface(5, 2), s);
  CHECK(!r.has_rational_coefficients());
  CHECK(r.coefficient(Rational(0)) == Scalar(Cyclotomic(3, {rat(1, 9), rat(2, 9)})));
  CHECK(r.coefficient(Rational(1)) == Scalar(Cyclotomic(3, {Rational(-1), Rational(-2)})));
  CHECK(r.coefficient(Rational(2)) == Scalar(Cyclotomic(3, {Rational(3), Rational(6)})));
  // the division path works in a larger field; values must still match
  CHECK(division_sum_genus(hypersurface(5, 2), s) == r);

  // swapping the zero orbit conjugates the series
  GenusSpec s2 = s;
  s2.root_index = 2;
  QSeries rc = residue_genus(hypersurface(5, 2), s2);
  CHECK(rc.coefficient(Rational(0)) == Scalar(Cyclotomic(3, {rat(-1, 9), rat(-2, 9)})));
  CHECK(division_sum_genus(hypersurface(5, 2), s2) == rc);
}

TEST_CASE("genus form shifts by the character under the vertical subgroup") {
  JacobiFunction f = level_function(2, 1, 14, Rational(3));
  auto form = [&](long N, long m, const CoveringPoint& z) {
    return f.eval(z).pow(N) * f.eval(z.scaled(m)).inverse();
  };
  CoveringPoint z(rat(1, 7), rat(1, 5));
  CoveringPoint zg(rat(1, 7), rat(1, 5) + rat(1, 2));
  // N - m even: invariant, the sum over division points is well defined
  CHECK(agree_through_common_order(form(4, 2, z), form(4, 2, zg)));
  // N - m odd: anti-invariant, which is what rules such models out
  CHECK(agree_through_common_order(form(4, 3, z).scaled_rat(Rational(-1)), form(4, 3, zg)));
}

TEST_CASE("residues of both kinds cancel on the torus") {
  GenusSpec s = spec_at(3);
  ResidueSumReport quadric = verify_residue_sum(hypersurface(4, 2), s);
  CHECK(quadric.total.is_zero());

  ResidueSumReport quartic = verify_residue_sum(hypersurface(4, 4), s);
  CHECK(quartic.total.is_zero());
  CHECK(quartic.total.order() == QOrder::at(Rational(3)));
  CHECK(q_coeff(quartic.origin_part, 0) == Rational(-8));
  CHECK(q_coeff(quartic.origin_part, 3) == Rational(-768));
  CHECK(quartic.division_part == quartic.origin_part.scaled_rat(Rational(-1)));

  GenusSpec s5 = spec_at(5);
  CHECK(std::abs(verify_residue_sum_num(worked_model(), s5, 1e-8)) < 1e-8);
}

TEST_CASE("numeric backends shadow the exact series at tau = i") {
  GenusSpec s = spec_at(5);
  Complex exact = residue_genus(hypersurface(4, 4), s).eval_tau(s.tau);
  CHECK(std::abs(residue_genus_num(hypersurface(4, 4), s) - exact) < 1e-8);
  CHECK(std::abs(division_sum_genus_num(hypersurface(4, 4), s) - exact) < 1e-8);
  CHECK(std::abs(hypersurface_level2_num(4, 4, s) - exact) < 1e-8);

  CHECK(std::abs(residue_genus_num(worked_model(), s)) < 1e-8);
  CHECK(std::abs(division_sum_genus_num(worked_model(), s)) < 1e-8);
  CHECK(std::abs(ci_example_level2_num(s)) < 1e-8);

  GenusSpec s3 = spec_at(5);
  s3.level = 3;
  Complex e3 = residue_genus(hypersurface(5, 2), s3).eval_tau(s3.tau);
  CHECK(std::abs(division_sum_genus_num(hypersurface(5, 2), s3) - e3) < 1e-8);
}

TEST_CASE("partial fractions need the doubled pole range") {
  GenusSpec s = spec_at(3);
  s.Z = 6;
  PartialFractionReport rep = verify_partial_fraction(2, s);
  CHECK(rep.agreement_top >= 6);
  CHECK(rep.residues.size() == 8);
  QSeries r0 = rep.residues[0];
  CHECK(q_coeff(r0, 0) == Rational(2));
  CHECK(q_coeff(r0, 1) == Rational(16));
  CHECK(q_coeff(r0, 2) == Rational(80));
  CHECK(q_coeff(r0, 3) == Rational(320));
  CHECK(rep.residues[2] == r0.scaled_rat(Rational(-1)));

  // restricting the row index to a < m (with the matching weight 1/m)
  // double-counts the self-paired rows and loses the tau-shifted poles
  const long m = 2;
  JacobiFunction f = level_function(2, 1, std::lcm(2 * m, 5L), Rational(3));
  QSeries c_half = f.modulus(CoveringPoint(rat(1, 2), Rational(0)));
  WSeries<QSeries> around = f.expand(CoveringPoint(rat(1, 5), Rational(0)), 3);
  WSeries<QSeries> slope = around.derivative();
  WSeries<QSeries> acc = WSeries<QSeries>::zero();
  for (long a = 0; a < m; ++a)
    for (long b = 0; b < m; ++b) {
      CoveringPoint w(rat(1, 2 * m) + rat(b, m), rat(a, 2 * m));
      WSeries<QSeries> term = slope * (around - WSeries<QSeries>::constant(f.eval(w))).inverse();
      acc = (a % 2) ? acc - term : acc + term;
    }
  WSeries<QSeries> half = acc.scaled(c_half.scaled_rat(Rational(-m)).inverse());
  CHECK(first_difference(half.coefficient(0), rep.lhs.coefficient(0)).has_value());
}

TEST_CASE("division data of the worked intersection") {
  ModelStructure ms = model_structure(worked_model(), spec_at(2));
  CHECK(ms.diagonal == std::vector<long>{1, 1, 12});
  CHECK(ms.coset_count == 144);
  CHECK(ms.cy_holds);
  CHECK(ms.field_order == 12);
}

TEST_CASE("invalid models and specs are classified") {
  GenusSpec s = spec_at(2);
  CHECK(thrown_code([&] { division_sum_genus(hypersurface(4, 3), s); }) == errc::condition_violated);
  CHECK(thrown_code([&] { hypersurface_level2(5, 2, s); }) == errc::parity_mismatch);
  CIModel degenerate{{2, 2}, IntMatrix::from_rows({{1, 1}, {1, 1}})};
  CHECK(thrown_code([&] { division_sum_genus(degenerate, s); }) == errc::singular_matrix);
  GenusSpec bad = spec_at(2);
  bad.level = 4;
  bad.root_index = 2;
  CHECK(thrown_code([&] { residue_genus(hypersurface(4, 4), bad); }) == errc::invalid_config);
  GenusSpec negT = spec_at(2);
  negT.T = Rational(0);
  CHECK(thrown_code([&] { residue_genus(hypersurface(4, 4), negT); }) == errc::invalid_config);
}
