#pragma once

#include <vector>

#include "qgenus/intlat.hpp"
#include "qgenus/jacobi.hpp"
#include "qgenus/multipoly.hpp"

namespace qgenus {

/* Ambient product of projective spaces and the degree data of the cutting
 * hypersurfaces: factor j is CP^{N_j - 1}, hypersurface i has multidegree
 * given by row i of the matrix. */
struct CIModel {
  std::vector<long> dims;
  IntMatrix matrix;
};

void validate_model(const CIModel& ci);

/* The worked complete intersection in CP^3 x CP^2 x CP^1. */
CIModel worked_model();

enum class Backend { exact, numeric };

/* Level, expansion orders, and the root index picking the translation orbit
 * of the level function. tau only drives the numeric backend. */
struct GenusSpec {
  long level = 2;
  long root_index = 1;
  Rational T = Rational(4);
  long Z = 8;
  Backend backend = Backend::exact;
  Complex tau = Complex(0.0, 1.0);
};

void validate_spec(const GenusSpec& spec);

/* The level-n function every route is built on: simple poles on the vertical
 * subgroup of order n, simple zeroes on its translate by (k/n, 0). */
JacobiFunction level_function(long n, long k, long field_order, const Rational& T);

/* Structural facts the front end echoes: invariant factors of the degree
 * matrix, size of the division-point transversal, the level congruence
 * verdict, and the cyclotomic field the exact sum lives in. Only filled for
 * square nonsingular matrices; the defaults mean "not applicable". */
struct ModelStructure {
  std::vector<long> diagonal;
  long coset_count = 0;
  bool cy_holds = false;
  long field_order = 0;
};
ModelStructure model_structure(const CIModel& ci, const GenusSpec& spec);

/* Coefficient of (w_1 ... w_t)^{-1} at the origin of
 * prod_j f(w_j)^{N_j} / prod_i f(mu_i w); works for any row count, including
 * zero rows (the bare product of projective spaces). */
QSeries residue_genus(const CIModel& ci, const GenusSpec& spec);
Complex residue_genus_num(const CIModel& ci, const GenusSpec& spec);

/* The same genus as a finite sum over the division-point transversal
 * H / G^t, with the sign character measured from the level function. */
QSeries division_sum_genus(const CIModel& ci, const GenusSpec& spec);
Complex division_sum_genus_num(const CIModel& ci, const GenusSpec& spec);

/* Level 2 closed form for a degree-m hypersurface in CP^{N-1}; N and m must
 * have the same parity. */
QSeries hypersurface_level2(long N, long m, const GenusSpec& spec);
Complex hypersurface_level2_num(long N, long m, const GenusSpec& spec);

/* Level 2 closed form for the worked model, written exactly as the published
 * 144-term sum with sign (-1)^b and exponents 4, 3, 2. */
QSeries ci_example_level2(const GenusSpec& spec);
Complex ci_example_level2_num(const GenusSpec& spec);

/* Both kinds of residues of the genus form on the torus: the origin part is
 * n^t times the iterated residue at the identity, the division part is the
 * total over the second-kind poles. Their sum must vanish. */
struct ResidueSumReport {
  QSeries origin_part;
  QSeries division_part;
  QSeries total;
};
ResidueSumReport verify_residue_sum(const CIModel& ci, const GenusSpec& spec);
Complex verify_residue_sum_num(const CIModel& ci, const GenusSpec& spec, double tol);

/* Partial fraction expansion of 1/f(mz) at level 2: both sides expanded
 * around a generic base point, the residues at every pole, and the w-order
 * through which the two sides were compared. residues[a * m + b] is the
 * residue at omega_{a,b} with 0 <= a < 2m, 0 <= b < m. */
struct PartialFractionReport {
  WSeries<QSeries> lhs, rhs;
  std::vector<QSeries> residues;
  long agreement_top = 0;
};
PartialFractionReport verify_partial_fraction(long m, const GenusSpec& spec);

}  // namespace qgenus
