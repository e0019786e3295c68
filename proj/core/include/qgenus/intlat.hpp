#pragma once

#include <vector>

#include "qgenus/points.hpp"
#include "qgenus/rational.hpp"

namespace qgenus {

/* Dense integer matrix, arbitrary-precision entries. Sized for degree
 * matrices: a handful of rows and columns. */
class IntMatrix {
public:
  IntMatrix(long rows, long cols) : rows_(rows), cols_(cols), a_(rows * cols) {}
  static IntMatrix identity(long n);
  static IntMatrix from_rows(const std::vector<std::vector<long>>& rows);

  long rows() const { return rows_; }
  long cols() const { return cols_; }
  Int& at(long i, long j) { return a_[i * cols_ + j]; }
  const Int& at(long i, long j) const { return a_[i * cols_ + j]; }

  IntMatrix operator*(const IntMatrix& rhs) const;
  bool operator==(const IntMatrix& rhs) const { return rows_ == rhs.rows_ && cols_ == rhs.cols_ && a_ == rhs.a_; }

  std::vector<Int> column_sums() const;
  /* Bareiss fraction-free elimination; square only. */
  Int det() const;

private:
  long rows_, cols_;
  std::vector<Int> a_;
};

/* A M B = D with A, B unimodular and D diagonal, d_1 | d_2 | ..., all
 * diagonal entries nonnegative. */
struct SNFResult {
  IntMatrix A, D, B;
};

SNFResult snf(const IntMatrix& M);

/* Solve [M] s = r on the torus E^t, coordinates (x, y) per component with
 * both taken mod 1. Throws singular_matrix when det M = 0. */
std::vector<DivisionPoint> solve_division(const IntMatrix& M, const std::vector<DivisionPoint>& r);

/* Representatives of H / G^t where H is the preimage of G^t under [M] and
 * G is cyclic of order n in the y-direction: canonical points
 * B D^{-1} (a + b tau) with 0 <= a_k, b_k < d_k, x mod 1 and y mod 1/n,
 * sorted. Exactly (det M)^2 of them. */
std::vector<std::vector<DivisionPoint>> coset_reps(const IntMatrix& M, long n);

/* Every column sum of M congruent to the matching entry of dims mod expG. */
bool cy_condition(const IntMatrix& M, const std::vector<long>& dims, long expG);

}  // namespace qgenus
