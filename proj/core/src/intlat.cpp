#include "qgenus/intlat.hpp"

#include <algorithm>
#include <set>

#include "qgenus/error.hpp"

namespace qgenus {

IntMatrix IntMatrix::identity(long n) {
  IntMatrix m(n, n);
  for (long i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::from_rows(const std::vector<std::vector<long>>& rows) {
  require(!rows.empty() && !rows[0].empty(), errc::invalid_config, "matrix must be nonempty");
  IntMatrix m(static_cast<long>(rows.size()), static_cast<long>(rows[0].size()));
  for (long i = 0; i < m.rows(); ++i) {
    require(static_cast<long>(rows[i].size()) == m.cols(), errc::invalid_config,
            "ragged matrix rows");
    for (long j = 0; j < m.cols(); ++j) m.at(i, j) = rows[i][j];
  }
  return m;
}

IntMatrix IntMatrix::operator*(const IntMatrix& rhs) const {
  require(cols_ == rhs.rows_, errc::internal, "matrix size mismatch");
  IntMatrix out(rows_, rhs.cols_);
  for (long i = 0; i < rows_; ++i)
    for (long k = 0; k < cols_; ++k)
      for (long j = 0; j < rhs.cols_; ++j) out.at(i, j) += at(i, k) * rhs.at(k, j);
  return out;
}

std::vector<Int> IntMatrix::column_sums() const {
  std::vector<Int> s(cols_);
  for (long j = 0; j < cols_; ++j)
    for (long i = 0; i < rows_; ++i) s[j] += at(i, j);
  return s;
}

Int IntMatrix::det() const {
  require(rows_ == cols_, errc::internal, "determinant needs a square matrix");
  IntMatrix m = *this;
  const long n = rows_;
  Int prev = 1;
  int sign = 1;
  for (long k = 0; k + 1 < n; ++k) {
    if (m.at(k, k) == 0) {
      long swap = -1;
      for (long i = k + 1; i < n && swap < 0; ++i)
        if (m.at(i, k) != 0) swap = i;
      if (swap < 0) return Int(0);
      for (long j = 0; j < n; ++j) std::swap(m.at(k, j), m.at(swap, j));
      sign = -sign;
    }
    for (long i = k + 1; i < n; ++i)
      for (long j = k + 1; j < n; ++j)
        m.at(i, j) = (m.at(i, j) * m.at(k, k) - m.at(i, k) * m.at(k, j)) / prev;
    prev = m.at(k, k);
  }
  return sign > 0 ? m.at(n - 1, n - 1) : -m.at(n - 1, n - 1);
}

namespace {

void swap_rows(IntMatrix& m, long a, long b) {
  if (a == b) return;
  for (long j = 0; j < m.cols(); ++j) std::swap(m.at(a, j), m.at(b, j));
}

void swap_cols(IntMatrix& m, long a, long b) {
  if (a == b) return;
  for (long i = 0; i < m.rows(); ++i) std::swap(m.at(i, a), m.at(i, b));
}

/* row a -= q * row b */
void row_sub(IntMatrix& m, long a, const Int& q, long b) {
  for (long j = 0; j < m.cols(); ++j) m.at(a, j) -= q * m.at(b, j);
}

void col_sub(IntMatrix& m, long a, const Int& q, long b) {
  for (long i = 0; i < m.rows(); ++i) m.at(i, a) -= q * m.at(i, b);
}

Int abs_int(const Int& v) { return v < 0 ? Int(-v) : v; }

}  // namespace

SNFResult snf(const IntMatrix& M) {
  const long l = M.rows(), t = M.cols();
  SNFResult r{IntMatrix::identity(l), M, IntMatrix::identity(t)};
  IntMatrix& D = r.D;
  const long rank_bound = std::min(l, t);

  for (long p = 0; p < rank_bound; ++p) {
    for (;;) {
      /* smallest nonzero |entry| in the trailing block, row-major scan */
      long pi = -1, pj = -1;
      for (long i = p; i < l; ++i)
        for (long j = p; j < t; ++j)
          if (D.at(i, j) != 0 && (pi < 0 || abs_int(D.at(i, j)) < abs_int(D.at(pi, pj)))) {
            pi = i;
            pj = j;
          }
      if (pi < 0) {
        p = rank_bound;  // trailing block is zero
        break;
      }
      swap_rows(D, p, pi);
      swap_rows(r.A, p, pi);
      swap_cols(D, p, pj);
      swap_cols(r.B, p, pj);

      bool clean = true;
      for (long i = p + 1; i < l; ++i) {
        if (D.at(i, p) == 0) continue;
        Int q = D.at(i, p) / D.at(p, p);
        row_sub(D, i, q, p);
        row_sub(r.A, i, q, p);
        if (D.at(i, p) != 0) clean = false;
      }
      for (long j = p + 1; j < t; ++j) {
        if (D.at(p, j) == 0) continue;
        Int q = D.at(p, j) / D.at(p, p);
        col_sub(D, j, q, p);
        col_sub(r.B, j, q, p);
        if (D.at(p, j) != 0) clean = false;
      }
      if (!clean) continue;

      /* pivot must divide the rest of the block for the chain */
      long bad = -1;
      for (long i = p + 1; i < l && bad < 0; ++i)
        for (long j = p + 1; j < t && bad < 0; ++j)
          if (D.at(i, j) % D.at(p, p) != 0) bad = i;
      if (bad < 0) break;
      row_sub(D, p, Int(-1), bad);
      row_sub(r.A, p, Int(-1), bad);
    }
    if (p >= rank_bound) break;
  }

  for (long k = 0; k < rank_bound; ++k)
    if (D.at(k, k) < 0) {
      for (long j = 0; j < t; ++j) D.at(k, j) = -D.at(k, j);
      for (long j = 0; j < l; ++j) r.A.at(k, j) = -r.A.at(k, j);
    }
  return r;
}

namespace {

/* B D^{-1} A applied to a rational vector, mod 1. */
std::vector<Rational> transport(const SNFResult& s, const std::vector<Rational>& v) {
  const long t = s.B.rows();
  std::vector<Rational> u(t), w(t);
  for (long i = 0; i < t; ++i)
    for (long j = 0; j < t; ++j) u[i] += Rational(s.A.at(i, j)) * v[j];
  for (long i = 0; i < t; ++i) {
    require(s.D.at(i, i) != 0, errc::singular_matrix, "degree matrix is singular");
    u[i] /= Rational(s.D.at(i, i));
  }
  for (long i = 0; i < t; ++i) {
    for (long j = 0; j < t; ++j) w[i] += Rational(s.B.at(i, j)) * u[j];
    w[i] = frac_mod1(w[i]);
  }
  return w;
}

}  // namespace

std::vector<DivisionPoint> solve_division(const IntMatrix& M, const std::vector<DivisionPoint>& r) {
  const long t = M.cols();
  require(M.rows() == t, errc::invalid_config, "division solve needs a square matrix");
  require(static_cast<long>(r.size()) == t, errc::invalid_config, "point vector size mismatch");
  SNFResult s = snf(M);

  std::vector<Rational> rx(t), ry(t);
  for (long i = 0; i < t; ++i) {
    rx[i] = r[i].x;
    ry[i] = r[i].y;
  }
  std::vector<Rational> sx = transport(s, rx), sy = transport(s, ry);

  std::vector<DivisionPoint> out;
  for (long i = 0; i < t; ++i) out.push_back(DivisionPoint(sx[i], sy[i]));

  for (long i = 0; i < t; ++i) {
    Rational mx(0), my(0);
    for (long j = 0; j < t; ++j) {
      mx += Rational(M.at(i, j)) * out[j].x;
      my += Rational(M.at(i, j)) * out[j].y;
    }
    require(frac_mod1(mx) == r[i].x && frac_mod1(my) == r[i].y, errc::internal,
            "division solve failed verification");
  }
  return out;
}

std::vector<std::vector<DivisionPoint>> coset_reps(const IntMatrix& M, long n) {
  const long t = M.cols();
  require(M.rows() == t, errc::invalid_config, "coset enumeration needs a square matrix");
  require(n >= 1, errc::invalid_config, "group order must be positive");
  SNFResult s = snf(M);

  std::vector<long> d(t);
  Int total = 1;
  for (long i = 0; i < t; ++i) {
    require(s.D.at(i, i) != 0, errc::singular_matrix, "degree matrix is singular");
    d[i] = to_long(s.D.at(i, i));
    total *= d[i];
  }

  /* column k of B / d_k, the generator attached to index k */
  std::vector<std::vector<Rational>> gen(t, std::vector<Rational>(t));
  for (long k = 0; k < t; ++k)
    for (long i = 0; i < t; ++i) gen[k][i] = rat(1, d[k]) * Rational(s.B.at(i, k));

  std::set<std::vector<DivisionPoint>> seen;
  std::vector<long> a(t, 0), b(t, 0);
  auto bump = [&](std::vector<long>& idx) {
    for (long k = 0; k < t; ++k) {
      if (++idx[k] < d[k]) return true;
      idx[k] = 0;
    }
    return false;
  };
  do {
    do {
      std::vector<DivisionPoint> h;
      for (long i = 0; i < t; ++i) {
        Rational x(0), y(0);
        for (long k = 0; k < t; ++k) {
          x += a[k] * gen[k][i];
          y += b[k] * gen[k][i];
        }
        h.push_back(DivisionPoint(frac_mod1(x), frac_mod1(y) / n));
      }
      seen.insert(std::move(h));
    } while (bump(b));
  } while (bump(a));

  require(Int(seen.size()) == total * total, errc::internal,
          "coset enumeration produced a wrong count");
  return std::vector<std::vector<DivisionPoint>>(seen.begin(), seen.end());
}

bool cy_condition(const IntMatrix& M, const std::vector<long>& dims, long expG) {
  require(static_cast<long>(dims.size()) == M.cols(), errc::invalid_config,
          "dimension vector size mismatch");
  require(expG >= 1, errc::invalid_config, "group exponent must be positive");
  std::vector<Int> sums = M.column_sums();
  for (long j = 0; j < M.cols(); ++j)
    if ((sums[j] - dims[j]) % expG != 0) return false;
  return true;
}

}  // namespace qgenus
