#pragma once

#include <vector>

#include "qgenus/error.hpp"
#include "qgenus/rational.hpp"

namespace qgenus {

/* The lattice nome is Q = q^e for the global nome q. */
struct NomeSpec {
  Rational e;

  explicit NomeSpec(Rational mult) : e(std::move(mult)) {
    require(e > 0, errc::invalid_config, "nome exponent must be positive");
  }
};

/* Torsion point x + yT of E = C/(Z + ZT), coordinates reduced mod 1.
 * Multiplicatively u = e^{2 pi i x} Q^y. */
struct DivisionPoint {
  Rational x, y;

  DivisionPoint() : x(0), y(0) {}
  DivisionPoint(const Rational& px, const Rational& py) : x(frac_mod1(px)), y(frac_mod1(py)) {}

  bool is_identity() const { return x == 0 && y == 0; }

  DivisionPoint operator+(const DivisionPoint& r) const { return DivisionPoint(x + r.x, y + r.y); }
  DivisionPoint operator-(const DivisionPoint& r) const { return DivisionPoint(x - r.x, y - r.y); }
  DivisionPoint operator-() const { return DivisionPoint(-x, -y); }
  DivisionPoint scaled(long k) const { return DivisionPoint(x * k, y * k); }

  bool operator==(const DivisionPoint& r) const { return x == r.x && y == r.y; }
  bool operator!=(const DivisionPoint& r) const { return !(*this == r); }
  bool operator<(const DivisionPoint& r) const { return x != r.x ? x < r.x : y < r.y; }
};

/* A lift of a division point to the covering: x only matters mod 1 (and is
 * kept reduced), while y is exact. The multiplicative coordinate
 * u = e^{2 pi i x} Q^y distinguishes lifts that differ in y. */
struct CoveringPoint {
  Rational x, y;

  CoveringPoint() : x(0), y(0) {}
  CoveringPoint(const Rational& px, const Rational& py) : x(frac_mod1(px)), y(py) {}
  explicit CoveringPoint(const DivisionPoint& p) : x(p.x), y(p.y) {}

  DivisionPoint reduce() const { return DivisionPoint(x, y); }

  CoveringPoint operator+(const CoveringPoint& r) const { return CoveringPoint(x + r.x, y + r.y); }
  CoveringPoint operator-(const CoveringPoint& r) const { return CoveringPoint(x - r.x, y - r.y); }
  CoveringPoint operator-() const { return CoveringPoint(-x, -y); }
  CoveringPoint scaled(long k) const { return CoveringPoint(x * k, y * k); }

  bool operator==(const CoveringPoint& r) const { return x == r.x && y == r.y; }
  bool operator!=(const CoveringPoint& r) const { return !(*this == r); }
};

inline std::vector<DivisionPoint> cyclic_group(const DivisionPoint& gen, long order) {
  require(order >= 1, errc::invalid_config, "group order must be positive");
  std::vector<DivisionPoint> g;
  g.reserve(order);
  DivisionPoint p;
  for (long k = 0; k < order; ++k) {
    g.push_back(p);
    p = p + gen;
  }
  require(p.is_identity(), errc::invalid_config, "generator order does not divide the group order");
  return g;
}

inline bool is_closed_group(const std::vector<DivisionPoint>& g) {
  if (g.empty()) return false;
  bool has_identity = false;
  for (const auto& a : g)
    if (a.is_identity()) has_identity = true;
  if (!has_identity) return false;
  for (const auto& a : g)
    for (const auto& b : g) {
      DivisionPoint s = a + b;
      bool found = false;
      for (const auto& c : g)
        if (c == s) found = true;
      if (!found) return false;
    }
  return true;
}

}  // namespace qgenus
