#pragma once

#include <array>
#include <vector>

#include "dulac/box.hpp"
#include "dulac/poly.hpp"

namespace dulac {

/// Tensor Bernstein coefficients of a real polynomial on a box, at degrees
/// (m, n) = (deg_x p, deg_y p). Corner coefficients are the corner values, and
/// every value on the box lies between the min and max coefficient.
struct BernsteinPatch {
  Box2 box;
  int m = 0;
  int n = 0;
  std::vector<Rat> coefficients;  // row-major: index k * (n + 1) + l

  const Rat& at(int k, int l) const { return coefficients[static_cast<std::size_t>(k * (n + 1) + l)]; }
  Rat& at(int k, int l) { return coefficients[static_cast<std::size_t>(k * (n + 1) + l)]; }

  const Rat& min_coefficient() const;
  const Rat& max_coefficient() const;
  bool all_positive() const;
};

/// Throws ComplexCoefficients for non-real p.
BernsteinPatch bernstein_coefficients(const Poly& p, const Box2& box);

/// Exact de Casteljau split at the box midpoint in both axes. Children are
/// ordered lower-left, lower-right, upper-left, upper-right.
std::array<BernsteinPatch, 4> subdivide(const BernsteinPatch& patch);

/// Minimum Bernstein coefficient over the 4^depth leaves of a uniform
/// subdivision.
Rat uniform_lower_bound(const Poly& p, const Box2& box, int depth);

}  // namespace dulac
