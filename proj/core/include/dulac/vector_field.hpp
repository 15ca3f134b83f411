#pragma once

#include <algorithm>
#include <map>
#include <string>

#include "dulac/poly.hpp"

namespace dulac {

/// Planar polynomial field dx/dt = P, dy/dt = Q with real coefficients.
/// Parameters are already substituted into p and q.
struct VectorField {
  Poly p;
  Poly q;
  std::map<std::string, Rat> params;
  std::string source_text;

  /// Max of deg P, deg Q.
  int degree() const { return std::max(p.degree(), q.degree()); }

  /// Equality ignores source_text.
  friend bool operator==(const VectorField& a, const VectorField& b) {
    return a.p == b.p && a.q == b.q && a.params == b.params;
  }
};

/// Builds a field from two real polynomials; throws ComplexCoefficients.
VectorField make_field(Poly p, Poly q);

/// dP/dx + dQ/dy.
Poly divergence(const VectorField& X);

/// <grad f, X> = P f_x + Q f_y.
Poly lie_derivative(const Poly& f, const VectorField& X);

/// Div(B X) = B Div X + <grad B, X>, expanded as one polynomial.
Poly div_product(const Poly& B, const VectorField& X);

/// `.vf` text that parses back to an equal field.
std::string to_vf_text(const VectorField& X);

}  // namespace dulac
