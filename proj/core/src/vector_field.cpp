#include "dulac/vector_field.hpp"

#include "dulac/error.hpp"

namespace dulac {

VectorField make_field(Poly p, Poly q) {
  if (!p.is_real() || !q.is_real())
    throw Error(ErrorKind::ComplexCoefficients, "vector field components must have real coefficients");
  VectorField X;
  X.p = std::move(p);
  X.q = std::move(q);
  return X;
}

Poly divergence(const VectorField& X) { return derive(X.p, Axis::X) + derive(X.q, Axis::Y); }

Poly lie_derivative(const Poly& f, const VectorField& X) {
  return X.p * derive(f, Axis::X) + X.q * derive(f, Axis::Y);
}

Poly div_product(const Poly& B, const VectorField& X) {
  // Expanded as the divergence of the product field (B P, B Q) so that the
  // Leibniz form B Div X + <grad B, X> stays an independent check.
  return derive(B * X.p, Axis::X) + derive(B * X.q, Axis::Y);
}

std::string to_vf_text(const VectorField& X) {
  std::string out = "P = " + to_string(X.p) + "\nQ = " + to_string(X.q) + "\n";
  for (const auto& [name, value] : X.params) out += "param " + name + " = " + to_string(value) + "\n";
  return out;
}

}  // namespace dulac
