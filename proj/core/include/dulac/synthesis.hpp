#pragma once

#include <array>
#include <optional>
#include <string_view>
#include <vector>

#include "dulac/box.hpp"
#include "dulac/certify.hpp"
#include "dulac/multiplier.hpp"
#include "dulac/vector_field.hpp"

namespace dulac {

/// Row-major [[a, b], [c, d]].
struct Matrix2 {
  Rat a, b, c, d;

  Rat trace() const { return a + d; }
  Rat det() const { return a * d - b * c; }
  Matrix2 transpose() const { return {a, c, b, d}; }
};

/// "a,b;c,d" with rational or decimal entries.
Matrix2 parse_matrix(std::string_view text);

/// X(z) = A z.
VectorField linear_field(const Matrix2& A);

/// B = b20 (x-x0)^2 + b11 (x-x0)(y-y0) + b02 (y-y0)^2.
struct QuadraticMultiplier {
  Rat b20, b11, b02;
  Rat x0, y0;

  Point origin() const { return {x0.get_d(), y0.get_d()}; }
  Poly to_poly() const;
};

/// Quadratic multiplier B of the linear field A z with Div(B A z) = |A z|^2,
/// found by matching the x^2, xy, y^2 coefficients and solving the exact 3x3
/// system
///
///   [3a+d   c      0   ] [b20]   [a^2 + c^2]
///   [2b     2(a+d) 2c  ] [b11] = [2(ab + cd)]
///   [0      b      a+3d] [b02]   [b^2 + d^2]
///
/// whose determinant is 2(a+d)(3a^2 + 10ad - 4bc + 3d^2).
///
/// Throws DoubleZeroEigenvalue (trace and determinant zero), TraceZero, or
/// SingularAnsatz.
QuadraticMultiplier quadratic_dulac_linear(const Matrix2& A);

/// The two readings of the ambiguous b11 term "b(c^-3d^2)".
enum class B11Reading { CMinus3D2, C2Minus3D2 };

struct QuadraticCoefficients {
  Rat b20, b02, b11;
};

/// Closed-form fractions for b20, b02 and b11 as printed; kept for
/// comparison with the solved system. C2Minus3D2 is the reading that agrees
/// with quadratic_dulac_linear.
QuadraticCoefficients printed_coefficients(const Matrix2& A, B11Reading reading);

struct GradientMultiplier {
  Multiplier multiplier;
  Poly carrier;
};

/// For X = grad V: e^V with carrier dV + |grad V|^2, e^-V with dV - |grad V|^2,
/// and V with V dV + |grad V|^2 (d the Laplacian). Throws ConstantPotential.
std::array<GradientMultiplier, 3> gradient_multipliers(const Poly& V);

/// The gradient field (V_x, V_y).
VectorField gradient_field(const Poly& V);

/// The four rectangles of [c-w, c+w]^2 minus [c-w/2, c+w/2]^2 (bottom, top,
/// left, right).
std::array<Box2, 4> ring_rectangles(const Rat& cx, const Rat& cy, const Rat& outer_half_width);

/// Certifies `carrier` on one ring; the merged certificate's box is the outer
/// square.
Certificate certify_ring(const Poly& carrier, const Rat& cx, const Rat& cy, const Rat& outer_half_width,
                         int max_depth = kDefaultMaxDepth);

struct LocalDulac {
  QuadraticMultiplier quadratic;
  Multiplier multiplier;
  Box2 box;
  /// Half-width of the uncertified square around the equilibrium.
  Rat puncture_half_width;
  Certificate certificate;
};

/// Quadratic multiplier of the Jacobian at a hyperbolic equilibrium, with the
/// largest box of half-width 2^-j (j >= 0) whose sign-carrier is certified on
/// every ring down to a puncture of half-width <= min_radius.
///
/// Throws NotAnEquilibrium, NonHyperbolicLinearization, CertificationFailed,
/// or the quadratic_dulac_linear errors.
LocalDulac local_dulac_hyperbolic(const VectorField& system, Point eq, double min_radius = 1e-3,
                                  int max_depth = kDefaultMaxDepth);

/// Exact Jacobian of X at a rational point.
Matrix2 jacobian_at(const VectorField& X, const Rat& x, const Rat& y);

struct Segment {
  Point a;
  Point b;
};

struct FlowBoxNode {
  Point z;
  double t = 0.0;
  double b = 0.0;
  /// Div(B X) along the flow, B Div X + dB/dt = g(z).
  double div_bx = 0.0;
  /// Finite-difference divergence of B X in flow-box coordinates; NaN on
  /// boundary nodes.
  double div_bx_fd = 0.0;
};

struct SampledMultiplier {
  int n_across = 0;
  int n_along = 0;
  Segment transversal;
  double t_span = 0.0;
  /// Max |div_bx_fd - div_bx| over interior nodes.
  double fd_discrepancy = 0.0;
  std::vector<FlowBoxNode> nodes;  // index k * n_along + m

  const FlowBoxNode& node(int k, int m) const {
    return nodes[static_cast<std::size_t>(k * n_along + m)];
  }
};

struct FlowBoxOptions {
  double tol = 1e-10;
  /// Trajectories must stay inside; defaults to |x|, |y| <= 1e6.
  std::optional<Box2> window;
};

/// Integrates dB/dt = g - B Div X with B = 1 on the transversal along
/// n_across trajectories and samples n_along times in [0, t_span].
///
/// Throws EquilibriumEncountered (|X| < 1e-8 at a sample), LeftWindow,
/// NotPositive (g <= 0 at a sample, or a nonpositive finite-difference
/// divergence at an interior node; the message names the node).
SampledMultiplier flowbox_dulac(const VectorField& system, Segment transversal, const Poly& g, int n_across,
                                int n_along, double t_span, const FlowBoxOptions& options = {});

}  // namespace dulac
