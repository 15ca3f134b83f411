#include "dulac/synthesis.hpp"

#include <cmath>
#include <string>

#include "dulac/error.hpp"
#include "dulac/ode.hpp"

namespace dulac {

namespace {

// Exact Gaussian elimination; returns nullopt when singular.
std::optional<std::array<Rat, 3>> solve3(std::array<std::array<Rat, 3>, 3> m, std::array<Rat, 3> rhs) {
  for (int col = 0; col < 3; ++col) {
    int pivot = -1;
    for (int r = col; r < 3; ++r)
      if (sgn(m[r][col]) != 0) {
        pivot = r;
        break;
      }
    if (pivot < 0) return std::nullopt;
    std::swap(m[col], m[pivot]);
    std::swap(rhs[col], rhs[pivot]);
    for (int r = 0; r < 3; ++r) {
      if (r == col || sgn(m[r][col]) == 0) continue;
      const Rat f = m[r][col] / m[col][col];
      for (int c = col; c < 3; ++c) m[r][c] -= f * m[col][c];
      rhs[r] -= f * rhs[col];
    }
  }
  return std::array<Rat, 3>{rhs[0] / m[0][0], rhs[1] / m[1][1], rhs[2] / m[2][2]};
}

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    auto end = s.find(sep, start);
    std::string piece(s.substr(start, end == std::string_view::npos ? std::string_view::npos : end - start));
    while (!piece.empty() && piece.front() == ' ') piece.erase(piece.begin());
    while (!piece.empty() && piece.back() == ' ') piece.pop_back();
    out.push_back(std::move(piece));
    if (end == std::string_view::npos) break;
    start = end + 1;
  }
  return out;
}

}  // namespace

Matrix2 parse_matrix(std::string_view text) {
  const auto rows = split(text, ';');
  if (rows.size() != 2) throw Error(ErrorKind::Syntax, "matrix needs the form a,b;c,d");
  const auto r0 = split(rows[0], ',');
  const auto r1 = split(rows[1], ',');
  if (r0.size() != 2 || r1.size() != 2) throw Error(ErrorKind::Syntax, "matrix needs the form a,b;c,d");
  return {parse_rat(r0[0]), parse_rat(r0[1]), parse_rat(r1[0]), parse_rat(r1[1])};
}

VectorField linear_field(const Matrix2& A) {
  return make_field(Poly(A.a) * Poly::x() + Poly(A.b) * Poly::y(), Poly(A.c) * Poly::x() + Poly(A.d) * Poly::y());
}

Poly QuadraticMultiplier::to_poly() const {
  const Poly u = Poly::x() - Poly(x0);
  const Poly v = Poly::y() - Poly(y0);
  return Poly(b20) * u * u + Poly(b11) * u * v + Poly(b02) * v * v;
}

QuadraticMultiplier quadratic_dulac_linear(const Matrix2& A) {
  const Rat& a = A.a;
  const Rat& b = A.b;
  const Rat& c = A.c;
  const Rat& d = A.d;
  if (sgn(A.trace()) == 0) {
    if (sgn(A.det()) == 0) throw Error(ErrorKind::DoubleZeroEigenvalue, "both eigenvalues are zero");
    throw Error(ErrorKind::TraceZero, "trace zero: the quadratic ansatz does not apply");
  }
  const std::array<std::array<Rat, 3>, 3> m{{
      {Rat(3 * a + d), c, Rat(0)},
      {Rat(2 * b), Rat(2 * (a + d)), Rat(2 * c)},
      {Rat(0), b, Rat(a + 3 * d)},
  }};
  const std::array<Rat, 3> rhs{Rat(a * a + c * c), Rat(2 * (a * b + c * d)), Rat(b * b + d * d)};
  auto sol = solve3(m, rhs);
  if (!sol) throw Error(ErrorKind::SingularAnsatz, "3a^2 + 10ad - 4bc + 3d^2 = 0: coefficient system is singular");
  QuadraticMultiplier q;
  q.b20 = (*sol)[0];
  q.b11 = (*sol)[1];
  q.b02 = (*sol)[2];
  return q;
}

QuadraticCoefficients printed_coefficients(const Matrix2& A, B11Reading reading) {
  const Rat& a = A.a;
  const Rat& b = A.b;
  const Rat& c = A.c;
  const Rat& d = A.d;
  const Rat den = (a + d) * (3 * a * a + 10 * a * d - 4 * b * c + 3 * d * d);
  if (sgn(den) == 0) throw Error(ErrorKind::DivisionByZero, "printed coefficients have a zero denominator");

  const Rat a2 = a * a, a3 = a2 * a, a4 = a3 * a;
  const Rat b2 = b * b, b3 = b2 * b;
  const Rat c2 = c * c;
  const Rat d2 = d * d, d4 = d2 * d2;

  QuadraticCoefficients out;
  out.b20 = Rat(a4 + 4 * a3 * d - a2 * (2 * b * c - c2 - 3 * d2) + 3 * a * c * d * (c - b) +
                c2 * (b2 - b * c + d2)) /
            den;
  out.b02 = Rat(a2 * (b2 + 3 * d2) + a * d * (3 * b2 - 3 * b * c + 4 * d2) - b3 * c + b2 * (c2 + d2) -
                2 * b * c * d2 + d4) /
            den;
  const Rat ambiguous = reading == B11Reading::C2Minus3D2 ? Rat(c2 - 3 * d2) : Rat(c - 3 * d2);
  out.b11 = Rat(2 * a3 * b + a2 * d * (7 * b + 3 * c) - a * (3 * b2 * c + b * ambiguous - 7 * c * d2) -
                c * d * (b2 + 3 * b * c - 2 * d2)) /
            den;
  return out;
}

VectorField gradient_field(const Poly& V) { return make_field(derive(V, Axis::X), derive(V, Axis::Y)); }

std::array<GradientMultiplier, 3> gradient_multipliers(const Poly& V) {
  if (!V.is_real()) throw Error(ErrorKind::ComplexCoefficients, "potential must be real");
  if (V.is_constant()) throw Error(ErrorKind::ConstantPotential, "potential must have degree >= 1");
  const Poly vx = derive(V, Axis::X);
  const Poly vy = derive(V, Axis::Y);
  const Poly laplacian = derive(vx, Axis::X) + derive(vy, Axis::Y);
  const Poly grad_sq = vx * vx + vy * vy;
  return {{
      {Multiplier::exponential(V), laplacian + grad_sq},
      {Multiplier::exponential(-V), laplacian - grad_sq},
      {Multiplier::polynomial(V), V * laplacian + grad_sq},
  }};
}

std::array<Box2, 4> ring_rectangles(const Rat& cx, const Rat& cy, const Rat& w) {
  const Rat h = w / 2;
  return {{
      Box2::make(cx - w, cx + w, cy - w, cy - h),
      Box2::make(cx - w, cx + w, cy + h, cy + w),
      Box2::make(cx - w, cx - h, cy - h, cy + h),
      Box2::make(cx + h, cx + w, cy - h, cy + h),
  }};
}

Certificate certify_ring(const Poly& carrier, const Rat& cx, const Rat& cy, const Rat& w, int max_depth) {
  std::array<Certificate, 4> parts;
  const auto rects = ring_rectangles(cx, cy, w);
  for (std::size_t i = 0; i < 4; ++i) {
    parts[i] = certify_positive(carrier, rects[i], max_depth);
    if (parts[i].is_violation()) return merge_certificates(carrier, Box2::centered(cx, cy, w), std::span(parts.data(), i + 1));
  }
  return merge_certificates(carrier, Box2::centered(cx, cy, w), parts);
}

Matrix2 jacobian_at(const VectorField& X, const Rat& x, const Rat& y) {
  auto at = [&](const Poly& p) { return evaluate_exact(p, x, y).re; };
  return {at(derive(X.p, Axis::X)), at(derive(X.p, Axis::Y)), at(derive(X.q, Axis::X)), at(derive(X.q, Axis::Y))};
}

LocalDulac local_dulac_hyperbolic(const VectorField& system, Point eq, double min_radius, int max_depth) {
  if (!(min_radius > 0.0) || min_radius >= 1.0) throw Error(ErrorKind::InvalidArgument, "min_radius must be in (0, 1)");
  const double px = evaluate(system.p, eq).real();
  const double qx = evaluate(system.q, eq).real();
  if (std::hypot(px, qx) > 1e-10) throw Error(ErrorKind::NotAnEquilibrium, "|X(eq)| exceeds 1e-10");

  const Rat cx = rat_from_double(eq.x);
  const Rat cy = rat_from_double(eq.y);
  const Matrix2 J = jacobian_at(system, cx, cy);
  if (sgn(J.trace()) == 0)
    throw Error(ErrorKind::NonHyperbolicLinearization, "Jacobian trace is zero at the equilibrium");

  LocalDulac out;
  out.quadratic = quadratic_dulac_linear(J);
  out.quadratic.x0 = cx;
  out.quadratic.y0 = cy;
  out.multiplier = Multiplier::polynomial(out.quadratic.to_poly());
  const Poly carrier = sign_carrier(out.multiplier, system);

  // Ring k has outer half-width 2^-k; the innermost ring K is the first whose
  // inner half-width 2^-(K+1) is <= min_radius.
  const Rat min_r = rat_from_double(min_radius);
  int innermost = 0;
  while (Rat(1, mpz_class(1) << (innermost + 1)) > min_r) ++innermost;

  std::vector<Certificate> rings;
  int outermost = innermost + 1;
  for (int k = innermost; k >= 0; --k) {
    const Rat w(mpz_class(1), mpz_class(1) << k);
    Certificate c = certify_ring(carrier, cx, cy, w, max_depth);
    if (!c.is_positive()) {
      if (k == innermost)
        throw Error(ErrorKind::CertificationFailed,
                    "sign-carrier not certified on the smallest ring (half-width " + to_string(w) + ")");
      break;
    }
    rings.push_back(std::move(c));
    outermost = k;
  }
  const Rat w(mpz_class(1), mpz_class(1) << outermost);
  out.box = Box2::centered(cx, cy, w);
  out.puncture_half_width = Rat(mpz_class(1), mpz_class(1) << (innermost + 1));
  out.certificate = merge_certificates(carrier, out.box, rings);
  return out;
}

SampledMultiplier flowbox_dulac(const VectorField& system, Segment transversal, const Poly& g, int n_across,
                                int n_along, double t_span, const FlowBoxOptions& options) {
  if (n_across < 3 || n_along < 3) throw Error(ErrorKind::InvalidArgument, "flow box needs at least 3x3 nodes");
  if (!(t_span > 0.0)) throw Error(ErrorKind::InvalidArgument, "t_span must be positive");
  const Box2 window = options.window.value_or(Box2::make(Rat(-1000000), Rat(1000000), Rat(-1000000), Rat(1000000)));
  const NumericPoly P(system.p), Q(system.q), div(divergence(system)), G(g);

  SampledMultiplier out;
  out.n_across = n_across;
  out.n_along = n_along;
  out.transversal = transversal;
  out.t_span = t_span;
  out.nodes.resize(static_cast<std::size_t>(n_across * n_along));
  const double dt = t_span / (n_along - 1);

  auto rhs = [&](const State<3>& s) {
    return State<3>{P(s[0], s[1]), Q(s[0], s[1]), G(s[0], s[1]) - s[2] * div(s[0], s[1])};
  };

  auto check_sample = [&](Point z, int k, int m) {
    const std::string where = " at node (" + std::to_string(k) + ", " + std::to_string(m) + ")";
    if (!window.contains(z)) throw Error(ErrorKind::LeftWindow, "trajectory left the integration window" + where);
    if (std::hypot(P(z.x, z.y), Q(z.x, z.y)) < 1e-8)
      throw Error(ErrorKind::EquilibriumEncountered, "equilibrium encountered" + where);
    const double gv = G(z.x, z.y);
    if (!(gv > 0.0)) throw Error(ErrorKind::NotPositive, "g is not positive" + where);
    if (!std::isfinite(div(z.x, z.y))) throw Error(ErrorKind::NotPositive, "Div X not finite" + where);
  };

  for (int k = 0; k < n_across; ++k) {
    const double s = static_cast<double>(k) / (n_across - 1);
    const Point seed{transversal.a.x + s * (transversal.b.x - transversal.a.x),
                     transversal.a.y + s * (transversal.b.y - transversal.a.y)};
    DormandPrince<3, decltype(rhs)> ode(rhs, State<3>{seed.x, seed.y, 1.0}, 0.0, 1.0, options.tol, options.tol);
    for (int m = 0; m < n_along; ++m) {
      const double tm = m == n_along - 1 ? t_span : m * dt;
      while (ode.t() < tm) {
        if (!ode.step(t_span)) throw Error(ErrorKind::LeftWindow, "integration failed along trajectory " + std::to_string(k));
        const Point zc{ode.y()[0], ode.y()[1]};
        if (!window.contains(zc)) throw Error(ErrorKind::LeftWindow, "trajectory " + std::to_string(k) + " left the integration window");
      }
      const State<3> st = (m == 0) ? State<3>{seed.x, seed.y, 1.0} : (tm == ode.t() ? ode.y() : ode.dense(tm));
      FlowBoxNode& node = out.nodes[static_cast<std::size_t>(k * n_along + m)];
      node.z = {st[0], st[1]};
      node.t = tm;
      node.b = st[2];
      check_sample(node.z, k, m);
      node.div_bx = G(st[0], st[1]);
      node.div_bx_fd = std::nan("");
    }
  }

  // Flow-box coordinates (s, t): B X has components (0, B), so its divergence
  // is (1/J) d/dt (J B) with J = det[dPhi/ds, X].
  const double ds = 1.0 / (n_across - 1);
  auto jac = [&](int k, int m) {
    const Point zp = out.node(k + 1, m).z, zm = out.node(k - 1, m).z, z = out.node(k, m).z;
    const double sx = (zp.x - zm.x) / (2 * ds), sy = (zp.y - zm.y) / (2 * ds);
    return sx * Q(z.x, z.y) - sy * P(z.x, z.y);
  };
  for (int k = 1; k < n_across - 1; ++k) {
    for (int m = 1; m < n_along - 1; ++m) {
      const double j0 = jac(k, m);
      const double fd = (out.node(k, m + 1).b * jac(k, m + 1) - out.node(k, m - 1).b * jac(k, m - 1)) / (2 * dt * j0);
      FlowBoxNode& node = out.nodes[static_cast<std::size_t>(k * n_along + m)];
      node.div_bx_fd = fd;
      out.fd_discrepancy = std::max(out.fd_discrepancy, std::abs(fd - node.div_bx));
      if (!(fd > 0.0))
        throw Error(ErrorKind::NotPositive, "finite-difference Div(B X) not positive at node (" + std::to_string(k) +
                                                ", " + std::to_string(m) + ")");
    }
  }
  return out;
}

}  // namespace dulac
