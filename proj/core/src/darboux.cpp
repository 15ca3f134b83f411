#include "dulac/darboux.hpp"

#include <cmath>
#include <complex>
#include <optional>
#include <random>

#include "dulac/ode.hpp"

namespace dulac {

namespace {

using CVec = std::vector<CRat>;

// Null space basis of the columns-as-factors matrix (rows = monomials).
std::vector<CVec> kernel_basis(std::vector<CVec> rows, std::size_t n) {
  std::vector<int> pivot_of_row;
  std::size_t r = 0;
  for (std::size_t col = 0; col < n && r < rows.size(); ++col) {
    std::size_t pivot = r;
    while (pivot < rows.size() && rows[pivot][col].is_zero()) ++pivot;
    if (pivot == rows.size()) continue;
    std::swap(rows[r], rows[pivot]);
    const CRat inv = CRat(1) / rows[r][col];
    for (auto& v : rows[r]) v *= inv;
    for (std::size_t o = 0; o < rows.size(); ++o) {
      if (o == r || rows[o][col].is_zero()) continue;
      const CRat f = rows[o][col];
      for (std::size_t c = 0; c < n; ++c) rows[o][c] -= f * rows[r][c];
    }
    pivot_of_row.push_back(static_cast<int>(col));
    ++r;
  }
  std::vector<bool> is_pivot(n, false);
  for (int c : pivot_of_row) is_pivot[static_cast<std::size_t>(c)] = true;
  std::vector<CVec> basis;
  for (std::size_t free = 0; free < n; ++free) {
    if (is_pivot[free]) continue;
    CVec v(n);
    v[free] = CRat(1);
    for (std::size_t row = 0; row < pivot_of_row.size(); ++row)
      v[static_cast<std::size_t>(pivot_of_row[row])] = -rows[row][free];
    basis.push_back(std::move(v));
  }
  return basis;
}

bool in_kernel(const std::vector<CVec>& rows, const CVec& v) {
  for (const auto& row : rows) {
    CRat acc;
    for (std::size_t c = 0; c < v.size(); ++c) acc += row[c] * v[c];
    if (!acc.is_zero()) return false;
  }
  return true;
}

bool is_zero_vec(const CVec& v) {
  for (const auto& c : v)
    if (!c.is_zero()) return false;
  return true;
}

// Scales to a primitive Gaussian-integer vector whose first nonzero entry has
// positive real part (or zero real part and positive imaginary part).
CVec primitive(CVec v) {
  mpz_class lcm = 1;
  for (const auto& c : v) {
    mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), c.re.get_den_mpz_t());
    mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), c.im.get_den_mpz_t());
  }
  mpz_class g = 0;
  for (auto& c : v) {
    c.re *= lcm;
    c.im *= lcm;
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.re.get_num_mpz_t());
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.im.get_num_mpz_t());
  }
  if (g != 0)
    for (auto& c : v) {
      c.re /= g;
      c.im /= g;
    }
  for (const auto& c : v) {
    if (c.is_zero()) continue;
    if (sgn(c.re) < 0 || (sgn(c.re) == 0 && sgn(c.im) < 0))
      for (auto& e : v) e = -e;
    break;
  }
  return v;
}

Rat abs_sum(const CVec& v) {
  Rat s;
  for (const auto& c : v) s += abs(c.re) + abs(c.im);
  return s;
}

bool vec_real(const CVec& v) {
  for (const auto& c : v)
    if (!c.is_real()) return false;
  return true;
}

double cabs(const CRat& c) { return std::hypot(c.re.get_d(), c.im.get_d()); }

std::string exponent_text(const CRat& c) {
  std::string s = to_string(c);
  return (c.is_real() && sgn(c.re) >= 0 && c.re.get_den() == 1) ? s : "(" + s + ")";
}

}  // namespace

Poly DarbouxExpr::total_cofactor() const {
  Poly total;
  for (const auto& [curve, lambda] : curve_factors) total += curve.k * lambda;
  for (const auto& [factor, mu] : exp_factors) total += factor.k * mu;
  return total;
}

bool DarbouxExpr::is_real() const {
  for (const auto& [c, l] : curve_factors)
    if (!l.is_real() || !c.f.is_real()) return false;
  for (const auto& [e, m] : exp_factors)
    if (!m.is_real() || !e.g.is_real() || !e.h.is_real()) return false;
  return true;
}

double DarbouxExpr::log_abs(Point z) const {
  double acc = 0.0;
  for (const auto& [curve, lambda] : curve_factors) {
    const std::complex<double> lf = std::log(evaluate(curve.f, z));
    acc += (std::complex<double>(lambda.re.get_d(), lambda.im.get_d()) * lf).real();
  }
  for (const auto& [factor, mu] : exp_factors) {
    const std::complex<double> q = evaluate(factor.g, z) / evaluate(factor.h, z);
    acc += (std::complex<double>(mu.re.get_d(), mu.im.get_d()) * q).real();
  }
  return acc;
}

std::string to_string(const DarbouxExpr& H) {
  std::string out;
  auto append = [&out](const std::string& s) {
    if (!out.empty()) out += "*";
    out += s;
  };
  for (const auto& [curve, lambda] : H.curve_factors) {
    if (lambda.is_zero()) continue;
    append("(" + to_string(curve.f) + ")^" + exponent_text(lambda));
  }
  for (const auto& [factor, mu] : H.exp_factors) {
    if (mu.is_zero()) continue;
    append("exp((" + to_string(factor.g) + ")/(" + to_string(factor.h) + "))^" + exponent_text(mu));
  }
  return out.empty() ? "1" : out;
}

InvariantCurve cofactor_of(const Poly& f, const VectorField& X) {
  return cofactor_of(f, X, Box2{Rat(-4), Rat(4), Rat(-4), Rat(4)});
}

InvariantCurve cofactor_of(const Poly& f, const VectorField& X, const Box2& scan_box) {
  if (f.is_constant()) throw Error(ErrorKind::ConstantInput, "invariant curve must be nonconstant");
  const Poly lie = lie_derivative(f, X);
  auto [k, rem] = poly_divide(lie, f);
  if (!rem.is_zero())
    throw NotInvariantError("f does not divide <grad f, X>; remainder " + to_string(rem), rem);

  InvariantCurve curve{f, k, {}};
  if (!f.is_real()) return curve;

  // Singular points of the curve: Newton on grad f = 0.
  const Poly fx = derive(f, Axis::X), fy = derive(f, Axis::Y);
  const NumericPoly F(f), Fx(fx), Fy(fy), Fxx(derive(fx, Axis::X)), Fxy(derive(fx, Axis::Y)),
      Fyy(derive(fy, Axis::Y)), P(X.p), Q(X.q);
  std::vector<Point> reported;
  const int n = 9;
  const double x0 = scan_box.x_min.get_d(), x1 = scan_box.x_max.get_d();
  const double y0 = scan_box.y_min.get_d(), y1 = scan_box.y_max.get_d();
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      double x = x0 + (x1 - x0) * a / (n - 1), y = y0 + (y1 - y0) * b / (n - 1);
      bool converged = false;
      for (int it = 0; it < 60; ++it) {
        const double gx = Fx(x, y), gy = Fy(x, y);
        if (std::hypot(gx, gy) <= 1e-13) {
          converged = true;
          break;
        }
        const double hxx = Fxx(x, y), hxy = Fxy(x, y), hyy = Fyy(x, y);
        const double det = hxx * hyy - hxy * hxy;
        if (std::abs(det) < 1e-300) break;
        x -= (hyy * gx - hxy * gy) / det;
        y -= (hxx * gy - hxy * gx) / det;
        if (!std::isfinite(x) || !std::isfinite(y)) break;
      }
      if (!converged || std::abs(F(x, y)) > 1e-8) continue;
      if (std::hypot(P(x, y), Q(x, y)) <= 1e-8) continue;
      bool seen = false;
      for (const auto& r : reported) seen = seen || std::hypot(r.x - x, r.y - y) < 1e-6;
      if (seen) continue;
      reported.push_back({x, y});
      curve.warnings.push_back("singular point (" + std::to_string(x) + ", " + std::to_string(y) +
                               ") of the curve is not an equilibrium of X");
    }
  }
  return curve;
}

ExponentialFactor exponential_factor_cofactor(const Poly& g, const Poly& h, const VectorField& X) {
  if (h.is_zero()) throw Error(ErrorKind::InvalidArgument, "h must be nonzero");
  const Poly num = h * lie_derivative(g, X) - g * lie_derivative(h, X);
  auto [k, rem] = poly_divide(num, h * h);
  if (!rem.is_zero())
    throw Error(ErrorKind::NotExponentialFactor, "h^2 does not divide h<grad g,X> - g<grad h,X>");
  const int bound = X.degree() - 1;
  if (k.degree() > bound)
    throw Error(ErrorKind::DegreeBoundViolated, "cofactor " + to_string(k) + " has degree " +
                                                    std::to_string(k.degree()) + " > " + std::to_string(bound));
  return {g, h, k};
}

ResidualReport check_integrating_factor(const Multiplier& mu, const VectorField& X) {
  ResidualReport report;
  report.symbolic_residual = sign_carrier(mu, X);
  if (report.symbolic_residual.is_zero()) {
    report.notes.push_back("Div(mu X) = 0: mu is an integrating factor");
    if (!mu.is_exponential() && !mu.factor().is_constant()) {
      const InvariantCurve c = cofactor_of(mu.factor(), X);
      if (c.k == -divergence(X)) report.notes.push_back("cofactor of mu equals -Div X");
    }
  } else {
    report.notes.push_back("Div(mu X) carrier is " + to_string(report.symbolic_residual) + ", not zero");
  }
  return report;
}

ResidualReport check_inverse_integrating_factor(const Poly& V, const VectorField& X) {
  if (V.is_zero()) throw Error(ErrorKind::InvalidArgument, "V must be nonzero");
  ResidualReport report;
  report.symbolic_residual = lie_derivative(V, X) - V * divergence(X);
  report.notes.push_back(report.symbolic_residual.is_zero()
                             ? "V is invariant with cofactor Div X: 1/V is an integrating factor off {V = 0}"
                             : "V is not an inverse integrating factor");
  return report;
}

DarbouxExpr darboux_first_integral(const std::vector<InvariantCurve>& curves,
                                   const std::vector<ExponentialFactor>& exp_factors) {
  const std::size_t n = curves.size() + exp_factors.size();
  if (n == 0) throw Error(ErrorKind::InvalidArgument, "need at least one invariant curve or exponential factor");
  std::vector<const Poly*> cofactors;
  for (const auto& c : curves) cofactors.push_back(&c.k);
  for (const auto& e : exp_factors) cofactors.push_back(&e.k);

  std::map<Monomial, std::size_t, GrlexDescending> row_of;
  for (const Poly* k : cofactors)
    for (const auto& [m, c] : k->terms()) row_of.try_emplace(m, row_of.size());
  std::vector<CVec> rows(row_of.size(), CVec(n));
  for (std::size_t col = 0; col < n; ++col)
    for (const auto& [m, c] : cofactors[col]->terms()) rows[row_of[m]][col] = c;

  const auto basis = kernel_basis(rows, n);
  if (basis.empty()) throw Error(ErrorKind::NoNontrivialRelation, "cofactors are linearly independent");

  std::vector<CVec> candidates;
  auto consider = [&](const CVec& v) {
    if (is_zero_vec(v)) return;
    candidates.push_back(v);
    if (vec_real(v)) return;
    CVec re(n), im(n);
    for (std::size_t i = 0; i < n; ++i) {
      re[i] = CRat(v[i].re);
      im[i] = CRat(v[i].im);
    }
    for (const CVec* part : {&re, &im})
      if (!is_zero_vec(*part) && in_kernel(rows, *part)) candidates.push_back(*part);
  };
  for (std::size_t i = 0; i < basis.size(); ++i) consider(basis[i]);
  for (std::size_t i = 0; i < basis.size(); ++i)
    for (std::size_t j = i + 1; j < basis.size(); ++j) {
      CVec sum(n), diff(n);
      for (std::size_t c = 0; c < n; ++c) {
        sum[c] = basis[i][c] + basis[j][c];
        diff[c] = basis[i][c] - basis[j][c];
      }
      consider(sum);
      consider(diff);
    }

  std::optional<CVec> best;
  Rat best_sum;
  bool best_real = false;
  for (auto& raw : candidates) {
    CVec v = primitive(raw);
    const bool real = vec_real(v);
    const Rat s = abs_sum(v);
    if (!best || (real && !best_real) || (real == best_real && s < best_sum)) {
      best = std::move(v);
      best_sum = s;
      best_real = real;
    }
  }

  DarbouxExpr H;
  for (std::size_t i = 0; i < curves.size(); ++i) H.curve_factors.emplace_back(curves[i], (*best)[i]);
  for (std::size_t j = 0; j < exp_factors.size(); ++j)
    H.exp_factors.emplace_back(exp_factors[j], (*best)[curves.size() + j]);
  return H;
}

double tolerance_budget(const DarbouxExpr& H, double tol, double t_span) {
  double weight = 0.0;
  for (const auto& [c, l] : H.curve_factors) weight += cabs(l);
  for (const auto& [e, m] : H.exp_factors) weight += cabs(m);
  return tol * (1.0 + std::abs(t_span)) * std::max(weight, 1.0);
}

ResidualReport verify_first_integral(const DarbouxExpr& H, const VectorField& X, int trajectories, double t_span,
                                     const VerifyOptions& options) {
  ResidualReport report;
  report.symbolic_residual = H.total_cofactor();
  const NumericPoly P(X.p), Q(X.q);

  struct Level {
    NumericPoly f, fx, fy;
  };
  std::vector<Level> levels;
  for (const auto& [c, l] : H.curve_factors)
    if (c.f.is_real()) levels.push_back({NumericPoly(c.f), NumericPoly(derive(c.f, Axis::X)), NumericPoly(derive(c.f, Axis::Y))});
  for (const auto& [e, m] : H.exp_factors)
    if (e.h.is_real() && !e.h.is_constant())
      levels.push_back({NumericPoly(e.h), NumericPoly(derive(e.h, Axis::X)), NumericPoly(derive(e.h, Axis::Y))});

  auto near_zero_set = [&levels, &H](Point z) {
    for (const auto& lv : levels) {
      const double g = std::hypot(lv.fx(z.x, z.y), lv.fy(z.x, z.y));
      const double v = std::abs(lv.f(z.x, z.y));
      if ((g > 0.0 ? v / g : v) < 1e-3) return true;
    }
    for (const auto& [c, l] : H.curve_factors)
      if (!c.f.is_real() && std::abs(evaluate(c.f, z)) < 1e-3) return true;
    return false;
  };

  std::mt19937_64 rng(options.rng_seed);
  std::uniform_real_distribution<double> ux(options.seed_box.x_min.get_d(), options.seed_box.x_max.get_d());
  std::uniform_real_distribution<double> uy(options.seed_box.y_min.get_d(), options.seed_box.y_max.get_d());
  auto rhs = [&P, &Q](const State<2>& s) { return State<2>{P(s[0], s[1]), Q(s[0], s[1])}; };

  for (int traj = 0; traj < trajectories; ++traj) {
    Point seed;
    int attempts = 0;
    do {
      seed = {ux(rng), uy(rng)};
    } while (near_zero_set(seed) && ++attempts < 1000);
    if (attempts >= 1000) {
      report.notes.push_back("could not place a seed away from the zero sets");
      break;
    }
    const double h0 = H.log_abs(seed);
    DormandPrince<2, decltype(rhs)> ode(rhs, {seed.x, seed.y}, 0.0, t_span, options.tol, options.tol);
    const double t_end = t_span;
    bool ok = true;
    while (ode.t() != t_end) {
      if (!ode.step(t_end)) {
        ok = false;
        break;
      }
      const double drift = std::abs(std::expm1(H.log_abs({ode.y()[0], ode.y()[1]}) - h0));
      report.numeric_max_drift = std::max(report.numeric_max_drift, drift);
    }
    if (!ok) report.notes.push_back("trajectory " + std::to_string(traj) + " stopped early at t = " + std::to_string(ode.t()));
    ++report.trajectories_checked;
  }
  if (report.symbolic_residual.is_zero()) {
    const double budget = 10.0 * tolerance_budget(H, options.tol, t_span);
    report.notes.push_back(report.numeric_max_drift <= budget ? "numeric drift within 10x the tolerance budget"
                                                              : "numeric drift exceeds 10x the tolerance budget");
  }
  return report;
}

double pointwise_dulac_cofactor(const Poly& B, const VectorField& X, Point z) {
  const double g = evaluate(div_product(B, X), z).real();
  return -evaluate(divergence(X), z).real() + g / evaluate(B, z).real();
}

ResidualReport dulac_cofactor_crosscheck(const Poly& B, const VectorField& X) {
  if (B.is_zero()) throw Error(ErrorKind::InvalidArgument, "B must be nonzero");
  ResidualReport report;
  const Poly g = div_product(B, X);
  const Poly div = divergence(X);
  const Poly lie = lie_derivative(B, X);
  report.symbolic_residual = lie - (g - B * div);

  const NumericPoly Bn(B), Gn(g), Dn(div), Ln(lie);
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  int samples = 0;
  for (int attempt = 0; samples < 100 && attempt < 100000; ++attempt) {
    const double x = u(rng), y = u(rng);
    const double b = Bn(x, y);
    if (std::abs(b) < 1e-6) continue;
    const double k = -Dn(x, y) + Gn(x, y) / b;
    report.numeric_max_drift = std::max(report.numeric_max_drift, std::abs(k * b - Ln(x, y)));
    ++samples;
  }
  report.notes.push_back("pointwise cofactor sampled at " + std::to_string(samples) + " points off {B = 0}");
  return report;
}

}  // namespace dulac
