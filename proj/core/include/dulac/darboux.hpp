#pragma once

#include <string>
#include <vector>

#include "dulac/box.hpp"
#include "dulac/error.hpp"
#include "dulac/multiplier.hpp"
#include "dulac/vector_field.hpp"

namespace dulac {

/// {f = 0} with <grad f, X> = k f.
struct InvariantCurve {
  Poly f;
  Poly k;
  /// Singular points of f that are not equilibria of X (found numerically).
  std::vector<std::string> warnings;
};

/// exp(g/h) with h <grad g, X> - g <grad h, X> = k h^2.
struct ExponentialFactor {
  Poly g;
  Poly h;
  Poly k;
};

/// prod f_i^lambda_i * prod exp(g_j/h_j)^mu_j.
struct DarbouxExpr {
  std::vector<std::pair<InvariantCurve, CRat>> curve_factors;
  std::vector<std::pair<ExponentialFactor, CRat>> exp_factors;

  /// sum lambda_i k_i + sum mu_j k~_j; zero iff the expression is a first
  /// integral.
  Poly total_cofactor() const;
  bool is_real() const;
  /// ln|H| at z (real part of the complex logarithm for complex factors).
  double log_abs(Point z) const;
};

/// Canonical text "(f1)^l1*(f2)^l2*exp((g1)/(h1))^m1".
std::string to_string(const DarbouxExpr& H);

struct ResidualReport {
  Poly symbolic_residual;
  double numeric_max_drift = 0.0;
  int trajectories_checked = 0;
  std::vector<std::string> notes;
};

/// Thrown by cofactor_of when f does not divide <grad f, X>.
class NotInvariantError : public Error {
 public:
  NotInvariantError(const std::string& what, Poly remainder)
      : Error(ErrorKind::NotInvariant, what), remainder_(std::move(remainder)) {}
  const Poly& remainder() const { return remainder_; }

 private:
  Poly remainder_;
};

/// Cofactor k = <grad f, X> / f by exact division. Also checks numerically
/// that singular points of {f = 0} are equilibria of X inside `scan_box`
/// (default [-4, 4]^2), recording violations as warnings.
/// Throws ConstantInput or NotInvariantError.
InvariantCurve cofactor_of(const Poly& f, const VectorField& X);
InvariantCurve cofactor_of(const Poly& f, const VectorField& X, const Box2& scan_box);

/// Cofactor of exp(g/h); g and h are assumed coprime. Throws InvalidArgument
/// (h = 0), NotExponentialFactor, DegreeBoundViolated (deg k > deg X - 1).
ExponentialFactor exponential_factor_cofactor(const Poly& g, const Poly& h, const VectorField& X);

/// Residual = sign-carrier of Div(mu X); zero certifies an integrating factor.
ResidualReport check_integrating_factor(const Multiplier& mu, const VectorField& X);

/// Residual = <grad V, X> - V Div X; zero certifies 1/V as an integrating
/// factor off {V = 0}.
ResidualReport check_inverse_integrating_factor(const Poly& V, const VectorField& X);

/// Darboux first integral from a kernel vector of the cofactor map, scaled to
/// a primitive integer vector (first nonzero entry positive). Real vectors
/// win over complex ones, then smaller absolute sums; candidates are kernel
/// basis vectors and sums/differences of two of them. Throws
/// InvalidArgument (no inputs) or NoNontrivialRelation.
DarbouxExpr darboux_first_integral(const std::vector<InvariantCurve>& curves,
                                   const std::vector<ExponentialFactor>& exp_factors = {});

struct VerifyOptions {
  double tol = 1e-11;
  Box2 seed_box = Box2{Rat(-1), Rat(1), Rat(-1), Rat(1)};
  unsigned long rng_seed = 20240601;
};

/// Symbolic residual = total cofactor; numerically integrates random seeds
/// and records the max relative drift |H(t)/H(0) - 1|. Seeds closer than 1e-3
/// to any {f_i = 0} (by |f|/|grad f|) are resampled.
ResidualReport verify_first_integral(const DarbouxExpr& H, const VectorField& X, int trajectories, double t_span,
                                     const VerifyOptions& options = {});

/// Drift bound implied by the integrator tolerance for a first integral:
/// tol * (1 + t_span) * sum |lambda_i| + |mu_j|.
double tolerance_budget(const DarbouxExpr& H, double tol, double t_span);

/// Leibniz check of <grad B, X> = (-Div X + g/B) B with g = Div(B X); the
/// residual is exact, numeric_max_drift is the max pointwise defect over
/// 100 samples of [-2, 2]^2 off {B = 0}.
ResidualReport dulac_cofactor_crosscheck(const Poly& B, const VectorField& X);

/// k(z) = -Div X(z) + Div(B X)(z) / B(z).
double pointwise_dulac_cofactor(const Poly& B, const VectorField& X, Point z);

}  // namespace dulac
