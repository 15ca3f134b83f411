#pragma once

#include <complex>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "dulac/rational.hpp"

namespace dulac {

struct Point {
  double x = 0.0;
  double y = 0.0;
};

/// Exponent pair of x^i y^j.
struct Monomial {
  int i = 0;
  int j = 0;

  int degree() const { return i + j; }
  friend bool operator==(Monomial a, Monomial b) { return a.i == b.i && a.j == b.j; }
};

/// Graded lexicographic order with x > y; the map iterates from the leading
/// term downwards.
struct GrlexDescending {
  bool operator()(Monomial a, Monomial b) const {
    if (a.degree() != b.degree()) return a.degree() > b.degree();
    return a.i > b.i;
  }
};

enum class Axis { X, Y };

/// Sparse bivariate polynomial over the Gaussian rationals. No zero
/// coefficient is ever stored.
class Poly {
 public:
  using TermMap = std::map<Monomial, CRat, GrlexDescending>;

  Poly() = default;
  Poly(CRat c);  // NOLINT(implicit)
  Poly(Rat c) : Poly(CRat(std::move(c))) {}  // NOLINT(implicit)
  Poly(long c) : Poly(CRat(c)) {}             // NOLINT(implicit)
  Poly(int c) : Poly(CRat(c)) {}              // NOLINT(implicit)

  static Poly x();
  static Poly y();
  static Poly monomial(int i, int j, CRat c = CRat(1));

  const TermMap& terms() const { return terms_; }
  /// Coefficient of x^i y^j (zero when absent).
  CRat coeff(int i, int j) const;
  /// Adds c to the coefficient of x^i y^j, dropping it if it cancels.
  void add_term(Monomial m, const CRat& c);

  /// Total degree; -1 for the zero polynomial.
  int degree() const;
  int degree_x() const;
  int degree_y() const;
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  bool is_real() const;

  /// Leading term in grlex order; requires a nonzero polynomial.
  std::pair<Monomial, CRat> leading_term() const;

  Poly conj() const;
  Poly real_part() const;
  Poly imag_part() const;
  Poly pow(unsigned n) const;

  Poly& operator+=(const Poly& o);
  Poly& operator-=(const Poly& o);
  Poly& operator*=(const Poly& o);
  Poly& operator*=(const CRat& c);

  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(const Poly& a, const Poly& b);
  friend Poly operator*(Poly a, const CRat& c) { return a *= c; }
  friend Poly operator*(const CRat& c, Poly a) { return a *= c; }
  friend Poly operator-(Poly a) { return a *= CRat(-1); }
  friend bool operator==(const Poly& a, const Poly& b);
  friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

 private:
  TermMap terms_;
};

Poly derive(const Poly& p, Axis axis);

struct DivisionResult {
  Poly quotient;
  Poly remainder;
};

/// Multivariate division by a single divisor under grlex: leading terms of
/// the running dividend that the divisor's leading monomial divides go to
/// the quotient, the rest to the remainder. Throws DivisionByZero.
DivisionResult poly_divide(const Poly& n, const Poly& d);

/// Horner evaluation in doubles. Real polynomials give an exactly zero
/// imaginary part.
std::complex<double> evaluate(const Poly& p, Point z);

/// Exact evaluation at a rational point.
CRat evaluate_exact(const Poly& p, const Rat& x, const Rat& y);

/// p(x0 + sx*s, y0 + sy*t) expanded in the variables (s, t), which reuse the
/// (x, y) slots.
Poly affine_substitute(const Poly& p, const Rat& x0, const Rat& sx, const Rat& y0,
                       const Rat& sy);

/// Canonical text: grlex-descending terms, explicit `*` and `^`.
std::string to_string(const Poly& p);

/// Dense double coefficients for repeated numeric evaluation of a real
/// polynomial (imaginary parts are ignored).
class NumericPoly {
 public:
  NumericPoly() = default;
  explicit NumericPoly(const Poly& p);

  double operator()(double x, double y) const;
  int degree_x() const { return nx_ - 1; }

 private:
  int nx_ = 0;
  int ny_ = 0;
  std::vector<double> c_;  // c_[i * ny_ + j] multiplies x^i y^j
};

}  // namespace dulac
