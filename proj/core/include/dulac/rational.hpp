#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace dulac {

/// Arbitrary-precision rational, always in lowest terms with a positive
/// denominator.
using Rat = mpq_class;

/// Parses "3", "-7/4", "0.125" or "1.5e-3" exactly.
Rat parse_rat(std::string_view text);

std::string to_string(const Rat& r);

/// Exact rational value of a finite double.
Rat rat_from_double(double v);

/// Gaussian rational re + im*I.
struct CRat {
  Rat re;
  Rat im;

  CRat() = default;
  CRat(Rat r) : re(std::move(r)) {}  // NOLINT(implicit)
  CRat(Rat r, Rat i) : re(std::move(r)), im(std::move(i)) {}
  CRat(long v) : re(v) {}  // NOLINT(implicit)
  CRat(int v) : re(v) {}   // NOLINT(implicit)

  bool is_zero() const { return sgn(re) == 0 && sgn(im) == 0; }
  bool is_real() const { return sgn(im) == 0; }

  CRat conj() const { return {re, -im}; }

  CRat& operator+=(const CRat& o) {
    re += o.re;
    im += o.im;
    return *this;
  }
  CRat& operator-=(const CRat& o) {
    re -= o.re;
    im -= o.im;
    return *this;
  }
  CRat& operator*=(const CRat& o);
  CRat& operator/=(const CRat& o);

  friend CRat operator+(CRat a, const CRat& b) { return a += b; }
  friend CRat operator-(CRat a, const CRat& b) { return a -= b; }
  friend CRat operator*(CRat a, const CRat& b) { return a *= b; }
  friend CRat operator/(CRat a, const CRat& b) { return a /= b; }
  friend CRat operator-(const CRat& a) { return {-a.re, -a.im}; }
  friend bool operator==(const CRat& a, const CRat& b) {
    return a.re == b.re && a.im == b.im;
  }
  friend bool operator!=(const CRat& a, const CRat& b) { return !(a == b); }
};

std::string to_string(const CRat& z);

}  // namespace dulac
