#include "dulac/rational.hpp"

#include <cctype>
#include <cmath>

#include "dulac/error.hpp"

namespace dulac {

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

[[noreturn]] void bad_number(std::string_view text) {
  throw Error(ErrorKind::Syntax, "malformed number '" + std::string(text) + "'");
}

Rat pow10(long e) {
  mpz_class p;
  mpz_ui_pow_ui(p.get_mpz_t(), 10, static_cast<unsigned long>(e < 0 ? -e : e));
  return e < 0 ? Rat(mpz_class(1), p) : Rat(p);
}

}  // namespace

Rat parse_rat(std::string_view text) {
  std::string_view s = text;
  bool negative = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  Rat value;
  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    auto num = s.substr(0, slash);
    auto den = s.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den)) bad_number(text);
    mpz_class d(std::string(den), 10);
    if (d == 0) throw Error(ErrorKind::DivisionByZero, "zero denominator in '" + std::string(text) + "'");
    value = Rat(mpz_class(std::string(num), 10), d);
    value.canonicalize();
  } else {
    long exponent = 0;
    if (auto e = s.find_first_of("eE"); e != std::string_view::npos) {
      auto exp_part = s.substr(e + 1);
      bool exp_neg = false;
      if (!exp_part.empty() && (exp_part.front() == '-' || exp_part.front() == '+')) {
        exp_neg = exp_part.front() == '-';
        exp_part.remove_prefix(1);
      }
      if (!all_digits(exp_part) || exp_part.size() > 6) bad_number(text);
      exponent = std::stol(std::string(exp_part));
      if (exp_neg) exponent = -exponent;
      s = s.substr(0, e);
    }
    std::string digits;
    if (auto dot = s.find('.'); dot != std::string_view::npos) {
      auto int_part = s.substr(0, dot);
      auto frac_part = s.substr(dot + 1);
      if ((int_part.empty() && frac_part.empty()) ||
          (!int_part.empty() && !all_digits(int_part)) ||
          (!frac_part.empty() && !all_digits(frac_part)))
        bad_number(text);
      digits = std::string(int_part) + std::string(frac_part);
      exponent -= static_cast<long>(frac_part.size());
    } else {
      if (!all_digits(s)) bad_number(text);
      digits = std::string(s);
    }
    if (digits.empty()) digits = "0";
    value = Rat(mpz_class(digits, 10)) * pow10(exponent);
  }
  return negative ? Rat(-value) : value;
}

std::string to_string(const Rat& r) { return r.get_str(); }

Rat rat_from_double(double v) {
  if (!std::isfinite(v)) throw Error(ErrorKind::InvalidArgument, "non-finite value");
  return Rat(v);
}

CRat& CRat::operator*=(const CRat& o) {
  Rat r = re * o.re - im * o.im;
  Rat i = re * o.im + im * o.re;
  re = std::move(r);
  im = std::move(i);
  return *this;
}

CRat& CRat::operator/=(const CRat& o) {
  Rat n = o.re * o.re + o.im * o.im;
  if (sgn(n) == 0) throw Error(ErrorKind::DivisionByZero, "division by zero");
  Rat r = (re * o.re + im * o.im) / n;
  Rat i = (im * o.re - re * o.im) / n;
  re = std::move(r);
  im = std::move(i);
  return *this;
}

std::string to_string(const CRat& z) {
  if (z.is_real()) return to_string(z.re);
  std::string im = abs(z.im) == 1 ? std::string("I") : to_string(abs(z.im)) + "*I";
  if (sgn(z.re) == 0) return (sgn(z.im) < 0 ? "-" : "") + im;
  return "(" + to_string(z.re) + (sgn(z.im) < 0 ? " - " : " + ") + im + ")";
}

}  // namespace dulac
