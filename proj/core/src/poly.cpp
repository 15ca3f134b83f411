#include "dulac/poly.hpp"

#include <algorithm>
#include <vector>

#include "dulac/error.hpp"

namespace dulac {

Poly::Poly(CRat c) {
  if (!c.is_zero()) terms_.emplace(Monomial{0, 0}, std::move(c));
}

Poly Poly::x() { return monomial(1, 0); }
Poly Poly::y() { return monomial(0, 1); }

Poly Poly::monomial(int i, int j, CRat c) {
  Poly p;
  p.add_term({i, j}, c);
  return p;
}

CRat Poly::coeff(int i, int j) const {
  auto it = terms_.find({i, j});
  return it == terms_.end() ? CRat() : it->second;
}

void Poly::add_term(Monomial m, const CRat& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (inserted) return;
  it->second += c;
  if (it->second.is_zero()) terms_.erase(it);
}

int Poly::degree() const { return terms_.empty() ? -1 : terms_.begin()->first.degree(); }

int Poly::degree_x() const {
  int d = -1;
  for (const auto& [m, c] : terms_) d = std::max(d, m.i);
  return d;
}

int Poly::degree_y() const {
  int d = -1;
  for (const auto& [m, c] : terms_) d = std::max(d, m.j);
  return d;
}

bool Poly::is_constant() const { return degree() <= 0; }

bool Poly::is_real() const {
  return std::all_of(terms_.begin(), terms_.end(),
                     [](const auto& t) { return t.second.is_real(); });
}

std::pair<Monomial, CRat> Poly::leading_term() const {
  if (terms_.empty()) throw Error(ErrorKind::InvalidArgument, "zero polynomial has no leading term");
  return *terms_.begin();
}

Poly Poly::conj() const {
  Poly r;
  for (const auto& [m, c] : terms_) r.terms_.emplace(m, c.conj());
  return r;
}

Poly Poly::real_part() const {
  Poly r;
  for (const auto& [m, c] : terms_) r.add_term(m, CRat(c.re));
  return r;
}

Poly Poly::imag_part() const {
  Poly r;
  for (const auto& [m, c] : terms_) r.add_term(m, CRat(c.im));
  return r;
}

Poly Poly::pow(unsigned n) const {
  Poly result(1);
  Poly base = *this;
  while (n) {
    if (n & 1u) result *= base;
    n >>= 1u;
    if (n) base *= base;
  }
  return result;
}

Poly& Poly::operator+=(const Poly& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, c);
  return *this;
}

Poly& Poly::operator-=(const Poly& o) {
  for (const auto& [m, c] : o.terms_) add_term(m, -c);
  return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
  Poly r;
  for (const auto& [ma, ca] : a.terms_)
    for (const auto& [mb, cb] : b.terms_) r.add_term({ma.i + mb.i, ma.j + mb.j}, ca * cb);
  return r;
}

Poly& Poly::operator*=(const Poly& o) { return *this = *this * o; }

Poly& Poly::operator*=(const CRat& c) {
  if (c.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, v] : terms_) v *= c;
  return *this;
}

bool operator==(const Poly& a, const Poly& b) {
  if (a.terms_.size() != b.terms_.size()) return false;
  return std::equal(a.terms_.begin(), a.terms_.end(), b.terms_.begin(),
                    [](const auto& s, const auto& t) { return s.first == t.first && s.second == t.second; });
}

Poly derive(const Poly& p, Axis axis) {
  Poly r;
  for (const auto& [m, c] : p.terms()) {
    int e = axis == Axis::X ? m.i : m.j;
    if (e == 0) continue;
    Monomial dm = axis == Axis::X ? Monomial{m.i - 1, m.j} : Monomial{m.i, m.j - 1};
    r.add_term(dm, c * CRat(Rat(e)));
  }
  return r;
}

DivisionResult poly_divide(const Poly& n, const Poly& d) {
  if (d.is_zero()) throw Error(ErrorKind::DivisionByZero, "division by the zero polynomial");
  const auto [lm, lc] = d.leading_term();
  DivisionResult out;
  Poly rest = n;
  while (!rest.is_zero()) {
    auto [m, c] = rest.leading_term();
    if (m.i >= lm.i && m.j >= lm.j) {
      Poly t = Poly::monomial(m.i - lm.i, m.j - lm.j, c / lc);
      out.quotient += t;
      rest -= t * d;
    } else {
      out.remainder.add_term(m, c);
      rest.add_term(m, -c);
    }
  }
  return out;
}

NumericPoly::NumericPoly(const Poly& p) {
  nx_ = std::max(p.degree_x(), 0) + 1;
  ny_ = std::max(p.degree_y(), 0) + 1;
  c_.assign(static_cast<std::size_t>(nx_ * ny_), 0.0);
  for (const auto& [m, c] : p.terms()) c_[static_cast<std::size_t>(m.i * ny_ + m.j)] = c.re.get_d();
}

double NumericPoly::operator()(double x, double y) const {
  double acc = 0.0;
  for (int i = nx_ - 1; i >= 0; --i) {
    const double* row = c_.data() + static_cast<std::ptrdiff_t>(i) * ny_;
    double inner = 0.0;
    for (int j = ny_ - 1; j >= 0; --j) inner = inner * y + row[j];
    acc = acc * x + inner;
  }
  return acc;
}

std::complex<double> evaluate(const Poly& p, Point z) {
  const double re = NumericPoly(p)(z.x, z.y);
  // imag_part() carries the imaginary coefficients as real numbers.
  const double im = p.is_real() ? 0.0 : NumericPoly(p.imag_part())(z.x, z.y);
  return {re, im};
}

CRat evaluate_exact(const Poly& p, const Rat& x, const Rat& y) {
  CRat acc;
  for (const auto& [m, c] : p.terms()) {
    Rat xp(1), yp(1);
    mpz_pow_ui(xp.get_num_mpz_t(), x.get_num_mpz_t(), static_cast<unsigned long>(m.i));
    mpz_pow_ui(xp.get_den_mpz_t(), x.get_den_mpz_t(), static_cast<unsigned long>(m.i));
    mpz_pow_ui(yp.get_num_mpz_t(), y.get_num_mpz_t(), static_cast<unsigned long>(m.j));
    mpz_pow_ui(yp.get_den_mpz_t(), y.get_den_mpz_t(), static_cast<unsigned long>(m.j));
    Rat w = xp * yp;
    acc += CRat(c.re * w, c.im * w);
  }
  return acc;
}

Poly affine_substitute(const Poly& p, const Rat& x0, const Rat& sx, const Rat& y0,
                       const Rat& sy) {
  const int dx = std::max(p.degree_x(), 0);
  const int dy = std::max(p.degree_y(), 0);
  std::vector<Poly> xs{Poly(1)}, ys{Poly(1)};
  const Poly bx = Poly(x0) + Poly(sx) * Poly::x();
  const Poly by = Poly(y0) + Poly(sy) * Poly::y();
  for (int k = 1; k <= dx; ++k) xs.push_back(xs.back() * bx);
  for (int k = 1; k <= dy; ++k) ys.push_back(ys.back() * by);
  Poly r;
  for (const auto& [m, c] : p.terms()) r += (xs[static_cast<std::size_t>(m.i)] * ys[static_cast<std::size_t>(m.j)]) * c;
  return r;
}

namespace {

std::string monomial_text(Monomial m) {
  std::string s;
  auto factor = [&s](const char* v, int e) {
    if (e == 0) return;
    if (!s.empty()) s += "*";
    s += v;
    if (e > 1) s += "^" + std::to_string(e);
  };
  factor("x", m.i);
  factor("y", m.j);
  return s;
}

std::string term_text(Monomial m, const CRat& c) {
  if (m.degree() == 0) return to_string(c);
  const std::string mono = monomial_text(m);
  if (c.is_real()) {
    if (c.re == 1) return mono;
    if (c.re == -1) return "-" + mono;
  }
  return to_string(c) + "*" + mono;
}

}  // namespace

std::string to_string(const Poly& p) {
  if (p.is_zero()) return "0";
  std::string out;
  for (const auto& [m, c] : p.terms()) {
    std::string t = term_text(m, c);
    if (out.empty()) {
      out = t;
    } else if (t.front() == '-') {
      out += " - " + t.substr(1);
    } else {
      out += " + " + t;
    }
  }
  return out;
}

}  // namespace dulac
