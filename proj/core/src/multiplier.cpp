#include "dulac/multiplier.hpp"

#include <cctype>
#include <cmath>

#include "dulac/parse.hpp"

namespace dulac {

Poly Multiplier::exponent() const {
  if (const auto* e = std::get_if<ExpPolyMultiplier>(&value_)) return e->g;
  return Poly();
}

const Poly& Multiplier::factor() const {
  return std::visit([](const auto& m) -> const Poly& { return m.p; }, value_);
}

double Multiplier::operator()(Point z) const {
  const double p = evaluate(factor(), z).real();
  if (!is_exponential()) return p;
  return std::exp(evaluate(exponent(), z).real()) * p;
}

Poly sign_carrier(const Multiplier& B, const VectorField& X) {
  const Poly& p = B.factor();
  if (!B.is_exponential()) return div_product(p, X);
  return div_product(p, X) + p * lie_derivative(B.exponent(), X);
}

Multiplier parse_multiplier(std::string_view text) {
  std::size_t b = 0;
  while (b < text.size() && std::isspace(static_cast<unsigned char>(text[b]))) ++b;
  std::string_view s = text.substr(b);
  if (s.substr(0, 3) != "exp") return Multiplier::polynomial(parse_poly(text));
  std::size_t open = 3;
  while (open < s.size() && std::isspace(static_cast<unsigned char>(s[open]))) ++open;
  if (open >= s.size() || s[open] != '(') return Multiplier::polynomial(parse_poly(text));
  int depth = 0;
  std::size_t close = open;
  for (; close < s.size(); ++close) {
    if (s[close] == '(') ++depth;
    if (s[close] == ')' && --depth == 0) break;
  }
  if (close >= s.size())
    throw ParseError(ErrorKind::Syntax, "unbalanced parentheses in exp(...)", 1, static_cast<int>(b + open) + 1);
  Poly g = parse_poly(s.substr(open + 1, close - open - 1));
  std::string_view rest = s.substr(close + 1);
  std::size_t r = 0;
  while (r < rest.size() && std::isspace(static_cast<unsigned char>(rest[r]))) ++r;
  rest = rest.substr(r);
  if (rest.empty()) return Multiplier::exponential(std::move(g));
  if (rest.front() != '*')
    throw ParseError(ErrorKind::Syntax, "expected '*' after exp(...)", 1, static_cast<int>(b + close) + 2);
  return Multiplier::exponential(std::move(g), parse_poly(rest.substr(1)));
}

std::string to_string(const Multiplier& B) {
  if (!B.is_exponential()) return to_string(B.factor());
  std::string out = "exp(" + to_string(B.exponent()) + ")";
  if (B.factor() != Poly(1)) out += "*(" + to_string(B.factor()) + ")";
  return out;
}

}  // namespace dulac
