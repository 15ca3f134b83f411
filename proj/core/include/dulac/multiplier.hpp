#pragma once

#include <string>
#include <string_view>
#include <variant>

#include "dulac/vector_field.hpp"

namespace dulac {

struct PolyMultiplier {
  Poly p;
};

/// e^g * p
struct ExpPolyMultiplier {
  Poly g;
  Poly p;
};

/// Multiplier B whose product divergence Div(B X) factors as a positive
/// exponential times a polynomial sign-carrier.
class Multiplier {
 public:
  Multiplier() : value_(PolyMultiplier{Poly(1)}) {}
  Multiplier(PolyMultiplier m) : value_(std::move(m)) {}      // NOLINT(implicit)
  Multiplier(ExpPolyMultiplier m) : value_(std::move(m)) {}   // NOLINT(implicit)

  static Multiplier polynomial(Poly p) { return PolyMultiplier{std::move(p)}; }
  static Multiplier exponential(Poly g, Poly p = Poly(1)) { return ExpPolyMultiplier{std::move(g), std::move(p)}; }

  bool is_exponential() const { return std::holds_alternative<ExpPolyMultiplier>(value_); }
  /// g, zero for a plain polynomial.
  Poly exponent() const;
  /// p.
  const Poly& factor() const;
  const auto& value() const { return value_; }

  double operator()(Point z) const;

 private:
  std::variant<PolyMultiplier, ExpPolyMultiplier> value_;
};

/// div_product(p, X) + p <grad g, X>; Div(B X) = e^g times this.
Poly sign_carrier(const Multiplier& B, const VectorField& X);

/// "<poly>", "exp(<poly>)" or "exp(<poly>)*<poly>".
Multiplier parse_multiplier(std::string_view text);

std::string to_string(const Multiplier& B);

}  // namespace dulac
