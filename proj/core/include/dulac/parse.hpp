#pragma once

#include <string_view>
#include <vector>

#include "dulac/error.hpp"
#include "dulac/poly.hpp"
#include "dulac/vector_field.hpp"

namespace dulac {

/// Polynomial expression in x, y with rational or decimal literals and the
/// imaginary unit `I`. Throws ParseError.
Poly parse_poly(std::string_view text);

/// Parses a `.vf` document:
///
///   # comment
///   P = y
///   Q = -x + mu*(1 - x^2)*y
///   param mu = 1
///
/// Parameters may be declared anywhere in the file.
VectorField parse_system(std::string_view text);

/// List of polynomials separated by semicolons or commas ("f1;f2", "f1,f2").
std::vector<Poly> parse_poly_list(std::string_view text);

}  // namespace dulac
