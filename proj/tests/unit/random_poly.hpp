#pragma once

#include <random>

#include "dulac/poly.hpp"
#include "dulac/vector_field.hpp"

namespace dulac::fixtures {

inline Rat random_rat(std::mt19937_64& rng, int num = 9, int den = 5) {
  std::uniform_int_distribution<int> n(-num, num), d(1, den);
  Rat r(n(rng), d(rng));
  r.canonicalize();
  return r;
}

/// Dense random polynomial of total degree <= deg; each term kept with
/// probability `fill`.
inline Poly random_poly(std::mt19937_64& rng, int deg, double fill = 0.6, int num = 9, int den = 5) {
  std::bernoulli_distribution keep(fill);
  Poly p;
  for (int i = 0; i <= deg; ++i)
    for (int j = 0; i + j <= deg; ++j)
      if (keep(rng)) p.add_term({i, j}, random_rat(rng, num, den));
  return p;
}

inline Poly random_complex_poly(std::mt19937_64& rng, int deg) {
  Poly p;
  std::bernoulli_distribution keep(0.6);
  for (int i = 0; i <= deg; ++i)
    for (int j = 0; i + j <= deg; ++j)
      if (keep(rng)) p.add_term({i, j}, CRat(random_rat(rng), random_rat(rng)));
  return p;
}

inline VectorField random_field(std::mt19937_64& rng, int deg) {
  return make_field(random_poly(rng, deg), random_poly(rng, deg));
}

inline double uniform(std::mt19937_64& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

}  // namespace dulac::fixtures
