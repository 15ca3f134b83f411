#include "dulac/bernstein.hpp"

#include <algorithm>

#include "dulac/error.hpp"

namespace dulac {

namespace {

std::vector<mpz_class> binomial_row(int n) {
  std::vector<mpz_class> row(static_cast<std::size_t>(n + 1));
  for (int k = 0; k <= n; ++k) mpz_bin_uiui(row[static_cast<std::size_t>(k)].get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return row;
}

// In place: values[0..deg] at stride `stride` become left half, `right` gets
// the right half.
void casteljau_split(std::vector<Rat>& left, std::vector<Rat>& right, int deg, std::size_t offset,
                     std::size_t stride) {
  std::vector<Rat> work(static_cast<std::size_t>(deg + 1));
  for (int k = 0; k <= deg; ++k) work[static_cast<std::size_t>(k)] = left[offset + static_cast<std::size_t>(k) * stride];
  for (int level = 0; level <= deg; ++level) {
    left[offset + static_cast<std::size_t>(level) * stride] = work[0];
    right[offset + static_cast<std::size_t>(deg - level) * stride] = work[static_cast<std::size_t>(deg - level)];
    for (int k = 0; k < deg - level; ++k) {
      work[static_cast<std::size_t>(k)] = (work[static_cast<std::size_t>(k)] + work[static_cast<std::size_t>(k + 1)]) / 2;
    }
  }
}

}  // namespace

const Rat& BernsteinPatch::min_coefficient() const {
  return *std::min_element(coefficients.begin(), coefficients.end());
}

const Rat& BernsteinPatch::max_coefficient() const {
  return *std::max_element(coefficients.begin(), coefficients.end());
}

bool BernsteinPatch::all_positive() const {
  return std::all_of(coefficients.begin(), coefficients.end(), [](const Rat& c) { return sgn(c) > 0; });
}

BernsteinPatch bernstein_coefficients(const Poly& p, const Box2& box) {
  if (!p.is_real()) throw Error(ErrorKind::ComplexCoefficients, "Bernstein expansion needs real coefficients");
  BernsteinPatch patch;
  patch.box = box;
  patch.m = std::max(p.degree_x(), 0);
  patch.n = std::max(p.degree_y(), 0);
  const int m = patch.m, n = patch.n;
  const Poly unit = affine_substitute(p, box.x_min, box.width(), box.y_min, box.height());

  std::vector<Rat> power(static_cast<std::size_t>((m + 1) * (n + 1)));
  for (const auto& [mono, c] : unit.terms()) power[static_cast<std::size_t>(mono.i * (n + 1) + mono.j)] = c.re;

  const auto bm = binomial_row(m);
  const auto bn = binomial_row(n);
  // Along x: c[k][j] = sum_i C(k,i)/C(m,i) a[i][j].
  std::vector<Rat> half(power.size());
  for (int k = 0; k <= m; ++k) {
    const auto bk = binomial_row(k);
    for (int j = 0; j <= n; ++j) {
      Rat acc;
      for (int i = 0; i <= k; ++i)
        acc += Rat(bk[static_cast<std::size_t>(i)], bm[static_cast<std::size_t>(i)]) * power[static_cast<std::size_t>(i * (n + 1) + j)];
      half[static_cast<std::size_t>(k * (n + 1) + j)] = acc;
    }
  }
  patch.coefficients.assign(power.size(), Rat());
  for (int l = 0; l <= n; ++l) {
    const auto bl = binomial_row(l);
    for (int k = 0; k <= m; ++k) {
      Rat acc;
      for (int j = 0; j <= l; ++j)
        acc += Rat(bl[static_cast<std::size_t>(j)], bn[static_cast<std::size_t>(j)]) * half[static_cast<std::size_t>(k * (n + 1) + j)];
      patch.at(k, l) = acc;
    }
  }
  for (auto& c : patch.coefficients) c.canonicalize();
  return patch;
}

std::array<BernsteinPatch, 4> subdivide(const BernsteinPatch& patch) {
  const int m = patch.m, n = patch.n;
  const std::size_t row = static_cast<std::size_t>(n + 1);
  const Rat xm = (patch.box.x_min + patch.box.x_max) / 2;
  const Rat ym = (patch.box.y_min + patch.box.y_max) / 2;

  std::vector<Rat> west = patch.coefficients, east(patch.coefficients.size());
  for (int l = 0; l <= n; ++l) casteljau_split(west, east, m, static_cast<std::size_t>(l), row);

  auto split_y = [&](std::vector<Rat>& lower, std::vector<Rat>& upper) {
    upper.assign(lower.size(), Rat());
    for (int k = 0; k <= m; ++k) casteljau_split(lower, upper, n, static_cast<std::size_t>(k) * row, 1);
  };
  std::vector<Rat> nw, ne;
  split_y(west, nw);
  split_y(east, ne);

  auto make = [&](Box2 box, std::vector<Rat> coeffs) {
    BernsteinPatch child;
    child.box = std::move(box);
    child.m = m;
    child.n = n;
    child.coefficients = std::move(coeffs);
    return child;
  };
  const Box2& b = patch.box;
  return {make(Box2{b.x_min, xm, b.y_min, ym}, std::move(west)),
          make(Box2{xm, b.x_max, b.y_min, ym}, std::move(east)),
          make(Box2{b.x_min, xm, ym, b.y_max}, std::move(nw)),
          make(Box2{xm, b.x_max, ym, b.y_max}, std::move(ne))};
}

Rat uniform_lower_bound(const Poly& p, const Box2& box, int depth) {
  std::vector<BernsteinPatch> level{bernstein_coefficients(p, box)};
  for (int d = 0; d < depth; ++d) {
    std::vector<BernsteinPatch> next;
    next.reserve(level.size() * 4);
    for (const auto& patch : level)
      for (auto& child : subdivide(patch)) next.push_back(std::move(child));
    level = std::move(next);
  }
  Rat lo = level.front().min_coefficient();
  for (const auto& patch : level) lo = std::min(lo, patch.min_coefficient());
  return lo;
}

}  // namespace dulac
