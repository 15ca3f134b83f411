// Acceptance suite: one PASS/FAIL line per criterion, each with a pinned
// wall-clock limit. Exit status is nonzero when any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "dulac/analyze.hpp"
#include "dulac/bernstein.hpp"
#include "dulac/certify.hpp"
#include "dulac/darboux.hpp"
#include "dulac/error.hpp"
#include "dulac/flow.hpp"
#include "dulac/parse.hpp"
#include "dulac/synthesis.hpp"
#include "linear_oracle.hpp"
#include "random_poly.hpp"

using namespace dulac;
namespace fx = dulac::fixtures;

namespace {

struct Check {
  bool ok = true;
  std::ostringstream detail;

  void require(bool cond, const std::string& what) {
    if (!cond && ok) detail << "failed: " << what << "; ";
    ok = ok && cond;
  }
};

VectorField field(const char* p, const char* q) { return make_field(parse_poly(p), parse_poly(q)); }

const VectorField& vdp() {
  static const VectorField X = field("y", "-x + (1 - x^2)*y");
  return X;
}

bool preconditions(const Matrix2& A) {
  const Rat s = 3 * A.a * A.a + 10 * A.a * A.d - 4 * A.b * A.c + 3 * A.d * A.d;
  return sgn(A.trace()) != 0 && sgn(s) != 0;
}

Matrix2 random_matrix(std::mt19937_64& rng) {
  return {fx::random_rat(rng), fx::random_rat(rng), fx::random_rat(rng), fx::random_rat(rng)};
}

Box2 random_box(std::mt19937_64& rng) {
  Rat x0 = fx::random_rat(rng, 6, 4), y0 = fx::random_rat(rng, 6, 4);
  std::uniform_int_distribution<int> w(1, 12);
  return Box2::make(x0, Rat(x0 + Rat(w(rng)) / 4), y0, Rat(y0 + Rat(w(rng)) / 4));
}

Rat lerp(const Rat& lo, const Rat& hi, const Rat& s) { return lo + (hi - lo) * s; }

/// Positive at n points spread uniformly over the box; nonpositive double
/// values are confirmed with exact arithmetic before counting as failures.
bool sampled_positive(const Poly& p, const Box2& b, int n, std::mt19937_64& rng) {
  const NumericPoly f(p);
  const double x0 = b.x_min.get_d(), x1 = b.x_max.get_d(), y0 = b.y_min.get_d(), y1 = b.y_max.get_d();
  for (int i = 0; i < n; ++i) {
    const double x = fx::uniform(rng, x0, x1), y = fx::uniform(rng, y0, y1);
    if (f(x, y) > 0.0) continue;
    if (evaluate_exact(p, Rat(x), Rat(y)).re <= 0) return false;
  }
  return true;
}

// --- 1 ---------------------------------------------------------------------
void quadratic_exactness(Check& c) {
  std::mt19937_64 rng(1001);
  int checked = 0, zero = 0;
  while (checked < 500) {
    const Matrix2 A = random_matrix(rng);
    if (!preconditions(A)) continue;
    const VectorField X = linear_field(A);
    const Poly B = quadratic_dulac_linear(A).to_poly();
    zero += (div_product(B, X) - (X.p * X.p + X.q * X.q)).is_zero();
    ++checked;
  }
  c.detail << zero << "/" << checked << " exact; ";
  c.require(zero == 500, "Div(B X) - |X|^2 is not identically zero");
}

// --- 2 ---------------------------------------------------------------------
void printed_coefficients_reading(Check& c) {
  std::mt19937_64 rng(1002);
  int checked = 0, b20 = 0, b02 = 0, b11_c2 = 0, b11_c = 0;
  while (checked < 100) {
    const Matrix2 A = random_matrix(rng);
    if (!preconditions(A)) continue;
    const auto solved = quadratic_dulac_linear(A);
    const auto c2 = printed_coefficients(A, B11Reading::C2Minus3D2);
    const auto c1 = printed_coefficients(A, B11Reading::CMinus3D2);
    b20 += c2.b20 == solved.b20 && c1.b20 == solved.b20;
    b02 += c2.b02 == solved.b02 && c1.b02 == solved.b02;
    b11_c2 += c2.b11 == solved.b11;
    b11_c += c1.b11 == solved.b11;
    ++checked;
  }
  c.detail << "b20 " << b20 << "/100, b02 " << b02 << "/100, b11 under c^2 - 3d^2: " << b11_c2
           << "/100, under c - 3d^2: " << b11_c << "/100; ";
  c.require(b20 == 100 && b02 == 100, "b20/b02 closed forms disagree");
  const bool c2_only = b11_c2 == 100 && b11_c < 100;
  const bool c_only = b11_c == 100 && b11_c2 < 100;
  c.require(c2_only != c_only, "not exactly one reading matches uniformly");
  if (c2_only) c.detail << "b11 reading: b(c^2 - 3d^2); ";
  if (c_only) c.detail << "b11 reading: b(c - 3d^2); ";
}

// --- 3 ---------------------------------------------------------------------
void bendixson_strip(Check& c) {
  const Box2 strip = parse_region("-0.95:0.95,-4:4");
  const DulacCertificate d = bendixson(vdp(), strip);
  c.require(d.certificate.is_positive(), "strip not certified");
  c.require(d.certificate.depth() <= 2, "depth above 2");
  c.require(d.certificate.carrier == parse_poly("1 - x^2"), "carrier is not 1 - x^2");
  c.require(d.conclusion == Conclusion::NoPeriodicOrbitFullyContained, "wrong conclusion");
  // 1 - x^2 does not depend on y and is concave in x: the box minimum sits at
  // x = +-19/20.
  const Rat lo = evaluate_exact(d.certificate.carrier, Rat(-19) / 20, Rat(0)).re;
  const Rat hi = evaluate_exact(d.certificate.carrier, Rat(19) / 20, Rat(3)).re;
  c.require(lo == Rat(39) / 400 && hi == Rat(39) / 400, "edge value is not 0.0975");
  for (int i = 1; i < 38; ++i)
    c.require(evaluate_exact(d.certificate.carrier, Rat(i - 19) / 20, Rat(0)).re > Rat(39) / 400,
              "interior value below the edge minimum");
  c.detail << "depth " << d.certificate.depth() << ", carrier " << to_string(d.certificate.carrier) << ", min "
           << lo.get_d() << "; ";
}

// --- 4 ---------------------------------------------------------------------
struct ReferenceCycle {
  double x = 0.0;
  double period = 0.0;
};

/// Fixed-step RK4 iteration of the return map to the positive x-axis
/// (downward crossings), crossings refined by bisection on the step size.
ReferenceCycle reference_vdp_cycle() {
  auto f = [](std::array<double, 2> z) { return std::array<double, 2>{z[1], -z[0] + (1 - z[0] * z[0]) * z[1]}; };
  const double h = 1e-3;
  double x = 1.0, period = 0.0;
  for (int it = 0; it < 30; ++it) {
    std::array<double, 2> z{x, 0.0};
    double t = 0.0;
    // Leave the axis first.
    z = fx::rk4_step(f, z, h);
    t += h;
    while (true) {
      const auto next = fx::rk4_step(f, z, h);
      if (z[1] > 0.0 && next[1] <= 0.0 && next[0] > 0.0) {
        double lo = 0.0, hi = h;
        for (int k = 0; k < 60; ++k) {
          const double mid = 0.5 * (lo + hi);
          (fx::rk4_step(f, z, mid)[1] > 0.0 ? lo : hi) = mid;
        }
        const auto cross = fx::rk4_step(f, z, 0.5 * (lo + hi));
        x = cross[0];
        period = t + 0.5 * (lo + hi);
        break;
      }
      z = next;
      t += h;
    }
  }
  return {x, period};
}

bool inside(const Box2& b, const std::vector<Point>& pts) {
  for (const auto& p : pts)
    if (!b.contains(p)) return false;
  return true;
}

void cycle_consistency(Check& c) {
  const Box2 square = parse_region("-3:3,-3:3");
  const DulacCertificate d = bendixson(vdp(), square);
  c.require(d.conclusion == Conclusion::NotCertified, "square unexpectedly certified");
  c.require(d.certificate.is_violation(), "no violation witness");
  if (const auto* v = std::get_if<Violation>(&d.certificate.outcome)) {
    const Rat val = evaluate_exact(d.certificate.carrier, v->x, v->y).re;
    c.require(val <= 0 && val == v->value, "witness does not evaluate <= 0 exactly");
    c.detail << "witness (" << to_string(v->x) << ", " << to_string(v->y) << ") value " << to_string(val) << "; ";
  }

  const Section sec = Section::make({0.0, 0.0}, {0.0, 1.0}, Crossing::Negative);
  LimitCycleOptions lo;
  lo.tol = 1e-10;
  const LimitCycleReport cyc = detect_limit_cycle(vdp(), sec, {1.0, 0.0}, 50, lo);
  c.require(cyc.stability == CycleStability::Stable, "cycle not Stable");
  c.require(cyc.amplitude_x >= 1.95 && cyc.amplitude_x <= 2.07, "amplitude outside [1.95, 2.07]");
  c.require(cyc.period >= 6.6 && cyc.period <= 6.73, "period outside [6.6, 6.73]");
  const ReferenceCycle ref = reference_vdp_cycle();
  c.require(std::abs(cyc.amplitude_x - ref.x) <= 1e-6, "amplitude disagrees with reference integration");
  c.require(std::abs(cyc.period - ref.period) <= 1e-6, "period disagrees with reference integration");
  c.detail << "amplitude " << cyc.amplitude_x << " (ref " << ref.x << "), period " << cyc.period << " (ref "
           << ref.period << "); ";

  std::vector<Box2> certified{parse_region("-0.95:0.95,-4:4")};
  AnalysisConfig cfg;
  const AnalysisReport a = run_analyze(vdp(), square, cfg);
  for (const auto& b : a.global_boxes_certified) certified.push_back(b);
  for (const auto& l : a.local_certificates) certified.push_back(l.box);
  std::vector<const LimitCycleReport*> cycles{&cyc};
  for (const auto& l : a.limit_cycles) cycles.push_back(&l);
  for (const auto* l : cycles)
    for (const auto& b : certified) c.require(!inside(b, l->points), "a detected cycle lies inside " + to_string(b));
  c.detail << cycles.size() << " cycles vs " << certified.size() << " certified boxes; ";
}

// --- 5 ---------------------------------------------------------------------
void darboux_suite(Check& c) {
  const VectorField circle = field("-y + x*(1 - x^2 - y^2)", "x + y*(1 - x^2 - y^2)");
  c.require(cofactor_of(parse_poly("x^2 + y^2 - 1"), circle).k == parse_poly("-2*x^2 - 2*y^2"),
            "circle cofactor");
  const VectorField saddle = field("x", "-y");
  const auto kx = cofactor_of(Poly::x(), saddle), ky = cofactor_of(Poly::y(), saddle);
  c.require(kx.k == Poly(1) && ky.k == Poly(-1), "saddle axis cofactors");

  const DarbouxExpr hs = darboux_first_integral({kx, ky});
  c.require(hs.total_cofactor().is_zero(), "saddle total cofactor");
  c.require(hs.curve_factors.size() == 2 && hs.curve_factors[0].second == CRat(1) &&
                hs.curve_factors[1].second == CRat(1),
            "saddle integral is not xy");

  const VectorField node = field("x", "2*y");
  const DarbouxExpr hn = darboux_first_integral({cofactor_of(Poly::x(), node), cofactor_of(Poly::y(), node)});
  c.require(hn.total_cofactor().is_zero(), "node total cofactor");
  c.require(hn.curve_factors.size() == 2 && hn.curve_factors[0].first.f == Poly::x() &&
                hn.curve_factors[0].second == CRat(2) && hn.curve_factors[1].second == CRat(-1),
            "node integral is not x^2 y^-1");
  c.detail << "H = " << to_string(hs) << ", H = " << to_string(hn) << "; ";

  for (const auto& [H, X] : {std::pair{hs, saddle}, std::pair{hn, node}}) {
    const ResidualReport r = verify_first_integral(H, X, 8, 10.0);
    c.require(r.symbolic_residual.is_zero(), "symbolic residual");
    c.require(r.trajectories_checked == 8, "trajectories checked");
    c.require(r.numeric_max_drift <= 1e-6, "drift above 1e-6");
    for (const auto& n : r.notes) c.require(n.find("stopped early") == std::string::npos, n);
    c.detail << "drift " << r.numeric_max_drift << "; ";
  }
}

// --- 6 ---------------------------------------------------------------------
void leibniz_and_additivity(Check& c) {
  std::mt19937_64 rng(1006);
  int leibniz = 0, additive = 0;
  for (int n = 0; n < 1000; ++n) {
    const Poly B = fx::random_poly(rng, 1 + n % 5);
    const VectorField X = fx::random_field(rng, 1 + n % 4);
    // Product rule oracle: d/dx (B P) + d/dy (B Q).
    const Poly oracle = derive(B * X.p, Axis::X) + derive(B * X.q, Axis::Y);
    leibniz += div_product(B, X) == oracle && oracle == B * divergence(X) + lie_derivative(B, X);
  }
  for (int n = 0; n < 1000; ++n) {
    // X = f1 f2 Y leaves both curves invariant with k1 = f2 <grad f1, Y> and
    // k2 = f1 <grad f2, Y>.
    Poly f1, f2;
    while (f1.is_constant()) f1 = fx::random_poly(rng, 1 + n % 2);
    while (f2.is_constant()) f2 = fx::random_poly(rng, 1);
    const Poly y1 = fx::random_poly(rng, 1), y2 = fx::random_poly(rng, 1);
    const VectorField Y = make_field(y1.is_zero() ? Poly(1) : y1, y2);
    const VectorField X = make_field(f1 * f2 * Y.p, f1 * f2 * Y.q);
    const Poly k1 = f2 * lie_derivative(f1, Y), k2 = f1 * lie_derivative(f2, Y);
    const unsigned m = 1 + static_cast<unsigned>(n % 3);
    try {
      const auto c1 = cofactor_of(f1, X), c2 = cofactor_of(f2, X);
      const auto c12 = cofactor_of(f1.pow(m) * f2, X);
      additive += c1.k == k1 && c2.k == k2 && c12.k == Poly(Rat(m)) * c1.k + c2.k;
    } catch (const Error&) {
    }
  }
  c.detail << "Leibniz " << leibniz << "/1000, additivity " << additive << "/1000; ";
  c.require(leibniz == 1000, "Leibniz identity");
  c.require(additive == 1000, "cofactor additivity");
}

// --- 7 ---------------------------------------------------------------------
void bernstein_soundness(Check& c) {
  std::mt19937_64 rng(1007);
  std::uniform_int_distribution<int> t(0, 1000);
  int enclosed = 0;
  for (int n = 0; n < 1000; ++n) {
    const Poly p = fx::random_poly(rng, 1 + n % 6);
    const Box2 b = random_box(rng);
    const auto patch = bernstein_coefficients(p, b);
    const Rat x = lerp(b.x_min, b.x_max, Rat(Rat(t(rng)) / 1000));
    const Rat y = lerp(b.y_min, b.y_max, Rat(Rat(t(rng)) / 1000));
    const Rat v = evaluate_exact(p, x, y).re;
    enclosed += patch.min_coefficient() <= v && v <= patch.max_coefficient();
  }
  int positives = 0, positive_ok = 0, violations = 0, violation_ok = 0;
  for (int n = 0; n < 120; ++n) {
    Poly p = fx::random_poly(rng, 1 + n % 4);
    if (n % 2 == 0) p = p * p + Poly(Rat(1) / (1 + n % 50));
    const Box2 b = random_box(rng);
    const Certificate cert = certify_positive(p, b, 10);
    if (cert.is_positive()) {
      ++positives;
      positive_ok += sampled_positive(p, b, 10000, rng);
    } else if (const auto* v = std::get_if<Violation>(&cert.outcome)) {
      ++violations;
      const Rat val = evaluate_exact(p, v->x, v->y).re;
      violation_ok += val <= 0 && val == v->value && v->x >= b.x_min && v->x <= b.x_max && v->y >= b.y_min &&
                      v->y <= b.y_max;
    }
  }
  c.detail << "enclosure " << enclosed << "/1000, positive " << positive_ok << "/" << positives << ", violation "
           << violation_ok << "/" << violations << "; ";
  c.require(enclosed == 1000, "range enclosure");
  c.require(positives > 0 && positive_ok == positives, "positive certificate failed sampling");
  c.require(violations > 0 && violation_ok == violations, "violation witness not <= 0");
}

// --- 8 ---------------------------------------------------------------------
void gradient_multipliers_check(Check& c) {
  const auto g = gradient_multipliers(parse_poly("x^2 + y^2"));
  const Box2 box = parse_region("-2:2,-2:2");
  c.require(g[0].carrier == parse_poly("4 + 4*x^2 + 4*y^2"), "B1 carrier");
  const Certificate p = certify_positive(g[0].carrier, box);
  c.require(p.is_positive() && p.depth() <= 1, "B1 not positive at depth 0-1");
  const Certificate n = certify_positive(g[1].carrier, box);
  c.require(n.is_violation(), "B2 has no violation");
  if (const auto* v = std::get_if<Violation>(&n.outcome)) {
    c.require(v->x * v->x + v->y * v->y >= 1, "B2 witness inside the unit disk");
    c.require(evaluate_exact(g[1].carrier, v->x, v->y).re <= 0, "B2 witness value");
    c.detail << "B1 depth " << p.depth() << ", B2 witness (" << to_string(v->x) << ", " << to_string(v->y) << "); ";
  }
}

// --- 9 ---------------------------------------------------------------------
void local_dulac_random(Check& c) {
  std::mt19937_64 rng(1009);
  int cases = 0, certified = 0, sampled_ok = 0;
  while (cases < 50) {
    const Matrix2 A = random_matrix(rng);
    const double tr = A.trace().get_d(), det = A.det().get_d();
    const double disc = tr * tr - 4 * det;
    // Hyperbolic: no eigenvalue on the imaginary axis.
    const bool hyperbolic = det != 0.0 && (tr != 0.0 || disc > 0.0);
    if (!hyperbolic) continue;
    VectorField X = linear_field(A);
    std::uniform_int_distribution<int> num(-10, 10);
    for (int i = 0; i <= 3; ++i) {
      X.p.add_term({i, 3 - i}, CRat(Rat(num(rng)) / 100));
      X.q.add_term({i, 3 - i}, CRat(Rat(num(rng)) / 100));
    }
    ++cases;
    try {
      const LocalDulac L = local_dulac_hyperbolic(X, {0.0, 0.0}, 1e-3);
      const Rat half = L.box.width() / 2;
      if (!L.certificate.is_positive() || half < Rat(1) / 1000) continue;
      ++certified;
      bool ok = true;
      const NumericPoly f(L.certificate.carrier);
      const double w = half.get_d(), r = L.puncture_half_width.get_d();
      for (int s = 0; s < 2000; ++s) {
        const double x = fx::uniform(rng, -w, w), y = fx::uniform(rng, -w, w);
        if (std::max(std::abs(x), std::abs(y)) <= r || f(x, y) > 0.0) continue;
        ok = ok && evaluate_exact(L.certificate.carrier, Rat(x), Rat(y)).re > 0;
      }
      std::uniform_int_distribution<int> t(0, 4096);
      int drawn = 0;
      while (drawn < 500) {
        const Rat x = lerp(L.box.x_min, L.box.x_max, Rat(Rat(t(rng)) / 4096));
        const Rat y = lerp(L.box.y_min, L.box.y_max, Rat(Rat(t(rng)) / 4096));
        if (abs(x) <= L.puncture_half_width && abs(y) <= L.puncture_half_width) continue;
        ++drawn;
        ok = ok && evaluate_exact(L.certificate.carrier, x, y).re > 0;
      }
      sampled_ok += ok;
    } catch (const Error&) {
    }
  }
  c.detail << certified << "/50 certified, " << sampled_ok << "/" << certified << " pass sampling; ";
  c.require(certified >= 45, "fewer than 45/50 certified");
  c.require(sampled_ok == certified, "a certificate failed sampling");
}

// --- 10 --------------------------------------------------------------------
void numeric_fidelity(Check& c) {
  std::mt19937_64 rng(1010);
  int done = 0;
  double worst = 0.0;
  while (done < 20) {
    const double a = fx::uniform(rng, -2, 1), b = fx::uniform(rng, -2, 2);
    const double cc = fx::uniform(rng, -2, 2), d = fx::uniform(rng, -2, 1);
    const double tr = a + d, det = a * d - b * cc, disc = tr * tr - 4 * det;
    if (!(tr < -0.1 && det > 0.05 && std::abs(disc) > 1e-3)) continue;
    const VectorField X = make_field(Poly(rat_from_double(a)) * Poly::x() + Poly(rat_from_double(b)) * Poly::y(),
                                     Poly(rat_from_double(cc)) * Poly::x() + Poly(rat_from_double(d)) * Poly::y());
    const Point z0{fx::uniform(rng, -1, 1), fx::uniform(rng, -1, 1)};
    const Trajectory trj = integrate(X, z0, 5.0, 1e-12, default_domain());
    c.require(trj.status == TrajectoryStatus::Completed && trj.times.back() == 5.0, "integration incomplete");
    for (std::size_t i = 0; i < trj.times.size(); ++i) {
      const auto ref = fx::linear_flow(a, b, cc, d, {z0.x, z0.y}, trj.times[i]);
      worst = std::max({worst, std::abs(trj.states[i].x - ref[0]), std::abs(trj.states[i].y - ref[1])});
    }
    ++done;
  }
  c.detail << "max error " << worst << "; ";
  c.require(worst <= 1e-8, "error above 1e-8");
}

struct Criterion {
  int id;
  const char* name;
  double limit_s;
  std::function<void(Check&)> run;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "quadratic Dulac exactness", 5.0, quadratic_exactness},
      {2, "printed-coefficient reproduction", 2.0, printed_coefficients_reading},
      {3, "Bendixson on van der Pol strip", 1.0, bendixson_strip},
      {4, "certificate/cycle consistency", 10.0, cycle_consistency},
      {5, "Darboux suite", 2.0, darboux_suite},
      {6, "Leibniz and cofactor additivity", 10.0, leibniz_and_additivity},
      {7, "Bernstein soundness", 30.0, bernstein_soundness},
      {8, "gradient multipliers", 1.0, gradient_multipliers_check},
      {9, "local Dulac at hyperbolic equilibria", 60.0, local_dulac_random},
      {10, "numeric fidelity", 5.0, numeric_fidelity},
  };
  int failures = 0;
  for (const auto& cr : criteria) {
    Check c;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      cr.run(c);
    } catch (const std::exception& e) {
      c.require(false, std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    c.require(secs < cr.limit_s, "runtime limit");
    failures += !c.ok;
    std::printf("%s criterion %d (%s): %s%.3f s (limit %.0f s)\n", c.ok ? "PASS" : "FAIL", cr.id, cr.name,
                c.detail.str().c_str(), secs, cr.limit_s);
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
