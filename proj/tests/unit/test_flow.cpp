#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "dulac/certify.hpp"
#include "dulac/error.hpp"
#include "dulac/flow.hpp"
#include "dulac/parse.hpp"
#include "linear_oracle.hpp"
#include "random_poly.hpp"

using namespace dulac;

namespace {

VectorField field(const char* p, const char* q) { return make_field(parse_poly(p), parse_poly(q)); }

const VectorField kVdp = field("y", "-x + (1 - x^2)*y");
const Section kPositiveX = Section::make({0, 0}, {0, 1});

ErrorKind kind_of(auto&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no error raised";
  return ErrorKind::InvalidArgument;
}

std::array<double, 2> vdp_rhs(std::array<double, 2> z, double mu = 1.0) {
  return {z[1], -z[0] + mu * (1 - z[0] * z[0]) * z[1]};
}

/// Reference return to {y = 0, x > 0} from (x0, 0) by fixed-step RK4 and linear interpolation.
std::pair<double, double> reference_vdp_return(double x0, double h = 1e-4) {
  std::array<double, 2> z{x0, 0.0};
  double t = 0.0;
  bool left = false;
  while (t < 50) {
    const auto next = fixtures::rk4_step([](auto s) { return vdp_rhs(s); }, z, h);
    if (next[1] < 0) left = true;
    if (left && z[1] > 0 && next[1] <= 0 && z[0] > 0) {
      const double s = z[1] / (z[1] - next[1]);
      return {z[0] + s * (next[0] - z[0]), t + s * h};
    }
    z = next;
    t += h;
  }
  return {NAN, NAN};
}

}  // namespace

TEST(FindEquilibria, VanDerPolOrigin) {
  const auto eq = find_equilibria(kVdp, parse_region("-3:3,-3:3"), 10);
  ASSERT_EQ(eq.size(), 1u);
  EXPECT_NEAR(eq[0].location.x, 0.0, 1e-12);
  EXPECT_NEAR(eq[0].location.y, 0.0, 1e-12);
}

TEST(FindEquilibria, TwoRootsSorted) {
  const auto eq = find_equilibria(field("x^2 - 1", "y"), parse_region("-2:2,-2:2"));
  ASSERT_EQ(eq.size(), 2u);
  EXPECT_NEAR(eq[0].location.x, -1.0, 1e-12);
  EXPECT_NEAR(eq[1].location.x, 1.0, 1e-12);
  EXPECT_EQ(eq[0].classification, Classification::Saddle);
  EXPECT_EQ(eq[1].classification, Classification::Node);
}

TEST(FindEquilibria, NoZeros) {
  EXPECT_TRUE(find_equilibria(field("1", "1"), parse_region("-5:5,-5:5")).empty());
  EXPECT_THROW(find_equilibria(kVdp, parse_region("-1:1,-1:1"), 1), Error);
}

TEST(FindEquilibria, StaysInsideTheBox) {
  const auto eq = find_equilibria(field("x^2 - 1", "y"), parse_region("0:2,-1:1"), 8);
  ASSERT_EQ(eq.size(), 1u);
  EXPECT_NEAR(eq[0].location.x, 1.0, 1e-12);
}

TEST(Classify, VanDerPolFocus) {
  const auto r = classify_equilibrium(kVdp, {0, 0});
  EXPECT_EQ(r.classification, Classification::Focus);
  EXPECT_EQ(r.stability, Stability::Repelling);
  EXPECT_TRUE(r.hyperbolic);
  EXPECT_NEAR(r.eigenvalues[0].real(), 0.5, 1e-15);
  EXPECT_NEAR(std::abs(r.eigenvalues[0].imag()), std::sqrt(3.0) / 2, 1e-15);
  EXPECT_EQ(r.jacobian, (std::array<double, 4>{0, 1, -1, 1}));
}

TEST(Classify, SaddleCenterAndDegenerate) {
  const auto s = classify_equilibrium(field("x", "-y"), {0, 0});
  EXPECT_EQ(s.classification, Classification::Saddle);
  EXPECT_EQ(s.stability, Stability::Mixed);
  const auto c = classify_equilibrium(field("-y", "x"), {0, 0});
  EXPECT_EQ(c.classification, Classification::CenterCandidate);
  EXPECT_FALSE(c.hyperbolic);
  const auto d = classify_equilibrium(field("y", "y"), {0, 0});
  EXPECT_EQ(d.classification, Classification::Degenerate);
  EXPECT_FALSE(d.hyperbolic);
  const auto n = classify_equilibrium(field("-x", "-3*y"), {0, 0});
  EXPECT_EQ(n.classification, Classification::Node);
  EXPECT_EQ(n.stability, Stability::Attracting);
  EXPECT_EQ(kind_of([] { classify_equilibrium(kVdp, {1, 0}); }), ErrorKind::NotAnEquilibrium);
}

TEST(Classify, InvariantUnderPositiveRescaling) {
  std::mt19937_64 rng(123);
  for (int n = 0; n < 200; ++n) {
    VectorField X = fixtures::random_field(rng, 3);
    X.p -= Poly(X.p.coeff(0, 0));
    X.q -= Poly(X.q.coeff(0, 0));
    const VectorField X2 = make_field(Poly(2) * X.p, Poly(2) * X.q);
    const auto a = classify_equilibrium(X, {0, 0}), b = classify_equilibrium(X2, {0, 0});
    EXPECT_EQ(a.classification, b.classification);
    EXPECT_EQ(a.stability, b.stability);
    EXPECT_NEAR(std::abs(b.eigenvalues[0]), 2 * std::abs(a.eigenvalues[0]), 1e-12);
  }
}

TEST(Classify, LabelsAreConsistentWithEigenvalues) {
  std::mt19937_64 rng(321);
  for (int n = 0; n < 300; ++n) {
    const auto A = fixtures::random_poly(rng, 1);
    VectorField X = make_field(A - Poly(A.coeff(0, 0)), fixtures::random_poly(rng, 1));
    X.q -= Poly(X.q.coeff(0, 0));
    const auto r = classify_equilibrium(X, {0, 0});
    const double m = std::max(std::abs(r.eigenvalues[0]), std::abs(r.eigenvalues[1]));
    const double thr = kZeroRealPartThreshold * m;
    const bool complex_pair = r.eigenvalues[0].imag() != 0.0;
    EXPECT_EQ(r.hyperbolic, std::abs(r.eigenvalues[0].real()) > thr && std::abs(r.eigenvalues[1].real()) > thr);
    switch (r.classification) {
      case Classification::Node:
        EXPECT_FALSE(complex_pair);
        EXPECT_GT(r.eigenvalues[0].real() * r.eigenvalues[1].real(), 0);
        break;
      case Classification::Saddle:
        EXPECT_LT(r.eigenvalues[0].real() * r.eigenvalues[1].real(), 0);
        break;
      case Classification::Focus:
        EXPECT_TRUE(complex_pair);
        EXPECT_GT(std::abs(r.eigenvalues[0].real()), thr);
        break;
      case Classification::CenterCandidate:
        EXPECT_TRUE(complex_pair);
        break;
      case Classification::Degenerate:
        EXPECT_LE(std::min(std::abs(r.eigenvalues[0]), std::abs(r.eigenvalues[1])), thr);
        break;
    }
  }
}

TEST(Integrate, ExponentialDecay) {
  const auto tr = integrate(field("-x", "-y"), {1, 0}, 1.0, 1e-12, default_domain());
  EXPECT_EQ(tr.status, TrajectoryStatus::Completed);
  EXPECT_NEAR(tr.states.back().x, std::exp(-1.0), 1e-8);
  EXPECT_NEAR(tr.states.back().y, 0.0, 1e-15);
  EXPECT_EQ(tr.times.back(), 1.0);
  EXPECT_EQ(tr.times.size(), tr.states.size());
}

TEST(Integrate, RotationReturnsAfterFullTurn) {
  const auto tr = integrate(field("-y", "x"), {1, 0}, 2 * std::numbers::pi, 1e-10, default_domain());
  EXPECT_NEAR(tr.states.back().x, 1.0, 1e-6);
  EXPECT_NEAR(tr.states.back().y, 0.0, 1e-6);
  for (std::size_t i = 1; i < tr.times.size(); ++i) EXPECT_GT(tr.times[i], tr.times[i - 1]);
}

TEST(Integrate, MatchesMatrixExponentialOnRandomStableSystems) {
  std::mt19937_64 rng(10);
  int done = 0;
  while (done < 20) {
    const double a = fixtures::uniform(rng, -2, 1), b = fixtures::uniform(rng, -2, 2);
    const double c = fixtures::uniform(rng, -2, 2), d = fixtures::uniform(rng, -2, 1);
    const double tr = a + d, det = a * d - b * c;
    const double disc = tr * tr - 4 * det;
    if (!(tr < -0.1 && det > 0.05 && std::abs(disc) > 1e-3)) continue;
    const VectorField X = make_field(Poly(rat_from_double(a)) * Poly::x() + Poly(rat_from_double(b)) * Poly::y(),
                                     Poly(rat_from_double(c)) * Poly::x() + Poly(rat_from_double(d)) * Poly::y());
    const Point z0{fixtures::uniform(rng, -1, 1), fixtures::uniform(rng, -1, 1)};
    const double t = fixtures::uniform(rng, 0.5, 5);
    const auto end = integrate(X, z0, t, 1e-12, default_domain()).states.back();
    const auto ref = fixtures::linear_flow(a, b, c, d, {z0.x, z0.y}, t);
    EXPECT_NEAR(end.x, ref[0], 1e-8);
    EXPECT_NEAR(end.y, ref[1], 1e-8);
    ++done;
  }
}

TEST(Integrate, TimeReversal) {
  std::mt19937_64 rng(14);
  for (int n = 0; n < 20; ++n) {
    const Point z0{fixtures::uniform(rng, -2, 2), fixtures::uniform(rng, -2, 2)};
    const double tol = 1e-10;
    const auto fwd = integrate(kVdp, z0, 3.0, tol, default_domain());
    const auto back = integrate(kVdp, fwd.states.back(), -3.0, tol, default_domain());
    EXPECT_NEAR(back.states.back().x, z0.x, 100 * tol * std::max(1.0, std::abs(z0.x)));
    EXPECT_NEAR(back.states.back().y, z0.y, 100 * tol * std::max(1.0, std::abs(z0.y)));
    for (std::size_t i = 1; i < back.times.size(); ++i) EXPECT_LT(back.times[i], back.times[i - 1]);
  }
}

TEST(Integrate, StopsAtDomainBoundary) {
  const auto tr = integrate(field("x", "0"), {1, 0}, 10.0, 1e-10, parse_region("-3:3,-1:1"));
  EXPECT_EQ(tr.status, TrajectoryStatus::LeftDomain);
  EXPECT_NEAR(tr.states.back().x, 3.0, 1e-9);
  EXPECT_NEAR(tr.times.back(), std::log(3.0), 1e-8);
}

TEST(Integrate, BlowUpEndsEarly) {
  // x' = x^2 blows up at t = 1 from x = 1.
  const auto tr = integrate(field("x^2", "0"), {1, 0}, 2.0, 1e-10, default_domain());
  EXPECT_NE(tr.status, TrajectoryStatus::Completed);
  EXPECT_LT(tr.times.back(), 1.0);
}

TEST(Integrate, ToleranceRange) {
  EXPECT_EQ(kind_of([] { integrate(kVdp, {1, 0}, 1.0, 1e-14, default_domain()); }), ErrorKind::InvalidTolerance);
  EXPECT_EQ(kind_of([] { integrate(kVdp, {1, 0}, 1.0, 1e-2, default_domain()); }), ErrorKind::InvalidTolerance);
  EXPECT_NO_THROW(integrate(kVdp, {1, 0}, 1.0, 1e-13, default_domain()));
  EXPECT_NO_THROW(integrate(kVdp, {1, 0}, 1.0, 1e-3, default_domain()));
}

TEST(Section, MakeNormalizes) {
  const Section s = Section::make({1, 2}, {3, 4}, Crossing::Negative);
  EXPECT_NEAR(std::hypot(s.normal.x, s.normal.y), 1.0, 1e-12);
  EXPECT_NEAR(s.signed_distance({1 + 0.6, 2 + 0.8}), 1.0, 1e-12);
  EXPECT_NEAR(s.coordinate(s.at(0.7)), 0.7, 1e-12);
  EXPECT_THROW(Section::make({0, 0}, {0, 0}), Error);
}

TEST(PoincareReturn, Rotation) {
  const auto r = poincare_return(field("-y", "x"), kPositiveX, {1, 0}, 20.0);
  EXPECT_NEAR(r.point.x, 1.0, 1e-6);
  EXPECT_NEAR(r.point.y, 0.0, 1e-10);
  EXPECT_NEAR(r.time, 2 * std::numbers::pi, 1e-6);
}

TEST(PoincareReturn, SaddleNeverReturns) {
  EXPECT_EQ(kind_of([] { poincare_return(field("x", "-y"), kPositiveX, {1, 0}, 50.0); }), ErrorKind::NoReturn);
  EXPECT_EQ(kind_of([] { poincare_return(field("x", "-y"), kPositiveX, {1, 0.5}, 50.0); }), ErrorKind::InvalidArgument);
}

TEST(PoincareReturn, VanDerPolMatchesReferenceIntegration) {
  const auto r = poincare_return(kVdp, kPositiveX, {2, 0}, 50.0);
  const auto [x_ref, t_ref] = reference_vdp_return(2.0);
  EXPECT_NEAR(r.point.x, x_ref, 1e-6);
  EXPECT_NEAR(r.time, t_ref, 1e-6);
  EXPECT_NEAR(r.point.x, 2.009, 1e-3);
}

TEST(PoincareReturn, DirectionFilter) {
  // Counter-clockwise rotation crosses {y = 0, x > 0} upward only.
  const Section down = Section::make({0, 0}, {0, 1}, Crossing::Negative);
  EXPECT_EQ(kind_of([&] { poincare_return(field("-y", "x"), down, {1, 0}, 20.0); }), ErrorKind::NoReturn);
  const Section up = Section::make({0, 0}, {0, 1}, Crossing::Positive);
  EXPECT_NEAR(poincare_return(field("-y", "x"), up, {1, 0}, 20.0).time, 2 * std::numbers::pi, 1e-6);
}

TEST(LimitCycle, VanDerPol) {
  const auto c = detect_limit_cycle(kVdp, kPositiveX, {2, 0});
  EXPECT_GE(c.amplitude_x, 1.95);
  EXPECT_LE(c.amplitude_x, 2.07);
  EXPECT_GE(c.period, 6.6);
  EXPECT_LE(c.period, 6.73);
  EXPECT_EQ(c.stability, CycleStability::Stable);
  EXPECT_LT(std::abs(c.return_map_slope), 1 - 1e-3);
  EXPECT_FALSE(c.non_isolated);
  ASSERT_FALSE(c.points.empty());
  EXPECT_LE(std::hypot(c.points.front().x - c.points.back().x, c.points.front().y - c.points.back().y), 1e-9);

  // Reference: iterate the RK4 return map until it settles.
  double x = 2.0, t = 0.0;
  for (int k = 0; k < 8; ++k) std::tie(x, t) = reference_vdp_return(x);
  EXPECT_NEAR(c.section_point.x, x, 1e-6);
  EXPECT_NEAR(c.period, t, 1e-6);
}

TEST(LimitCycle, SeedsInsideAndOutsideAgree) {
  const auto a = detect_limit_cycle(kVdp, kPositiveX, {0.5, 0});
  const auto b = detect_limit_cycle(kVdp, kPositiveX, {3.5, 0});
  EXPECT_NEAR(a.period, b.period, 1e-7);
  EXPECT_NEAR(a.section_point.x, b.section_point.x, 1e-7);
}

TEST(LimitCycle, CenterIsAMarginalFamily) {
  const auto c = detect_limit_cycle(field("-y", "x"), kPositiveX, {1.5, 0});
  EXPECT_EQ(c.stability, CycleStability::Marginal);
  EXPECT_NEAR(c.return_map_slope, 1.0, 1e-6);
  EXPECT_TRUE(c.non_isolated);
  EXPECT_NEAR(c.period, 2 * std::numbers::pi, 1e-6);
}

TEST(LimitCycle, RadialExpansionHasNone) {
  EXPECT_EQ(kind_of([] { detect_limit_cycle(field("x", "y"), kPositiveX, {1, 0}); }), ErrorKind::NotFound);
}

TEST(LimitCycle, UnstableCycleOfReversedVanDerPol) {
  const VectorField rev = field("-y", "x - (1 - x^2)*y");
  // Time-reversed van der Pol repels from the same orbit; secant steps still converge from a nearby seed.
  const auto fwd = detect_limit_cycle(kVdp, kPositiveX, {2, 0});
  const auto c = detect_limit_cycle(rev, kPositiveX, {fwd.section_point.x + 1e-6, 0});
  EXPECT_EQ(c.stability, CycleStability::Unstable);
  EXPECT_NEAR(c.period, fwd.period, 1e-6);
}

TEST(LimitCycle, NeverInsideACertifiedBendixsonStrip) {
  std::mt19937_64 rng(2025);
  const Box2 strip = parse_region("-0.95:0.95,-4:4");
  for (int n = 0; n < 21; ++n) {
    // Lienard systems with divergence mu (1 - x^2).
    const Rat mu = n == 0 ? Rat(1) : rat_from_double(fixtures::uniform(rng, 0.3, 2.0));
    const Rat eps = n == 0 ? Rat(0) : rat_from_double(fixtures::uniform(rng, 0.0, 0.5));
    const VectorField X = make_field(Poly::y(), parse_poly("-x") - Poly(eps) * Poly::x().pow(3) +
                                                    Poly(mu) * (Poly(1) - Poly::x() * Poly::x()) * Poly::y());
    const auto cert = bendixson(X, strip);
    ASSERT_EQ(cert.conclusion, Conclusion::NoPeriodicOrbitFullyContained);
    const auto c = detect_limit_cycle(X, kPositiveX, {1.0, 0});
    bool inside = true;
    for (const auto& p : c.points) inside = inside && strip.contains_open(p);
    EXPECT_FALSE(inside);
    EXPECT_EQ(c.stability, CycleStability::Stable);
  }
}

TEST(Csv, HeaderAndFullPrecision) {
  const auto tr = integrate(field("-x", "-y"), {1.0 / 3.0, 0}, 0.5, 1e-10, default_domain());
  const std::string csv = to_csv(tr);
  EXPECT_EQ(csv.rfind("t,x,y\n", 0), 0u);
  EXPECT_NE(csv.find("0,0.33333333333333331,0\n"), std::string::npos);
  std::size_t lines = 0;
  for (char ch : csv) lines += ch == '\n';
  EXPECT_EQ(lines, tr.times.size() + 1);
  const auto c = detect_limit_cycle(kVdp, kPositiveX, {2, 0});
  EXPECT_EQ(to_csv(c).rfind("t,x,y\n", 0), 0u);
}
