#pragma once

#include <array>
#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "dulac/box.hpp"
#include "dulac/vector_field.hpp"

namespace dulac {

/// P, Q and their partials compiled to doubles.
class NumericField {
 public:
  explicit NumericField(const VectorField& X);

  Point operator()(Point z) const { return {p_(z.x, z.y), q_(z.x, z.y)}; }
  /// Row-major [[Px, Py], [Qx, Qy]].
  std::array<double, 4> jacobian(Point z) const;
  double divergence(Point z) const { return px_(z.x, z.y) + qy_(z.x, z.y); }

 private:
  NumericPoly p_, q_, px_, py_, qx_, qy_;
};

/// |Re lambda| at or below this fraction of the eigenvalue magnitude counts
/// as zero.
inline constexpr double kZeroRealPartThreshold = 1e-9;

enum class Classification { Node, Saddle, Focus, CenterCandidate, Degenerate };
enum class Stability { Attracting, Repelling, Mixed, Neutral };

const char* to_string(Classification c);
const char* to_string(Stability s);

struct EquilibriumReport {
  Point location;
  std::array<double, 4> jacobian{};
  std::array<std::complex<double>, 2> eigenvalues{};
  Classification classification = Classification::Degenerate;
  Stability stability = Stability::Neutral;
  bool hyperbolic = false;
};

/// Throws NotAnEquilibrium when |X(z)| > 1e-8. Never reports a center: a
/// purely imaginary pair is only a CenterCandidate.
EquilibriumReport classify_equilibrium(const VectorField& X, Point z);

/// Newton from a grid_n x grid_n seed grid over the box; converged points
/// (|X| <= tol) inside the box, deduplicated within 1e-6 and sorted by (x, y).
std::vector<EquilibriumReport> find_equilibria(const VectorField& X, const Box2& box, int grid_n = 32,
                                               double tol = 1e-10);

enum class TrajectoryStatus { Completed, LeftDomain, StepFailure };

const char* to_string(TrajectoryStatus s);

struct Trajectory {
  std::vector<double> times;
  std::vector<Point> states;
  double tolerance = 0.0;
  TrajectoryStatus status = TrajectoryStatus::Completed;
};

/// Adaptive Dormand-Prince 5(4) from z0 over [0, t_span] (backward when
/// t_span < 0). Stops at the first exit from `domain`, located on the
/// boundary. Throws InvalidTolerance unless tol is in [1e-13, 1e-3].
Trajectory integrate(const VectorField& X, Point z0, double t_span, double tol, const Box2& domain);

/// Domain used when none is given: |x|, |y| <= 1e6.
Box2 default_domain();

enum class Crossing { Positive, Negative, Both };

/// Line through `anchor` with unit `normal`; with half_line only the ray in
/// the direction of tangent() (the normal turned by -90 degrees) counts.
struct Section {
  Point anchor;
  Point normal{0.0, 1.0};
  Crossing direction = Crossing::Both;
  bool half_line = true;

  /// Normalizes the normal; throws InvalidArgument for a zero vector.
  static Section make(Point anchor, Point normal, Crossing direction = Crossing::Both, bool half_line = true);

  Point tangent() const { return {normal.y, -normal.x}; }
  double signed_distance(Point z) const { return (z.x - anchor.x) * normal.x + (z.y - anchor.y) * normal.y; }
  double coordinate(Point z) const {
    const Point t = tangent();
    return (z.x - anchor.x) * t.x + (z.y - anchor.y) * t.y;
  }
  Point at(double tau) const {
    const Point t = tangent();
    return {anchor.x + tau * t.x, anchor.y + tau * t.y};
  }
};

struct FlowOptions {
  double tol = 1e-10;
  std::optional<Box2> domain;
};

struct ReturnPoint {
  Point point;
  double time = 0.0;
};

/// First crossing of the section in its direction after leaving z0, located
/// on the dense output to |distance| <= 1e-10. Throws InvalidArgument when z0
/// is off the section by more than 1e-9, NoReturn when there is none within
/// max_time (or the orbit leaves the domain).
ReturnPoint poincare_return(const VectorField& X, const Section& section, Point z0, double max_time,
                            const FlowOptions& options = {});

enum class CycleStability { Stable, Unstable, Marginal };

const char* to_string(CycleStability s);

struct LimitCycleReport {
  double period = 0.0;
  std::vector<double> times;
  std::vector<Point> points;
  double amplitude_x = 0.0;
  double return_map_slope = 0.0;
  CycleStability stability = CycleStability::Marginal;
  /// Nearby seeds are periodic too (a family, not a limit cycle).
  bool non_isolated = false;
  Point section_point;
  int iterations = 0;
};

struct LimitCycleOptions {
  double tol = 1e-10;
  double max_time = 100.0;
  std::optional<Box2> domain;
};

/// Fixed point of the return map with secant acceleration; converged when
/// successive crossings differ by <= 1e-9. The slope is a central divided
/// difference of the return map. Throws NotFound.
LimitCycleReport detect_limit_cycle(const VectorField& X, const Section& section, Point seed, int max_iters = 50,
                                    const LimitCycleOptions& options = {});

/// "t,x,y" header, 17 significant digits.
std::string to_csv(const Trajectory& trajectory);
std::string to_csv(const LimitCycleReport& cycle);

}  // namespace dulac
