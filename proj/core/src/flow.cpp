#include "dulac/flow.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "dulac/error.hpp"
#include "dulac/ode.hpp"

namespace dulac {

NumericField::NumericField(const VectorField& X)
    : p_(X.p),
      q_(X.q),
      px_(derive(X.p, Axis::X)),
      py_(derive(X.p, Axis::Y)),
      qx_(derive(X.q, Axis::X)),
      qy_(derive(X.q, Axis::Y)) {}

std::array<double, 4> NumericField::jacobian(Point z) const {
  return {px_(z.x, z.y), py_(z.x, z.y), qx_(z.x, z.y), qy_(z.x, z.y)};
}

const char* to_string(Classification c) {
  switch (c) {
    case Classification::Node: return "Node";
    case Classification::Saddle: return "Saddle";
    case Classification::Focus: return "Focus";
    case Classification::CenterCandidate: return "CenterCandidate";
    case Classification::Degenerate: return "Degenerate";
  }
  return "?";
}

const char* to_string(Stability s) {
  switch (s) {
    case Stability::Attracting: return "attracting";
    case Stability::Repelling: return "repelling";
    case Stability::Mixed: return "mixed";
    case Stability::Neutral: return "neutral";
  }
  return "?";
}

const char* to_string(TrajectoryStatus s) {
  switch (s) {
    case TrajectoryStatus::Completed: return "Completed";
    case TrajectoryStatus::LeftDomain: return "LeftDomain";
    case TrajectoryStatus::StepFailure: return "StepFailure";
  }
  return "?";
}

const char* to_string(CycleStability s) {
  switch (s) {
    case CycleStability::Stable: return "Stable";
    case CycleStability::Unstable: return "Unstable";
    case CycleStability::Marginal: return "Marginal";
  }
  return "?";
}

namespace {

EquilibriumReport classify_jacobian(Point z, const std::array<double, 4>& J) {
  EquilibriumReport r;
  r.location = z;
  r.jacobian = J;
  const double tr = J[0] + J[3];
  const double det = J[0] * J[3] - J[1] * J[2];
  const double disc = tr * tr - 4.0 * det;
  if (disc >= 0.0) {
    const double sq = std::sqrt(disc);
    // Avoid cancellation: the larger-magnitude root first, the other from det.
    const double big = tr >= 0 ? (tr + sq) / 2.0 : (tr - sq) / 2.0;
    const double small = big != 0.0 ? det / big : 0.0;
    r.eigenvalues = {std::complex<double>(std::max(big, small)), std::complex<double>(std::min(big, small))};
  } else {
    const double im = std::sqrt(-disc) / 2.0;
    r.eigenvalues = {std::complex<double>(tr / 2.0, im), std::complex<double>(tr / 2.0, -im)};
  }
  const double mag = std::max(std::abs(r.eigenvalues[0]), std::abs(r.eigenvalues[1]));
  const double thr = kZeroRealPartThreshold * mag;
  const double re0 = r.eigenvalues[0].real(), re1 = r.eigenvalues[1].real();
  r.hyperbolic = mag > 0.0 && std::abs(re0) > thr && std::abs(re1) > thr;

  const bool complex_pair = disc < 0.0;
  if (mag == 0.0 || std::min(std::abs(r.eigenvalues[0]), std::abs(r.eigenvalues[1])) <= thr)
    r.classification = Classification::Degenerate;
  else if (complex_pair)
    r.classification = std::abs(re0) <= thr ? Classification::CenterCandidate : Classification::Focus;
  else
    r.classification = (re0 > 0) == (re1 > 0) ? Classification::Node : Classification::Saddle;

  if (re0 < -thr && re1 < -thr)
    r.stability = Stability::Attracting;
  else if (re0 > thr && re1 > thr)
    r.stability = Stability::Repelling;
  else if ((re0 > thr && re1 < -thr) || (re0 < -thr && re1 > thr))
    r.stability = Stability::Mixed;
  else
    r.stability = Stability::Neutral;
  return r;
}

void check_tolerance(double tol) {
  if (!(tol >= 1e-13 && tol <= 1e-3)) throw Error(ErrorKind::InvalidTolerance, "tolerance must lie in [1e-13, 1e-3]");
}

struct Domain {
  double x0, x1, y0, y1;
  explicit Domain(const Box2& b) : x0(b.x_min.get_d()), x1(b.x_max.get_d()), y0(b.y_min.get_d()), y1(b.y_max.get_d()) {}
  bool inside(double x, double y) const { return x >= x0 && x <= x1 && y >= y0 && y <= y1; }
};

}  // namespace

EquilibriumReport classify_equilibrium(const VectorField& X, Point z) {
  const NumericField F(X);
  const Point v = F(z);
  if (std::hypot(v.x, v.y) > 1e-8) throw Error(ErrorKind::NotAnEquilibrium, "|X(z)| exceeds 1e-8");
  return classify_jacobian(z, F.jacobian(z));
}

std::vector<EquilibriumReport> find_equilibria(const VectorField& X, const Box2& box, int grid_n, double tol) {
  if (grid_n < 2) throw Error(ErrorKind::InvalidArgument, "grid_n must be >= 2");
  const NumericField F(X);
  const Domain dom(box);
  const double margin = 1e-9 * std::max({1.0, std::abs(dom.x0), std::abs(dom.x1), std::abs(dom.y0), std::abs(dom.y1)});
  std::vector<Point> found;
  for (int a = 0; a < grid_n; ++a) {
    for (int b = 0; b < grid_n; ++b) {
      double x = dom.x0 + (dom.x1 - dom.x0) * a / (grid_n - 1);
      double y = dom.y0 + (dom.y1 - dom.y0) * b / (grid_n - 1);
      bool converged = false;
      for (int it = 0; it < 60; ++it) {
        const Point v = F({x, y});
        const double res = std::hypot(v.x, v.y);
        if (!std::isfinite(res)) break;
        if (res <= tol) {
          converged = true;
          // A few polishing steps once inside the tolerance.
          if (res == 0.0 || it > 55) break;
        }
        const auto J = F.jacobian({x, y});
        const double det = J[0] * J[3] - J[1] * J[2];
        if (det == 0.0 || !std::isfinite(det)) break;
        const double dx = (J[3] * v.x - J[1] * v.y) / det;
        const double dy = (J[0] * v.y - J[2] * v.x) / det;
        x -= dx;
        y -= dy;
        if (converged && std::hypot(dx, dy) <= 1e-15 * std::max(1.0, std::hypot(x, y))) break;
      }
      const Point v = F({x, y});
      converged = std::hypot(v.x, v.y) <= tol;
      if (!converged) continue;
      if (x < dom.x0 - margin || x > dom.x1 + margin || y < dom.y0 - margin || y > dom.y1 + margin) continue;
      bool duplicate = false;
      for (const auto& p : found) duplicate = duplicate || std::hypot(p.x - x, p.y - y) < 1e-6;
      if (!duplicate) found.push_back({x, y});
    }
  }
  std::sort(found.begin(), found.end(), [](Point a, Point b) { return a.x != b.x ? a.x < b.x : a.y < b.y; });
  std::vector<EquilibriumReport> out;
  for (const auto& p : found) out.push_back(classify_jacobian(p, F.jacobian(p)));
  return out;
}

Box2 default_domain() { return Box2::make(Rat(-1000000), Rat(1000000), Rat(-1000000), Rat(1000000)); }

Trajectory integrate(const VectorField& X, Point z0, double t_span, double tol, const Box2& domain) {
  check_tolerance(tol);
  const NumericField F(X);
  const Domain dom(domain);
  Trajectory tr;
  tr.tolerance = tol;
  tr.times.push_back(0.0);
  tr.states.push_back(z0);
  if (!dom.inside(z0.x, z0.y)) {
    tr.status = TrajectoryStatus::LeftDomain;
    return tr;
  }
  if (t_span == 0.0) return tr;
  auto rhs = [&F](const State<2>& s) {
    const Point v = F({s[0], s[1]});
    return State<2>{v.x, v.y};
  };
  DormandPrince<2, decltype(rhs)> ode(rhs, {z0.x, z0.y}, 0.0, t_span, tol, tol);
  while (ode.t() != t_span) {
    if (!ode.step(t_span)) {
      tr.status = TrajectoryStatus::StepFailure;
      return tr;
    }
    const State<2>& y = ode.y();
    if (!dom.inside(y[0], y[1])) {
      double lo = ode.t_prev(), hi = ode.t();
      for (int it = 0; it < 100; ++it) {
        const double mid = 0.5 * (lo + hi);
        const State<2> s = ode.dense(mid);
        (dom.inside(s[0], s[1]) ? lo : hi) = mid;
      }
      const State<2> s = ode.dense(lo);
      tr.times.push_back(lo);
      tr.states.push_back({s[0], s[1]});
      tr.status = TrajectoryStatus::LeftDomain;
      return tr;
    }
    tr.times.push_back(ode.t());
    tr.states.push_back({y[0], y[1]});
  }
  return tr;
}

Section Section::make(Point anchor, Point normal, Crossing direction, bool half_line) {
  const double n = std::hypot(normal.x, normal.y);
  if (!(n > 0.0) || !std::isfinite(n)) throw Error(ErrorKind::InvalidArgument, "section normal must be nonzero");
  return Section{anchor, {normal.x / n, normal.y / n}, direction, half_line};
}

ReturnPoint poincare_return(const VectorField& X, const Section& section, Point z0, double max_time,
                            const FlowOptions& options) {
  check_tolerance(options.tol);
  if (std::abs(section.signed_distance(z0)) > 1e-9) throw Error(ErrorKind::InvalidArgument, "seed is not on the section");
  const NumericField F(X);
  const Domain dom(options.domain.value_or(default_domain()));
  auto rhs = [&F](const State<2>& s) {
    const Point v = F({s[0], s[1]});
    return State<2>{v.x, v.y};
  };
  DormandPrince<2, decltype(rhs)> ode(rhs, {z0.x, z0.y}, 0.0, 1.0, options.tol, options.tol);
  double s_prev = 0.0;
  while (ode.t() < max_time) {
    if (!ode.step(max_time)) break;
    const State<2>& y = ode.y();
    if (!dom.inside(y[0], y[1])) break;
    const double s_new = section.signed_distance({y[0], y[1]});
    const bool up = s_prev < 0.0 && s_new >= 0.0;
    const bool down = s_prev > 0.0 && s_new <= 0.0;
    const bool wanted = (section.direction == Crossing::Positive && up) ||
                        (section.direction == Crossing::Negative && down) ||
                        (section.direction == Crossing::Both && (up || down));
    if (wanted) {
      double lo = ode.t_prev(), hi = ode.t();
      double s_lo = s_prev;
      double t_hit = hi;
      State<2> hit = y;
      for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        const State<2> st = ode.dense(mid);
        const double sm = section.signed_distance({st[0], st[1]});
        t_hit = mid;
        hit = st;
        if (std::abs(sm) <= 1e-12 || hi - lo <= 1e-15 * std::max(1.0, hi)) break;
        if ((sm < 0.0) == (s_lo < 0.0)) {
          lo = mid;
          s_lo = sm;
        } else {
          hi = mid;
        }
      }
      const Point p{hit[0], hit[1]};
      if (!section.half_line || section.coordinate(p) >= 0.0) return {p, t_hit};
    }
    s_prev = s_new;
  }
  throw Error(ErrorKind::NoReturn, "no return to the section within the time limit");
}

LimitCycleReport detect_limit_cycle(const VectorField& X, const Section& section, Point seed, int max_iters,
                                    const LimitCycleOptions& options) {
  if (std::abs(section.signed_distance(seed)) > 1e-9) throw Error(ErrorKind::InvalidArgument, "seed is not on the section");
  const FlowOptions flow{options.tol, options.domain};
  auto ret = [&](double tau) -> std::optional<ReturnPoint> {
    if (section.half_line && tau < 0.0) return std::nullopt;
    try {
      return poincare_return(X, section, section.at(tau), options.max_time, flow);
    } catch (const Error& e) {
      if (e.kind() == ErrorKind::NoReturn) return std::nullopt;
      throw;
    }
  };
  constexpr double eps = 1e-9;

  double tau = section.coordinate(seed);
  auto r = ret(tau);
  if (!r) throw Error(ErrorKind::NotFound, "seed does not return to the section");
  double f = section.coordinate(r->point) - tau;
  bool have_prev = false;
  double prev_tau = 0.0, prev_f = 0.0;
  // Secant step when it is trusted, else plain iteration; a step whose orbit
  // does not return is halved toward tau.
  auto advance = [&](double guard) {
    double next = tau + f;
    if (have_prev && f != prev_f) {
      const double secant = tau - f * (tau - prev_tau) / (f - prev_f);
      if (std::isfinite(secant) && std::abs(secant - tau) <= guard * std::abs(f)) next = secant;
    }
    std::optional<ReturnPoint> rn;
    for (int damp = 0; damp < 40 && !rn; ++damp) {
      rn = ret(next);
      if (!rn) next = tau + 0.5 * (next - tau);
    }
    if (!rn) return false;
    prev_tau = tau;
    prev_f = f;
    have_prev = true;
    tau = next;
    r = rn;
    f = section.coordinate(r->point) - tau;
    return true;
  };

  int iterations = 1;
  while (std::abs(f) > eps) {
    if (iterations >= max_iters) throw Error(ErrorKind::NotFound, "return map did not converge");
    if (!advance(100.0)) throw Error(ErrorKind::NotFound, "return map left its domain");
    ++iterations;
  }
  // Best-effort polishing beyond the convergence threshold so the loop closes tightly.
  for (int extra = 0; extra < 4 && std::abs(f) > 1e-12; ++extra) {
    const double saved_tau = tau, saved_f = f, saved_prev_tau = prev_tau, saved_prev_f = prev_f;
    const auto saved_r = r;
    if (!advance(100.0) || !(std::abs(f) < std::abs(saved_f))) {
      tau = saved_tau;
      f = saved_f;
      prev_tau = saved_prev_tau;
      prev_f = saved_prev_f;
      r = saved_r;
      break;
    }
  }

  LimitCycleReport out;
  out.iterations = iterations;
  out.section_point = section.at(tau);
  out.period = r->time;

  // One loop with dense sub-sampling.
  const NumericField F(X);
  auto rhs = [&F](const State<2>& s) {
    const Point v = F({s[0], s[1]});
    return State<2>{v.x, v.y};
  };
  DormandPrince<2, decltype(rhs)> ode(rhs, {out.section_point.x, out.section_point.y}, 0.0, 1.0, options.tol, options.tol);
  out.times.push_back(0.0);
  out.points.push_back(out.section_point);
  while (ode.t() < out.period) {
    if (!ode.step(out.period)) break;
    for (int q = 1; q <= 4; ++q) {
      const double tq = ode.t_prev() + (ode.t() - ode.t_prev()) * q / 4.0;
      const State<2> s = q == 4 ? ode.y() : ode.dense(tq);
      out.times.push_back(q == 4 ? ode.t() : tq);
      out.points.push_back({s[0], s[1]});
    }
  }
  for (const auto& p : out.points) out.amplitude_x = std::max(out.amplitude_x, std::abs(p.x));

  double delta = 1e-4 * std::max(1.0, std::abs(tau));
  auto plus = ret(tau + delta);
  auto minus = ret(tau - delta);
  while ((!plus || !minus) && delta > 1e-9) {
    delta *= 0.5;
    plus = ret(tau + delta);
    minus = ret(tau - delta);
  }
  if (plus && minus) {
    const double rp = section.coordinate(plus->point), rm = section.coordinate(minus->point);
    out.return_map_slope = (rp - rm) / (2.0 * delta);
    out.non_isolated = std::abs(rp - (tau + delta)) <= 1e-8 && std::abs(rm - (tau - delta)) <= 1e-8;
  } else {
    out.return_map_slope = std::nan("");
  }
  const double a = std::abs(out.return_map_slope);
  if (!std::isfinite(a))
    out.stability = CycleStability::Marginal;
  else if (a < 1.0 - 1e-3)
    out.stability = CycleStability::Stable;
  else if (a > 1.0 + 1e-3)
    out.stability = CycleStability::Unstable;
  else
    out.stability = CycleStability::Marginal;
  if (out.stability != CycleStability::Marginal) out.non_isolated = false;
  return out;
}

namespace {

std::string csv_rows(const std::vector<double>& t, const std::vector<Point>& z) {
  std::string out = "t,x,y\n";
  char buf[96];
  for (std::size_t i = 0; i < t.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g\n", t[i], z[i].x, z[i].y);
    out += buf;
  }
  return out;
}

}  // namespace

std::string to_csv(const Trajectory& trajectory) { return csv_rows(trajectory.times, trajectory.states); }
std::string to_csv(const LimitCycleReport& cycle) { return csv_rows(cycle.times, cycle.points); }

}  // namespace dulac
