#include "dulac/analyze.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <future>
#include <optional>
#include <thread>

#include "dulac/error.hpp"

namespace dulac {

int AnalysisReport::exit_code() const {
  if (uncovered_regions.empty()) return 0;
  return limit_cycles.empty() ? 2 : 1;
}

namespace {

std::string fmt(double v) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

std::string point_text(Point z) { return "(" + fmt(z.x) + ", " + fmt(z.y) + ")"; }

/// Runs f(i) for i in [0, n), concurrently when asked; results keep index order.
template <class T, class F>
std::vector<T> map_indices(std::size_t n, bool parallel, F f) {
  std::vector<T> out(n);
  if (!parallel || n < 2) {
    for (std::size_t i = 0; i < n; ++i) out[i] = f(i);
    return out;
  }
  const std::size_t workers = std::max<std::size_t>(1, std::min<std::size_t>(n, std::thread::hardware_concurrency()));
  std::vector<std::future<void>> jobs;
  for (std::size_t w = 0; w < workers; ++w)
    jobs.push_back(std::async(std::launch::async, [&, w] {
      for (std::size_t i = w; i < n; i += workers) out[i] = f(i);
    }));
  for (auto& j : jobs) j.get();
  return out;
}

/// Rounds to the dyadic grid 2^-32 when the residual stays below tol, which
/// keeps box corners short.
Point snap_equilibrium(const NumericField& F, Point z, double tol) {
  const double s = 4294967296.0;
  const Point r{std::round(z.x * s) / s, std::round(z.y * s) / s};
  const Point v = F(r);
  return std::hypot(v.x, v.y) <= tol ? r : z;
}

/// Rings from just outside the puncture up to half-width w.
Certificate certify_punctured(const Poly& carrier, const Rat& cx, const Rat& cy, const Rat& puncture, const Rat& w,
                              int depth) {
  std::vector<Certificate> rings;
  for (Rat r = puncture * 2; r <= w; r *= 2) {
    rings.push_back(certify_ring(carrier, cx, cy, r, depth));
    if (!rings.back().is_positive()) break;
  }
  return merge_certificates(carrier, Box2::centered(cx, cy, w), rings);
}

double segment_distance(Point p, Point a, Point b) {
  const double vx = b.x - a.x, vy = b.y - a.y;
  const double len2 = vx * vx + vy * vy;
  double t = len2 > 0.0 ? ((p.x - a.x) * vx + (p.y - a.y) * vy) / len2 : 0.0;
  t = std::clamp(t, 0.0, 1.0);
  return std::hypot(p.x - (a.x + t * vx), p.y - (a.y + t * vy));
}

bool same_cycle(const LimitCycleReport& a, const LimitCycleReport& b) {
  const double scale = std::max(1.0, std::max(a.amplitude_x, b.amplitude_x));
  if (std::abs(a.period - b.period) > 1e-3 * std::max(1.0, a.period)) return false;
  double best = INFINITY;
  for (std::size_t i = 1; i < b.points.size(); ++i)
    best = std::min(best, segment_distance(a.section_point, b.points[i - 1], b.points[i]));
  return best <= 1e-3 * scale;
}

bool inside_open(const Box2& box, const LimitCycleReport& c) {
  return !c.points.empty() &&
         std::all_of(c.points.begin(), c.points.end(), [&](Point z) { return box.contains_open(z); });
}

std::vector<Rat> grid_lines(const Rat& lo, const Rat& hi, int tiles, const std::vector<Rat>& extra) {
  std::vector<Rat> lines;
  for (int i = 0; i <= tiles; ++i) lines.push_back(Rat(lo + (hi - lo) * Rat(i) / tiles));
  for (const auto& e : extra)
    if (e > lo && e < hi) lines.push_back(e);
  std::sort(lines.begin(), lines.end());
  lines.erase(std::unique(lines.begin(), lines.end()), lines.end());
  return lines;
}

}  // namespace

AnalysisReport run_analyze(const VectorField& X, const Box2& region, const AnalysisConfig& cfg) {
  if (cfg.tiles < 1) throw Error(ErrorKind::InvalidArgument, "tiles must be >= 1");
  AnalysisReport rep;
  rep.system = X;
  rep.region = region;
  const NumericField F(X);

  // Step 1: equilibria.
  rep.equilibria = find_equilibria(X, region, cfg.grid_n, cfg.tol);
  rep.notes.push_back(std::to_string(rep.equilibria.size()) + " equilibria found in the region");

  // Step 2: local multipliers, grown by doubling.
  for (const auto& eq : rep.equilibria) {
    if (!eq.hyperbolic) {
      rep.notes.push_back(std::string("non-hyperbolic equilibrium at ") + point_text(eq.location) + " (" +
                          to_string(eq.classification) + ") skipped; no local multiplier is known");
      continue;
    }
    const Point z = snap_equilibrium(F, eq.location, cfg.tol);
    LocalDulac local;
    try {
      local = local_dulac_hyperbolic(X, z, cfg.min_radius, cfg.max_depth);
    } catch (const Error& e) {
      rep.notes.push_back("local multiplier at " + point_text(z) + " failed: " + e.what());
      continue;
    }
    const Rat cx = rat_from_double(z.x), cy = rat_from_double(z.y);
    const Poly carrier = local.certificate.carrier;
    Rat w = local.box.width() / 2;
    Certificate cert = local.certificate;
    for (int grow = 0; grow < 64; ++grow) {
      const Rat w2 = w * 2;
      const Box2 bigger = Box2::centered(cx, cy, w2);
      if (!region.contains(bigger)) break;
      Certificate ring = certify_ring(carrier, cx, cy, w2, cfg.max_depth);
      if (!ring.is_positive()) break;
      const std::array<Certificate, 2> parts{cert, ring};
      cert = merge_certificates(carrier, bigger, parts);
      w = w2;
    }
    auto fits = [&](const Rat& half) {
      const Box2 b = Box2::centered(cx, cy, half);
      if (!region.contains(b)) return false;
      return std::none_of(rep.local_certificates.begin(), rep.local_certificates.end(),
                          [&](const LocalCertificate& o) { return o.box.overlaps(b); });
    };
    const Rat w_before = w;
    while (!fits(w) && w > local.puncture_half_width * 2) w /= 2;
    if (!fits(w)) {
      rep.notes.push_back("local box at " + point_text(z) + " does not fit in the region; dropped");
      continue;
    }
    if (w != w_before) cert = certify_punctured(carrier, cx, cy, local.puncture_half_width, w, cfg.max_depth);
    rep.local_certificates.push_back(
        {eq, local.multiplier, Box2::centered(cx, cy, w), local.puncture_half_width, std::move(cert)});
    rep.notes.push_back("local multiplier " + to_string(local.multiplier) + " certified on " + to_string(Box2::centered(cx, cy, w)) +
                        " outside the puncture of half-width " + to_string(local.puncture_half_width));
  }

  const char* growth_note = "box growth stops at the first failed doubling or at the region boundary; maximality is not proven";

  // Step 3: Bendixson on the whole region, else on a tiling.
  DulacCertificate whole = bendixson(X, region, cfg.max_depth);
  if (whole.certificate.is_positive()) {
    rep.global_boxes_certified.push_back(region);
    rep.global_certificates.push_back(whole.certificate);
    rep.notes.push_back("Bendixson certifies the whole region with carrier " + to_string(whole.certificate.carrier));
    rep.notes.push_back(growth_note);
    return rep;
  }

  std::vector<Rat> ex, ey;
  for (const auto& lc : rep.local_certificates) {
    const Rat cx = (lc.box.x_min + lc.box.x_max) / 2, cy = (lc.box.y_min + lc.box.y_max) / 2;
    for (const Rat& v : {lc.box.x_min, lc.box.x_max, Rat(cx - lc.puncture_half_width), Rat(cx + lc.puncture_half_width)})
      ex.push_back(v);
    for (const Rat& v : {lc.box.y_min, lc.box.y_max, Rat(cy - lc.puncture_half_width), Rat(cy + lc.puncture_half_width)})
      ey.push_back(v);
  }
  const auto xs = grid_lines(region.x_min, region.x_max, cfg.tiles, ex);
  const auto ys = grid_lines(region.y_min, region.y_max, cfg.tiles, ey);

  std::vector<Box2> cells;
  for (std::size_t i = 0; i + 1 < xs.size(); ++i)
    for (std::size_t j = 0; j + 1 < ys.size(); ++j) cells.push_back(Box2::make(xs[i], xs[i + 1], ys[j], ys[j + 1]));

  auto locally_covered = [&](const Box2& c) {
    for (const auto& lc : rep.local_certificates) {
      if (!lc.box.contains(c)) continue;
      const Rat cx = (lc.box.x_min + lc.box.x_max) / 2, cy = (lc.box.y_min + lc.box.y_max) / 2;
      if (!Box2::centered(cx, cy, lc.puncture_half_width).overlaps(c)) return true;
    }
    return false;
  };

  // 0: local, 1: Bendixson, 2: uncovered.
  struct CellResult {
    int kind = 2;
    std::optional<Certificate> cert;
  };
  const auto results = map_indices<CellResult>(cells.size(), cfg.parallel, [&](std::size_t i) {
    if (locally_covered(cells[i])) return CellResult{0, std::nullopt};
    Certificate c = bendixson(X, cells[i], cfg.max_depth).certificate;
    if (c.is_positive()) return CellResult{1, std::move(c)};
    return CellResult{2, std::nullopt};
  });
  std::size_t n_local = 0;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (results[i].kind == 0) {
      ++n_local;
    } else if (results[i].kind == 1) {
      rep.global_boxes_certified.push_back(cells[i]);
      rep.global_certificates.push_back(*results[i].cert);
    } else {
      rep.uncovered_regions.push_back(cells[i]);
    }
  }
  rep.notes.push_back(std::to_string(cells.size()) + " tiles: " + std::to_string(n_local) + " inside local boxes, " +
                      std::to_string(rep.global_boxes_certified.size()) + " certified by Bendixson, " +
                      std::to_string(rep.uncovered_regions.size()) + " uncovered");
  rep.notes.push_back(growth_note);

  // Limit-cycle scan from the centers of uncovered tiles.
  const LimitCycleOptions lco{cfg.tol, cfg.max_time, std::nullopt};
  const auto scans = map_indices<std::optional<LimitCycleReport>>(rep.uncovered_regions.size(), cfg.parallel, [&](std::size_t i) {
    const Box2& c = rep.uncovered_regions[i];
    const Point seed{Rat((c.x_min + c.x_max) / 2).get_d(), Rat((c.y_min + c.y_max) / 2).get_d()};
    const Point v = F(seed);
    if (std::hypot(v.x, v.y) < 1e-8) return std::optional<LimitCycleReport>{};
    try {
      const Section s = Section::make(seed, v, Crossing::Positive, false);
      return std::optional<LimitCycleReport>(detect_limit_cycle(X, s, seed, cfg.max_iters, lco));
    } catch (const Error&) {
      return std::optional<LimitCycleReport>{};
    }
  });
  std::size_t family_hits = 0;
  std::optional<LimitCycleReport> family;
  for (const auto& s : scans) {
    if (!s) continue;
    if (s->non_isolated) {
      ++family_hits;
      if (!family) family = s;
      continue;
    }
    if (std::none_of(rep.limit_cycles.begin(), rep.limit_cycles.end(), [&](const auto& c) { return same_cycle(*s, c); }))
      rep.limit_cycles.push_back(*s);
  }
  for (const auto& c : rep.limit_cycles)
    rep.notes.push_back(std::string("limit cycle: ") + to_string(c.stability) + ", period " + fmt(c.period) +
                        ", amplitude_x " + fmt(c.amplitude_x));
  if (family) {
    rep.notes.push_back("non-isolated periodic family: " + std::to_string(family_hits) +
                        " seeds are periodic with return-map slope " + fmt(family->return_map_slope) +
                        "; these are not limit cycles");
    rep.limit_cycles.push_back(*family);
  }
  for (const auto& c : rep.limit_cycles) {
    for (const auto& b : rep.global_boxes_certified)
      if (inside_open(b, c)) rep.notes.push_back("inconsistency: a periodic orbit lies inside certified box " + to_string(b));
    for (const auto& lc : rep.local_certificates)
      if (inside_open(lc.box, c)) rep.notes.push_back("periodic orbit inside local box " + to_string(lc.box) + " surrounds its puncture");
  }
  rep.notes.push_back("each certificate excludes periodic orbits fully contained in its own box; orbits crossing several boxes or surrounding an uncovered tile are not excluded");
  return rep;
}

}  // namespace dulac
