#pragma once

#include <string>
#include <vector>

#include "dulac/certify.hpp"
#include "dulac/flow.hpp"
#include "dulac/synthesis.hpp"

namespace dulac {

struct AnalysisConfig {
  int grid_n = 32;
  double tol = 1e-10;
  double min_radius = 1e-3;
  int max_depth = kDefaultMaxDepth;
  /// Tiles per axis for the Bendixson pass.
  int tiles = 16;
  int max_iters = 50;
  double max_time = 100.0;
  bool parallel = true;
};

struct LocalCertificate {
  EquilibriumReport equilibrium;
  Multiplier multiplier;
  Box2 box;
  Rat puncture_half_width;
  Certificate certificate;
};

struct AnalysisReport {
  VectorField system;
  Box2 region;
  std::vector<EquilibriumReport> equilibria;
  std::vector<LocalCertificate> local_certificates;
  /// Boxes certified with B = 1, each paired with its certificate.
  std::vector<Box2> global_boxes_certified;
  std::vector<Certificate> global_certificates;
  std::vector<Box2> uncovered_regions;
  std::vector<LimitCycleReport> limit_cycles;
  std::vector<std::string> notes;

  /// 0 fully certified, 1 cycle detected, 2 coverage incomplete.
  int exit_code() const;
};

/// Best-effort phase-portrait pipeline: equilibria, local Dulac boxes grown
/// by doubling, Bendixson on the rest of a rectilinear tiling, and limit
/// cycle scans from the centers of the tiles left uncovered. Never claims
/// completeness.
AnalysisReport run_analyze(const VectorField& system, const Box2& region, const AnalysisConfig& config = {});

}  // namespace dulac
