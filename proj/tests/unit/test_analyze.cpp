#include <gtest/gtest.h>

#include <chrono>

#include "dulac/analyze.hpp"
#include "dulac/parse.hpp"

using namespace dulac;

namespace {

VectorField field(const char* p, const char* q) { return make_field(parse_poly(p), parse_poly(q)); }

/// Certified boxes plus uncovered cells partition the region: disjoint, and
/// their areas add up.
void expect_tiling(const AnalysisReport& r) {
  Rat area = 0;
  for (const auto& b : r.global_boxes_certified) area += b.area();
  for (const auto& b : r.uncovered_regions) area += b.area();
  for (const auto& lc : r.local_certificates) {
    area += lc.box.area();
    // Puncture cells are counted once already as uncovered or Bendixson cells.
    const Rat p = lc.puncture_half_width * 2;
    area -= p * p;
  }
  EXPECT_EQ(area, r.region.area());
  std::vector<Box2> pieces = r.global_boxes_certified;
  pieces.insert(pieces.end(), r.uncovered_regions.begin(), r.uncovered_regions.end());
  for (std::size_t i = 0; i < pieces.size(); ++i) {
    EXPECT_TRUE(r.region.contains(pieces[i]));
    for (std::size_t j = i + 1; j < pieces.size(); ++j) EXPECT_FALSE(pieces[i].overlaps(pieces[j]));
  }
  for (const auto& lc : r.local_certificates) EXPECT_TRUE(r.region.contains(lc.box));
  for (const auto& c : r.global_certificates) EXPECT_TRUE(c.is_positive());
  for (const auto& lc : r.local_certificates) EXPECT_TRUE(lc.certificate.is_positive());
}

}  // namespace

TEST(Analyze, RadialSourceIsFullyCertified) {
  const auto r = run_analyze(field("x", "y"), parse_region("-2:2,-2:2"));
  ASSERT_EQ(r.equilibria.size(), 1u);
  EXPECT_EQ(r.equilibria[0].classification, Classification::Node);
  ASSERT_EQ(r.global_boxes_certified.size(), 1u);
  EXPECT_EQ(r.global_boxes_certified[0], parse_region("-2:2,-2:2"));
  EXPECT_EQ(r.global_certificates[0].carrier, Poly(2));
  EXPECT_TRUE(r.uncovered_regions.empty());
  EXPECT_TRUE(r.limit_cycles.empty());
  EXPECT_EQ(r.exit_code(), 0);
}

TEST(Analyze, RotationIsAMarginalFamily) {
  const auto r = run_analyze(field("-y", "x"), parse_region("-2:2,-2:2"));
  ASSERT_EQ(r.equilibria.size(), 1u);
  EXPECT_EQ(r.equilibria[0].classification, Classification::CenterCandidate);
  EXPECT_TRUE(r.local_certificates.empty());
  EXPECT_TRUE(r.global_boxes_certified.empty());
  ASSERT_EQ(r.limit_cycles.size(), 1u);
  EXPECT_TRUE(r.limit_cycles[0].non_isolated);
  EXPECT_EQ(r.limit_cycles[0].stability, CycleStability::Marginal);
  EXPECT_EQ(r.exit_code(), 1);
  bool noted = false;
  for (const auto& n : r.notes) noted = noted || n.find("non-isolated") != std::string::npos;
  EXPECT_TRUE(noted);
  expect_tiling(r);
}

TEST(Analyze, VanDerPolPortrait) {
  const auto t0 = std::chrono::steady_clock::now();
  const auto r = run_analyze(field("y", "-x + (1 - x^2)*y"), parse_region("-4:4,-4:4"));
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  EXPECT_LT(secs, 60.0);
  ASSERT_EQ(r.equilibria.size(), 1u);
  EXPECT_EQ(r.equilibria[0].classification, Classification::Focus);
  ASSERT_EQ(r.local_certificates.size(), 1u);
  EXPECT_TRUE(r.local_certificates[0].box.contains(Point{0, 0}));
  EXPECT_FALSE(r.global_boxes_certified.empty());
  for (const auto& b : r.global_boxes_certified) {
    EXPECT_GE(b.x_min, Rat(-1));
    EXPECT_LE(b.x_max, Rat(1));
  }
  EXPECT_FALSE(r.uncovered_regions.empty());
  ASSERT_EQ(r.limit_cycles.size(), 1u);
  const auto& c = r.limit_cycles[0];
  EXPECT_EQ(c.stability, CycleStability::Stable);
  EXPECT_NEAR(c.amplitude_x, 2.0086, 1e-3);
  EXPECT_NEAR(c.period, 6.6633, 1e-3);
  EXPECT_EQ(r.exit_code(), 1);
  for (const auto& n : r.notes) EXPECT_EQ(n.find("inconsistency"), std::string::npos) << n;
  expect_tiling(r);
}

TEST(Analyze, SaddleHasNoLocalMultiplierButTilesCleanly) {
  const auto r = run_analyze(field("x", "-y"), parse_region("-2:2,-2:2"));
  ASSERT_EQ(r.equilibria.size(), 1u);
  EXPECT_EQ(r.equilibria[0].classification, Classification::Saddle);
  // Zero trace: the linear multiplier does not exist.
  EXPECT_TRUE(r.local_certificates.empty());
  EXPECT_TRUE(r.limit_cycles.empty());
  EXPECT_EQ(r.exit_code(), 2);
  expect_tiling(r);
}

TEST(Analyze, DeterministicAcrossSchedules) {
  AnalysisConfig seq;
  seq.parallel = false;
  seq.tiles = 8;
  AnalysisConfig par = seq;
  par.parallel = true;
  const VectorField X = field("y", "-x + (1 - x^2)*y");
  const auto a = run_analyze(X, parse_region("-3:3,-3:3"), seq);
  const auto b = run_analyze(X, parse_region("-3:3,-3:3"), par);
  EXPECT_EQ(a.global_boxes_certified, b.global_boxes_certified);
  EXPECT_EQ(a.uncovered_regions, b.uncovered_regions);
  EXPECT_EQ(a.notes, b.notes);
  ASSERT_EQ(a.limit_cycles.size(), b.limit_cycles.size());
}
