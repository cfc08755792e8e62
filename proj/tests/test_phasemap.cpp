#include <gtest/gtest.h>

#include <cmath>

#include "lambdadicke/errors.hpp"
#include "lambdadicke/landscape.hpp"
#include "lambdadicke/phasemap.hpp"
#include "support.hpp"

using namespace ldk;
using testing_support::tilted_g1_trk;
using testing_support::tilted_g2_trk;
using testing_support::tilted_params;
using testing_support::sweep_params;

TEST(BoundaryBisect, DecoupledDickeBoundary) {
  ModelParams p;
  p.delta = 0.2;
  p.big_delta = 1.0;
  p.omega1 = 0.7;
  const double expected = std::sqrt(p.big_delta * p.omega1) / 2.0;
  const TransitionProbe probe = boundary_bisect(p, 0.0, 0.1, 1.0);
  EXPECT_NEAR(probe.g1_star() / expected, 1.0, 1e-6);
  EXPECT_EQ(probe.order, TransitionOrder::Second);
  EXPECT_TRUE(probe.signatures_agree);
}

TEST(BoundaryBisect, RejectsBadBracket) {
  const ModelParams p = tilted_params();
  EXPECT_THROW(boundary_bisect(p, 0.0, 0.1, 0.2), ValidationError);   // both Normal
  EXPECT_THROW(boundary_bisect(p, 0.0, 3.0, 4.0), ValidationError);   // both Superradiant
  EXPECT_THROW(boundary_bisect(p, 0.0, 1.0, 0.5), ValidationError);   // reversed
}

TEST(RowBoundary, SecondOrderAtWeakG2) {
  const TransitionProbe probe = find_row_boundary(tilted_params(), 0.3 * tilted_g2_trk());
  EXPECT_EQ(probe.order, TransitionOrder::Second);
  EXPECT_NEAR(probe.g1_star() / tilted_g1_trk(), 1.0292502789996829, 1e-6);
  ASSERT_TRUE(probe.g1c.has_value());
  EXPECT_NEAR(probe.g1_star(), *probe.g1c, 1e-7);
  EXPECT_LT(probe.jump, 1e-3);
}

TEST(RowBoundary, FirstOrderAtStrongG2) {
  const TransitionProbe probe = find_row_boundary(tilted_params(), 0.9 * tilted_g2_trk());
  EXPECT_EQ(probe.order, TransitionOrder::First);
  EXPECT_GT(probe.jump, 1e-2);
  EXPECT_TRUE(probe.stable);
  ASSERT_TRUE(probe.g1c.has_value());
  EXPECT_LT(probe.g1_star(), *probe.g1c);  // discontinuous transition precedes the instability
  EXPECT_TRUE(probe.signatures_agree);
  // Both sides of the boundary really are in the labelled phases.
  ModelParams lo = tilted_params(probe.g1_star() - 1e-6, probe.g2_fixed());
  ModelParams hi = tilted_params(probe.g1_star() + 1e-6, probe.g2_fixed());
  EXPECT_EQ(solve_ground_state(lo).phase, Phase::Normal);
  EXPECT_EQ(solve_ground_state(hi).phase, Phase::Superradiant);
}

TEST(RowBoundary, BoundaryBendsDownwardWithG2) {
  double last = 1e9;
  for (double f : {0.6, 0.75, 0.9, 1.0}) {
    const double g1 = find_row_boundary(tilted_params(), f * tilted_g2_trk()).g1_star();
    EXPECT_LT(g1, last);
    last = g1;
  }
}

TEST(ColumnBoundary, ConsistentWithRowBoundary) {
  const ModelParams base = tilted_params();
  const TransitionProbe row = find_row_boundary(base, 0.9 * tilted_g2_trk());
  // Walk the column through the row result: the column boundary at g1 = g1*
  // must sit at the row's g2.
  const TransitionProbe col = boundary_bisect_column(base, row.g1_star() + 1e-4, 0.5 * tilted_g2_trk(), 1.2 * tilted_g2_trk());
  EXPECT_EQ(col.axis, ScanAxis::G2);
  EXPECT_LT(col.g2, row.g2);
  EXPECT_GT(col.g2, 0.8 * tilted_g2_trk());
  EXPECT_EQ(col.order, TransitionOrder::First);
}

TEST(Tricritical, LiesBetweenOrders) {
  TricriticalOptions opt;
  opt.tol = 1e-3;
  const TricriticalPoint tc = locate_tricritical(tilted_params(), 0.3 * tilted_g2_trk(), 0.9 * tilted_g2_trk(), opt);
  EXPECT_LE(tc.g2_second_edge, tc.g2_first_edge);
  EXPECT_GT(tc.g2 / tilted_g2_trk(), 0.45);
  EXPECT_LT(tc.g2 / tilted_g2_trk(), 0.60);
  EXPECT_THROW(locate_tricritical(tilted_params(), 0.9 * tilted_g2_trk(), 1.0 * tilted_g2_trk(), opt), ValidationError);
}

TEST(ScanGrid, SmallGridStructure) {
  std::vector<double> g1, g2;
  for (int k = 0; k < 6; ++k) g1.push_back(0.3 * k * tilted_g1_trk());
  for (int k = 0; k < 4; ++k) g2.push_back(0.3 * k * tilted_g2_trk());
  ScanOptions opt;
  opt.find_tricritical = false;
  const PhaseDiagram d = scan_grid(tilted_params(), g1, g2, opt);
  ASSERT_EQ(d.cells.size(), 24u);
  EXPECT_EQ(d.cell(0, 0).phase, Phase::Normal);
  EXPECT_EQ(d.cell(5, 3).phase, Phase::Superradiant);
  EXPECT_EQ(d.boundary.size(), 4u);  // one crossing per row
  EXPECT_TRUE(d.warnings.empty());
  for (std::size_t j = 0; j < g2.size(); ++j) {
    // The first-found crossing separates Normal to the left from Superradiant to the right.
    for (std::size_t i = 0; i + 1 < g1.size(); ++i)
      if (d.cell(i, j).phase == Phase::Superradiant) {
        EXPECT_EQ(d.cell(i + 1, j).phase, Phase::Superradiant);
      }
  }
}

TEST(ScanGrid, ThreadCountDoesNotChangeResults) {
  std::vector<double> g1{0.0, 0.8, 1.3, 1.6}, g2{0.0, 0.5, 1.0, 1.2};
  ScanOptions one, many;
  one.find_tricritical = many.find_tricritical = false;
  many.threads = 3;
  const PhaseDiagram a = scan_grid(tilted_params(), g1, g2, one);
  const PhaseDiagram b = scan_grid(tilted_params(), g1, g2, many);
  for (std::size_t k = 0; k < a.cells.size(); ++k) {
    EXPECT_EQ(a.cells[k].e0, b.cells[k].e0);
    EXPECT_EQ(a.cells[k].psi2, b.cells[k].psi2);
  }
}

TEST(ScanGrid, RejectsBadAxes) {
  EXPECT_THROW(scan_grid(tilted_params(), {}, {0.0}), ValidationError);
  EXPECT_THROW(scan_grid(tilted_params(), {0.0, 0.0}, {0.0}), ValidationError);
  EXPECT_THROW(scan_grid(tilted_params(), {-1.0}, {0.0}), ValidationError);
}

TEST(Rays, ParseAndPoint) {
  for (Ray r : {Ray::G1Axis, Ray::G2Axis, Ray::Diagonal}) EXPECT_EQ(parse_ray(to_string(r)), r);
  EXPECT_FALSE(parse_ray("sideways").has_value());
  const ModelParams p = point_on_ray(tilted_params(0.3, 0.4), Ray::Diagonal, 0.7);
  EXPECT_EQ(p.g1, 0.7);
  EXPECT_EQ(p.g2, 0.7);
  EXPECT_EQ(point_on_ray(tilted_params(0.3, 0.4), Ray::G2Axis, 0.7).g1, 0.0);
}

TEST(Sweep, DickeAnchorAndMonotonicity) {
  SweepOptions opt;
  opt.g_max = 4.0;
  opt.scan_steps = 80;
  const auto rows = sweep_chi_kappa(sweep_params(0.0, 0.0), {0.0, 0.8}, {0.0, 0.6}, {Ray::G1Axis, Ray::Diagonal}, opt);
  ASSERT_EQ(rows.size(), 8u);
  // chi = kappa = 0 along g1: decoupled two-level boundary sqrt(Delta omega1) / 2.
  ASSERT_TRUE(rows[0].g_c.has_value());
  EXPECT_NEAR(*rows[0].g_c, 0.5, 1e-7);
  for (const auto& r : rows) EXPECT_TRUE(r.g_c.has_value());
  // Row order: chi, then kappa, then ray.
  EXPECT_EQ(rows[1].ray, Ray::Diagonal);
  EXPECT_EQ(rows[2].kappa, 0.6);
  EXPECT_EQ(rows[4].chi, 0.8);
  // Larger kappa raises g_c; larger chi lowers it at kappa = 0.
  EXPECT_GT(*rows[2].g_c, *rows[0].g_c);
  EXPECT_LT(*rows[4].g_c, *rows[0].g_c);
}

TEST(Sweep, NoTransitionWithinRange) {
  SweepOptions opt;
  opt.g_max = 0.2;
  opt.scan_steps = 10;
  const auto rows = sweep_chi_kappa(sweep_params(0.0, 0.0), {0.0}, {1.2}, {Ray::G2Axis}, opt);
  ASSERT_EQ(rows.size(), 1u);
  EXPECT_FALSE(rows[0].g_c.has_value());
}
