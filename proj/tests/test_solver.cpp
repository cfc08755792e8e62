#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "lambdadicke/landscape.hpp"
#include "lambdadicke/solver.hpp"
#include "support.hpp"

using namespace ldk;
using testing_support::tilted_params;

namespace {

ModelParams random_params(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  ModelParams p;
  p.big_delta = 0.2 + 2.0 * u(rng);
  p.delta = p.big_delta * u(rng);
  p.omega1 = 0.2 + 2.0 * u(rng);
  p.omega2 = 0.2 + 2.0 * u(rng);
  p.g1 = 2.0 * u(rng);
  p.g2 = 2.0 * u(rng);
  p.chi1 = 1.5 * u(rng);
  p.chi2 = 1.5 * u(rng);
  p.kappa1 = u(rng);
  p.kappa2 = u(rng);
  p.kappa3 = std::min(p.kappa1, p.kappa2) * std::sqrt(u(rng));
  return p;
}

}  // namespace

TEST(SolveGroundState, ZeroCouplingIsNormal) {
  const MeanFieldSolution s = solve_ground_state(tilted_params(0.0, 0.0));
  EXPECT_EQ(s.phase, Phase::Normal);
  EXPECT_EQ(s.e0, 0.0);
  EXPECT_EQ(s.psi1, 1.0);
  EXPECT_EQ(s.order_parameter(), 0.0);
  EXPECT_TRUE(s.converged);
}

TEST(SolveGroundState, DickeLimitMatchesAnalyticMinimum) {
  // Two-level limit: E(t) = (Delta - 4g^2/omega) t^2 + 4 g^2 t^4 / omega.
  ModelParams p;
  p.delta = 0.3;
  p.big_delta = 1.0;
  p.omega1 = 0.8;
  for (double g : {0.2, 0.5, 0.8, 1.5}) {
    p.g1 = g;
    const MeanFieldSolution s = solve_ground_state(p);
    const double gc = std::sqrt(p.big_delta * p.omega1) / 2.0;
    if (g < gc) {
      EXPECT_EQ(s.phase, Phase::Normal);
      EXPECT_EQ(s.e0, 0.0);
      continue;
    }
    const double k = 4.0 * g * g / p.omega1;
    const double t2 = (k - p.big_delta) / (2.0 * k);
    EXPECT_EQ(s.phase, Phase::Superradiant);
    EXPECT_NEAR(s.e0, -(k - p.big_delta) * (k - p.big_delta) / (4.0 * k), 1e-12);
    EXPECT_NEAR(s.psi3 * s.psi3, t2, 1e-9);
    EXPECT_NEAR(s.psi2, 0.0, 1e-9);
  }
}

TEST(SolveGroundState, GlobalMinimumOverRandomSamples) {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int k = 0; k < 60; ++k) {
    const ModelParams p = random_params(rng);
    const MeanFieldSolution s = solve_ground_state(p);
    EXPECT_LE(s.e0, 0.0);
    for (int j = 0; j < 2000; ++j) {
      const double r = std::sqrt(u(rng)), a = 2.0 * M_PI * u(rng);
      EXPECT_LE(s.e0, reduced_energy(p, {r * std::cos(a), r * std::sin(a)}) + 1e-12);
    }
  }
}

TEST(SolveGroundState, ConsistentFields) {
  std::mt19937_64 rng(22);
  for (int k = 0; k < 60; ++k) {
    const ModelParams p = random_params(rng);
    const MeanFieldSolution s = solve_ground_state(p);
    EXPECT_GE(s.psi3, 0.0);
    EXPECT_NEAR(s.psi1 * s.psi1 + s.psi2 * s.psi2 + s.psi3 * s.psi3, 1.0, 1e-12);
    const MatterPoint m{s.psi2, s.psi3};
    EXPECT_NEAR(s.e0, reduced_energy(p, m), 1e-14);
    const BosonFields b = eliminate_bosons(p, m);
    EXPECT_NEAR(s.phi1, b.phi1, 1e-14);
    EXPECT_NEAR(s.phi2, b.phi2, 1e-14);
    EXPECT_EQ(s.phase, classify_phase(s).phase);
  }
}

TEST(SolveGroundState, NormalBelowCriticalAtSmallG2) {
  const ModelParams base = tilted_params();
  const double g1c = *critical_coupling_g1c(base);
  EXPECT_EQ(solve_ground_state(tilted_params(0.9 * g1c, 0.1)).phase, Phase::Normal);
  EXPECT_EQ(solve_ground_state(tilted_params(1.05 * g1c, 0.1)).phase, Phase::Superradiant);
}

TEST(SolveGroundState, Deterministic) {
  const ModelParams p = tilted_params(1.4, 1.1);
  const MeanFieldSolution a = solve_ground_state(p);
  const MeanFieldSolution b = solve_ground_state(p);
  EXPECT_EQ(a.e0, b.e0);
  EXPECT_EQ(a.psi2, b.psi2);
  EXPECT_EQ(a.psi3, b.psi3);
}

TEST(SolveGroundState, SuperradiantFieldsAllFinite) {
  const MeanFieldSolution s = solve_ground_state(tilted_params(1.6, 1.2));
  const PhaseReport r = classify_phase(s);
  EXPECT_EQ(r.phase, Phase::Superradiant);
  EXPECT_TRUE(r.psi3_finite);
  EXPECT_TRUE(r.phi1_finite);
  EXPECT_TRUE(r.phi2_finite);
}

TEST(MinimizeReduced, EscapesUnstableNormalState) {
  const ModelParams p = tilted_params(1.2 * *critical_coupling_g1c(tilted_params()), 0.0);
  const LocalMinimum m = minimize_reduced(p, {0.0, 0.0});
  EXPECT_TRUE(m.converged);
  EXPECT_LT(m.energy, -1e-6);
  EXPECT_GT(std::abs(m.point.psi3), 1e-3);
}

TEST(MinimizeReduced, StaysInsideDisk) {
  std::mt19937_64 rng(23);
  for (int k = 0; k < 40; ++k) {
    const ModelParams p = random_params(rng);
    for (const MatterPoint& start : default_start_set()) {
      const LocalMinimum m = minimize_reduced(p, start);
      EXPECT_LE(m.point.radius_sq(), 1.0);
      EXPECT_LE(m.energy, reduced_energy(p, start) + 1e-14);
    }
  }
}

TEST(StartSet, Layout) {
  const auto starts = default_start_set();
  ASSERT_EQ(starts.size(), 13u);
  EXPECT_EQ(starts[0].radius_sq(), 0.0);
  for (const auto& s : starts) EXPECT_LT(s.radius_sq(), 1.0);
}

TEST(ClassifyPhase, Threshold) {
  MeanFieldSolution s;
  s.psi2 = 1e-5;
  EXPECT_EQ(classify_phase(s, 1e-8).phase, Phase::Normal);
  s.psi2 = 1e-3;
  EXPECT_EQ(classify_phase(s, 1e-8).phase, Phase::Superradiant);
  EXPECT_EQ(to_string(Phase::Superradiant), "Superradiant");
}

TEST(SolveGroundState, FindsNarrowPocketNearRim) {
  // Far beyond the TRK bounds the lowest minimum sits in a narrow pocket at
  // psi1 ~ 0, away from the axes; the fixed start pattern alone misses it.
  const ModelParams p = testing_support::tilted_params(0.159, 1.5 * testing_support::tilted_g2_trk());
  const MeanFieldSolution s = solve_ground_state(p);
  EXPECT_EQ(s.phase, Phase::Superradiant);
  EXPECT_LT(s.e0, -0.027);
  EXPECT_GT(s.psi2 * s.psi2 + s.psi3 * s.psi3, 0.99);
  // Reference: the best of 20000 ring samples near the pocket.
  double best = 0.0;
  for (int i = 0; i < 200; ++i)
    for (int j = 0; j < 100; ++j) {
      const double r = 0.9 + 0.1 * j / 100.0, a = 2.0 * M_PI * i / 200.0;
      best = std::min(best, reduced_energy(p, {r * std::cos(a), r * std::sin(a)}));
    }
  EXPECT_LE(s.e0, best + 1e-12);
}

TEST(RimStartSet, LocalMinimaOfRing) {
  const ModelParams p = testing_support::tilted_params(0.159, 1.5 * testing_support::tilted_g2_trk());
  const auto rim = rim_start_set(p, 64, 0.995);
  ASSERT_FALSE(rim.empty());
  for (const auto& m : rim) EXPECT_NEAR(std::sqrt(m.radius_sq()), 0.995, 1e-12);
  EXPECT_TRUE(rim_start_set(p, 0, 0.995).empty());
  // Uncoupled, delta = 0: E = Delta psi3^2 is lowest on the psi2 axis.
  const auto flat = rim_start_set(ModelParams{}, 64, 0.5);
  ASSERT_EQ(flat.size(), 2u);
  EXPECT_NEAR(flat[0].psi2, 0.5, 1e-15);
  EXPECT_NEAR(flat[1].psi2, -0.5, 1e-15);
}
