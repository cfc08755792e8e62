#pragma once

#include <string>
#include <vector>

#include "lambdadicke/landscape.hpp"
#include "lambdadicke/model.hpp"

namespace ldk {

enum class Phase { Normal, Superradiant };

std::string to_string(Phase phase);

struct MinimizeOptions {
  double grad_tol = 1e-12;
  int max_iterations = 2000;
  // Iterates are clamped radially to this radius so psi1 stays positive.
  double barrier_radius = 1.0 - 1e-12;
  // Longest trial step; keeps far starts from jumping across basins.
  double max_step = 0.1;
};

struct LocalMinimum {
  MatterPoint point;
  double energy = 0.0;
  bool converged = false;
  bool on_boundary = false;
  int iterations = 0;
};

/// Projected modified-Newton descent with backtracking on the reduced energy.
/// Saddle points (the unstable normal state in particular) are escaped along
/// the negative-curvature direction, so a converged result is a local minimum.
LocalMinimum minimize_reduced(const ModelParams& params, const MatterPoint& start,
                              const MinimizeOptions& options = {});

struct SolverOptions {
  MinimizeOptions local;
  double eps_sr = 1e-8;     // Normal iff Psi2^2 + Psi3^2 <= eps_sr
  double tie_tol = 1e-12;  // distinct minima closer than this in energy are flagged degenerate
  // Extra starts at the local minima of the energy sampled on a ring near
  // the rim; catches narrow pockets where psi1 -> 0. 0 disables.
  int rim_samples = 64;
  double rim_radius = 0.995;
};

struct MeanFieldSolution {
  double psi2 = 0.0;
  double psi3 = 0.0;
  double psi1 = 1.0;
  double phi1 = 0.0;
  double phi2 = 0.0;
  double e0 = 0.0;
  Phase phase = Phase::Normal;
  bool converged = true;
  int starts_used = 0;
  bool degenerate = false;   // a distinct competing minimum within tie_tol
  bool on_boundary = false;  // minimum pinned at the psi1 -> 0 barrier

  double order_parameter() const;  // sqrt(Psi2^2 + Psi3^2)
};

/// The fixed start pattern: origin, eight points at radius 0.5 every 45
/// degrees, four points at radius 0.95 on the axes.
std::vector<MatterPoint> default_start_set();

/// Discrete local minima of the reduced energy on `samples` equally spaced
/// points of the circle of the given radius.
std::vector<MatterPoint> rim_start_set(const ModelParams& params, int samples, double radius);

/// Global minimum of the reduced energy over the unit disk. Gauge: psi3 >= 0.
MeanFieldSolution solve_ground_state(const ModelParams& params, const SolverOptions& options = {});

struct PhaseReport {
  Phase phase = Phase::Normal;
  bool psi2_finite = false;
  bool psi3_finite = false;
  bool phi1_finite = false;
  bool phi2_finite = false;
};

/// Normal iff Psi2^2 + Psi3^2 <= eps_sr; a mean field counts as finite when
/// its square exceeds eps_sr.
PhaseReport classify_phase(const MeanFieldSolution& solution, double eps_sr = 1e-8);

}  // namespace ldk
