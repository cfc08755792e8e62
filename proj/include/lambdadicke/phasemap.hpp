#pragma once

#include <optional>
#include <string>
#include <vector>

#include "lambdadicke/model.hpp"
#include "lambdadicke/solver.hpp"

namespace ldk {

enum class TransitionOrder { First, Second, Indeterminate };
std::string to_string(TransitionOrder order);

/// Which coupling is varied when a boundary is bisected.
enum class ScanAxis { G1, G2 };

struct BoundaryOptions {
  double tol = 1e-8;       // final bracket width in coupling units
  double eps_jump = 1e-3;  // order-parameter jump separating First from Second
  SolverOptions solver;
};

/**
 * One point of the normal/superradiant boundary.
 *
 * `raw_jump` is the order-parameter difference across the boundary at side
 * offset eps_side = 10 tol / g_star. The offset is halved twice; `jump` is
 * the discontinuity extrapolated from the three measurements (Aitken), which
 * removes steep but continuous growth. `stable` means the three raw values
 * agree within 10%.
 */
struct TransitionProbe {
  ScanAxis axis = ScanAxis::G1;
  double g1 = 0.0;  // boundary location
  double g2 = 0.0;
  double jump = 0.0;
  double raw_jump = 0.0;
  bool stable = false;
  TransitionOrder order = TransitionOrder::Indeterminate;
  std::optional<double> g1c;   // closed-form second-order coupling (G1 axis only)
  bool signatures_agree = true;  // jump-based verdict consistent with g1c

  double g2_fixed() const { return g2; }
  double g1_star() const { return g1; }
};

/// Bisects along g1 at fixed g2. Requires Normal at g1_lo and Superradiant at
/// g1_hi; throws ValidationError otherwise.
TransitionProbe boundary_bisect(const ModelParams& base, double g2_fixed, double g1_lo, double g1_hi,
                                const BoundaryOptions& options = {});

/// Column variant: bisects along g2 at fixed g1.
TransitionProbe boundary_bisect_column(const ModelParams& base, double g1_fixed, double g2_lo, double g2_hi,
                                       const BoundaryOptions& options = {});

/// Finds a bracket on the row g2 = g2_fixed (the normal state is unstable
/// above g1,c, so the bracket sits at or below it) and bisects it.
TransitionProbe find_row_boundary(const ModelParams& base, double g2_fixed, const BoundaryOptions& options = {});

struct TricriticalOptions {
  double tol = 1e-4;  // bracket width in g2
  BoundaryOptions boundary;
};

struct TricriticalPoint {
  double g1 = 0.0;
  double g2 = 0.0;
  double g2_second_edge = 0.0;  // largest g2 seen with a Second-order boundary
  double g2_first_edge = 0.0;   // smallest g2 seen with a First-order boundary
  std::optional<double> g1c;
  bool g1_matches_g1c = false;  // |g1 - g1c| within 10 boundary tolerances
};

/// Bisection on g2 over the boundary order. Indeterminate rows form their own
/// band: the Second edge and the First edge are bisected separately and the
/// tricritical point is placed at the band midpoint.
TricriticalPoint locate_tricritical(const ModelParams& base, double g2_lo, double g2_hi,
                                    const TricriticalOptions& options = {});

enum class ScanDirection { Rows, Columns };

struct ScanOptions {
  ScanDirection direction = ScanDirection::Rows;
  BoundaryOptions boundary;
  bool find_tricritical = true;
  double tricritical_tol = 1e-4;
  unsigned threads = 1;
};

struct PhaseDiagram {
  std::vector<double> g1_axis;
  std::vector<double> g2_axis;
  std::vector<MeanFieldSolution> cells;  // row-major: index j * g1_axis.size() + i
  std::vector<bool> cell_failed;
  std::vector<std::string> cell_errors;
  std::vector<TransitionProbe> boundary;
  std::optional<TricriticalPoint> tricritical;
  std::vector<std::string> warnings;  // re-entrance and similar anomalies

  const MeanFieldSolution& cell(std::size_t i, std::size_t j) const { return cells[j * g1_axis.size() + i]; }
};

PhaseDiagram scan_grid(const ModelParams& base, const std::vector<double>& g1_axis,
                       const std::vector<double>& g2_axis, const ScanOptions& options = {});

/// Directions of the three boundary probes: (g_c, 0), (0, g_c), (g_c, g_c).
enum class Ray { G1Axis, G2Axis, Diagonal };
std::string to_string(Ray ray);
std::optional<Ray> parse_ray(const std::string& text);

struct SweepOptions {
  double g_max = 10.0;  // search range along each ray
  int scan_steps = 200;
  double tol = 1e-8;
  SolverOptions solver;
};

struct SweepRow {
  double chi = 0.0;
  double kappa = 0.0;
  Ray ray = Ray::G1Axis;
  std::optional<double> g_c;  // empty if no transition within g_max
};

/// With chi1 = chi2 = chi and kappa1 = kappa2 = kappa3 = kappa, locates the
/// first Normal -> Superradiant change along each ray. Row order: chi, then
/// kappa, then ray, each in the order given.
std::vector<SweepRow> sweep_chi_kappa(const ModelParams& base, const std::vector<double>& chi_values,
                                      const std::vector<double>& kappa_values, const std::vector<Ray>& rays,
                                      const SweepOptions& options = {});

/// Couplings along a ray at distance g.
ModelParams point_on_ray(const ModelParams& base, Ray ray, double g);

}  // namespace ldk
