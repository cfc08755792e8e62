#include "lambdadicke/phasemap.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

#include "lambdadicke/errors.hpp"
#include "lambdadicke/landscape.hpp"

namespace ldk {

namespace {

// Couplings (g1, g2) = origin + t * direction.
struct Line {
  double g1_0 = 0.0;
  double g2_0 = 0.0;
  double d1 = 0.0;
  double d2 = 0.0;

  ModelParams at(const ModelParams& base, double t) const {
    ModelParams p = base;
    p.g1 = g1_0 + t * d1;
    p.g2 = g2_0 + t * d2;
    return p;
  }
};

MeanFieldSolution solve_on(const ModelParams& base, const Line& line, double t, const SolverOptions& opt) {
  return solve_ground_state(line.at(base, t), opt);
}

// Shrinks [lo, hi] (Normal at lo, Superradiant at hi) below tol.
std::pair<double, double> bisect_label(const ModelParams& base, const Line& line, double lo, double hi, double tol,
                                       const SolverOptions& opt) {
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (solve_on(base, line, mid, opt).phase == Phase::Normal)
      lo = mid;
    else
      hi = mid;
  }
  return {lo, hi};
}

struct JumpEstimate {
  double raw = 0.0;
  double extrapolated = 0.0;
  bool stable = false;
};

JumpEstimate measure_jump(const ModelParams& base, const Line& line, double t_star, double tol,
                          const SolverOptions& opt) {
  double offset = 10.0 * tol;  // eps_side * t_star
  double j[3];
  for (double& value : j) {
    const double above = solve_on(base, line, t_star + offset, opt).order_parameter();
    const double below = solve_on(base, line, std::max(0.0, t_star - offset), opt).order_parameter();
    value = above - below;
    offset *= 0.5;
  }
  JumpEstimate out;
  out.raw = j[0];
  out.stable = std::abs(j[2] - j[0]) <= 0.1 * std::abs(j[0]);
  if (out.stable) {
    out.extrapolated = j[2];
  } else {
    const double d1 = j[1] - j[0];
    const double d2 = j[2] - j[1];
    const double denom = d2 - d1;
    double limit = std::abs(denom) > 0.0 ? j[2] - d2 * d2 / denom : j[2];
    const double hi = std::max({j[0], j[1], j[2], 0.0});
    out.extrapolated = std::clamp(limit, 0.0, hi);
  }
  return out;
}

TransitionOrder order_from_jump(const JumpEstimate& j, double eps_jump) {
  if (j.extrapolated <= 0.5 * eps_jump) return TransitionOrder::Second;
  if (j.extrapolated >= 2.0 * eps_jump && j.stable) return TransitionOrder::First;
  return TransitionOrder::Indeterminate;
}

TransitionProbe probe_line(const ModelParams& base, const Line& line, ScanAxis axis, double lo, double hi,
                           const BoundaryOptions& opt) {
  if (!(lo < hi) || lo < 0.0) throw ValidationError("boundary bracket must satisfy 0 <= lo < hi");
  if (solve_on(base, line, lo, opt.solver).phase != Phase::Normal)
    throw ValidationError("boundary bracket invalid: lower end is not Normal");
  if (solve_on(base, line, hi, opt.solver).phase != Phase::Superradiant)
    throw ValidationError("boundary bracket invalid: upper end is not Superradiant");

  const auto [a, b] = bisect_label(base, line, lo, hi, opt.tol, opt.solver);
  const double t_star = 0.5 * (a + b);
  const JumpEstimate jump = measure_jump(base, line, t_star, opt.tol, opt.solver);

  TransitionProbe probe;
  probe.axis = axis;
  const ModelParams at_star = line.at(base, t_star);
  probe.g1 = at_star.g1;
  probe.g2 = at_star.g2;
  probe.jump = jump.extrapolated;
  probe.raw_jump = jump.raw;
  probe.stable = jump.stable;
  probe.order = order_from_jump(jump, opt.eps_jump);

  if (axis == ScanAxis::G1) {
    probe.g1c = critical_coupling_g1c(at_star);
    if (probe.g1c && probe.order == TransitionOrder::Second) {
      // A continuous transition happens exactly where the normal state
      // loses stability.
      probe.signatures_agree = std::abs(probe.g1 - *probe.g1c) <= 10.0 * opt.tol;
      if (!probe.signatures_agree) probe.order = TransitionOrder::Indeterminate;
    } else if (probe.g1c && probe.order == TransitionOrder::First) {
      probe.signatures_agree = probe.g1 < *probe.g1c + 10.0 * opt.tol;
    }
  }
  return probe;
}

}  // namespace

std::string to_string(TransitionOrder order) {
  switch (order) {
    case TransitionOrder::First:
      return "First";
    case TransitionOrder::Second:
      return "Second";
    case TransitionOrder::Indeterminate:
      return "Indeterminate";
  }
  return "Indeterminate";
}

TransitionProbe boundary_bisect(const ModelParams& base, double g2_fixed, double g1_lo, double g1_hi,
                                const BoundaryOptions& options) {
  return probe_line(base, Line{0.0, g2_fixed, 1.0, 0.0}, ScanAxis::G1, g1_lo, g1_hi, options);
}

TransitionProbe boundary_bisect_column(const ModelParams& base, double g1_fixed, double g2_lo, double g2_hi,
                                       const BoundaryOptions& options) {
  return probe_line(base, Line{g1_fixed, 0.0, 0.0, 1.0}, ScanAxis::G2, g2_lo, g2_hi, options);
}

TransitionProbe find_row_boundary(const ModelParams& base, double g2_fixed, const BoundaryOptions& options) {
  ModelParams row = base;
  row.g2 = g2_fixed;
  const auto g1c = critical_coupling_g1c(row);
  if (!g1c) throw NumericalError("find_row_boundary: closed-form g1,c undefined for these parameters");
  const Line line{0.0, g2_fixed, 1.0, 0.0};

  double hi = *g1c * (1.0 + 1e-4) + 1e-12;
  for (int k = 0; solve_on(base, line, hi, options.solver).phase != Phase::Superradiant; ++k) {
    if (k == 50) throw NumericalError("find_row_boundary: no superradiant point found above g1,c");
    hi *= 1.1;
  }
  constexpr int kSteps = 40;
  const double step = hi / kSteps;
  double lo = hi;
  for (int k = 1; k <= kSteps; ++k) {
    const double g = std::max(0.0, hi - k * step);
    if (solve_on(base, line, g, options.solver).phase == Phase::Normal) {
      lo = g;
      break;
    }
    hi = g;
    if (k == kSteps) throw ValidationError("find_row_boundary: row has no normal state at g1 >= 0");
  }
  return probe_line(base, line, ScanAxis::G1, lo, hi, options);
}

TricriticalPoint locate_tricritical(const ModelParams& base, double g2_lo, double g2_hi,
                                    const TricriticalOptions& options) {
  if (!(g2_lo < g2_hi)) throw ValidationError("locate_tricritical: need g2_lo < g2_hi");
  auto order_at = [&](double g2) { return find_row_boundary(base, g2, options.boundary).order; };
  if (order_at(g2_lo) != TransitionOrder::Second)
    throw ValidationError("locate_tricritical: boundary at g2_lo is not second order");
  if (order_at(g2_hi) != TransitionOrder::First)
    throw ValidationError("locate_tricritical: boundary at g2_hi is not first order");

  // Largest g2 with a Second-order boundary.
  double lo = g2_lo;
  double hi = g2_hi;
  while (hi - lo > options.tol) {
    const double mid = 0.5 * (lo + hi);
    (order_at(mid) == TransitionOrder::Second ? lo : hi) = mid;
  }
  const double second_edge = lo;
  // Smallest g2 with a First-order boundary.
  lo = second_edge;
  hi = g2_hi;
  while (hi - lo > options.tol) {
    const double mid = 0.5 * (lo + hi);
    (order_at(mid) == TransitionOrder::First ? hi : lo) = mid;
  }
  const double first_edge = hi;

  TricriticalPoint tc;
  tc.g2_second_edge = second_edge;
  tc.g2_first_edge = first_edge;
  tc.g2 = 0.5 * (second_edge + first_edge);
  const TransitionProbe probe = find_row_boundary(base, tc.g2, options.boundary);
  tc.g1 = probe.g1;
  tc.g1c = probe.g1c;
  // The two segments meet on the line g1 = g1,c; the first-order side bends
  // below it, so allow for the band width in g2.
  tc.g1_matches_g1c = tc.g1c && std::abs(tc.g1 - *tc.g1c) <= 10.0 * options.boundary.tol;
  return tc;
}

PhaseDiagram scan_grid(const ModelParams& base, const std::vector<double>& g1_axis,
                       const std::vector<double>& g2_axis, const ScanOptions& options) {
  if (g1_axis.empty() || g2_axis.empty()) throw ValidationError("scan_grid: axes must be nonempty");
  for (const auto* axis : {&g1_axis, &g2_axis}) {
    for (std::size_t k = 0; k < axis->size(); ++k) {
      if (!((*axis)[k] >= 0.0)) throw ValidationError("scan_grid: couplings must be >= 0");
      if (k > 0 && !((*axis)[k] > (*axis)[k - 1])) throw ValidationError("scan_grid: axes must be strictly increasing");
    }
  }
  require_valid(base);

  PhaseDiagram pd;
  pd.g1_axis = g1_axis;
  pd.g2_axis = g2_axis;
  const std::size_t n1 = g1_axis.size();
  const std::size_t n2 = g2_axis.size();
  pd.cells.resize(n1 * n2);
  pd.cell_failed.assign(n1 * n2, false);
  pd.cell_errors.resize(n1 * n2);

  auto fill_rows = [&](std::size_t j_begin, std::size_t j_step) {
    for (std::size_t j = j_begin; j < n2; j += j_step) {
      for (std::size_t i = 0; i < n1; ++i) {
        ModelParams p = base;
        p.g1 = g1_axis[i];
        p.g2 = g2_axis[j];
        const std::size_t idx = j * n1 + i;
        try {
          pd.cells[idx] = solve_ground_state(p, options.boundary.solver);
        } catch (const std::exception& ex) {
          MeanFieldSolution failed;
          failed.converged = false;
          failed.e0 = std::nan("");
          pd.cells[idx] = failed;
          pd.cell_failed[idx] = true;
          pd.cell_errors[idx] = ex.what();
        }
      }
    }
  };
  const unsigned threads = std::max(1u, std::min<unsigned>(options.threads, static_cast<unsigned>(n2)));
  if (threads == 1) {
    fill_rows(0, 1);
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(fill_rows, t, threads);
  }

  // Boundary: first Normal -> Superradiant change along each line of cells.
  const bool rows = options.direction == ScanDirection::Rows;
  const std::size_t lines = rows ? n2 : n1;
  const std::size_t len = rows ? n1 : n2;
  auto at = [&](std::size_t line, std::size_t k) -> std::size_t { return rows ? line * n1 + k : k * n1 + line; };
  for (std::size_t line = 0; line < lines; ++line) {
    std::optional<std::size_t> crossing;
    for (std::size_t k = 0; k + 1 < len; ++k) {
      const std::size_t a = at(line, k);
      const std::size_t b = at(line, k + 1);
      if (pd.cell_failed[a] || pd.cell_failed[b]) continue;
      if (pd.cells[a].phase == Phase::Normal && pd.cells[b].phase == Phase::Superradiant) {
        if (!crossing) crossing = k;
      } else if (crossing && pd.cells[a].phase == Phase::Superradiant && pd.cells[b].phase == Phase::Normal) {
        pd.warnings.push_back("re-entrant normal phase on " + std::string(rows ? "row g2=" : "column g1=") +
                              std::to_string(rows ? g2_axis[line] : g1_axis[line]));
      }
    }
    if (!crossing) continue;
    try {
      if (rows)
        pd.boundary.push_back(
            boundary_bisect(base, g2_axis[line], g1_axis[*crossing], g1_axis[*crossing + 1], options.boundary));
      else
        pd.boundary.push_back(
            boundary_bisect_column(base, g1_axis[line], g2_axis[*crossing], g2_axis[*crossing + 1], options.boundary));
    } catch (const std::exception& ex) {
      pd.warnings.push_back(std::string("boundary bisection failed: ") + ex.what());
    }
  }

  if (options.find_tricritical && rows) {
    std::optional<double> last_second;
    std::optional<double> first_first;
    for (const auto& probe : pd.boundary) {
      if (probe.order == TransitionOrder::Second && !first_first) last_second = probe.g2;
      if (probe.order == TransitionOrder::First && last_second && !first_first) first_first = probe.g2;
    }
    if (last_second && first_first) {
      try {
        TricriticalOptions topt;
        topt.tol = options.tricritical_tol;
        topt.boundary = options.boundary;
        pd.tricritical = locate_tricritical(base, *last_second, *first_first, topt);
      } catch (const std::exception& ex) {
        pd.warnings.push_back(std::string("tricritical search failed: ") + ex.what());
      }
    }
  }
  return pd;
}

std::string to_string(Ray ray) {
  switch (ray) {
    case Ray::G1Axis:
      return "gc_0";
    case Ray::G2Axis:
      return "0_gc";
    case Ray::Diagonal:
      return "gc_gc";
  }
  return "gc_0";
}

std::optional<Ray> parse_ray(const std::string& text) {
  for (Ray r : {Ray::G1Axis, Ray::G2Axis, Ray::Diagonal})
    if (to_string(r) == text) return r;
  return std::nullopt;
}

ModelParams point_on_ray(const ModelParams& base, Ray ray, double g) {
  ModelParams p = base;
  p.g1 = ray == Ray::G2Axis ? 0.0 : g;
  p.g2 = ray == Ray::G1Axis ? 0.0 : g;
  return p;
}

std::vector<SweepRow> sweep_chi_kappa(const ModelParams& base, const std::vector<double>& chi_values,
                                      const std::vector<double>& kappa_values, const std::vector<Ray>& rays,
                                      const SweepOptions& options) {
  if (!(options.g_max > 0.0) || options.scan_steps < 1) throw ValidationError("sweep: need g_max > 0 and scan_steps >= 1");
  std::vector<SweepRow> table;
  for (double chi : chi_values) {
    for (double kappa : kappa_values) {
      ModelParams p = base;
      p.chi1 = p.chi2 = chi;
      p.kappa1 = p.kappa2 = p.kappa3 = kappa;
      require_valid(p);
      for (Ray ray : rays) {
        const Line line{0.0, 0.0, ray == Ray::G2Axis ? 0.0 : 1.0, ray == Ray::G1Axis ? 0.0 : 1.0};
        SweepRow row{chi, kappa, ray, std::nullopt};
        const double step = options.g_max / options.scan_steps;
        double prev = 0.0;
        for (int k = 1; k <= options.scan_steps; ++k) {
          const double g = k * step;
          if (solve_on(p, line, g, options.solver).phase == Phase::Superradiant) {
            const auto [lo, hi] = bisect_label(p, line, prev, g, options.tol, options.solver);
            row.g_c = 0.5 * (lo + hi);
            break;
          }
          prev = g;
        }
        table.push_back(row);
      }
    }
  }
  return table;
}

}  // namespace ldk
