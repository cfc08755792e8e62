#include "lambdadicke/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "lambdadicke/errors.hpp"

namespace ldk {

namespace {

constexpr double kArmijo = 1e-4;
constexpr int kMaxBacktracks = 60;

struct P2 {
  double x, y;
};

P2 clamp_to_disk(P2 p, double radius) {
  const double r = std::hypot(p.x, p.y);
  if (r > radius) {
    const double f = radius / r;
    return {p.x * f, p.y * f};
  }
  return p;
}

double energy_at(const ModelParams& params, P2 p) { return reduced_energy(params, {p.x, p.y}); }

// Modified Newton direction: eigenvalues replaced by max(|lambda|, floor).
P2 newton_direction(const Hessian2& h, const Gradient2& g) {
  const auto eig = symmetric_eigenvalues(h);
  const double scale = std::max(std::abs(eig[0]), std::abs(eig[1]));
  const double floor = std::max(1e-8 * scale, std::numeric_limits<double>::min());
  // Eigenvectors of [[a, b], [b, d]].
  const double a = h[0][0];
  const double b = h[0][1];
  const double d = h[1][1];
  P2 v0, v1;
  if (std::abs(b) > 1e-300) {
    v0 = {b, eig[0] - a};
  } else {
    v0 = a <= d ? P2{1.0, 0.0} : P2{0.0, 1.0};
  }
  const double n0 = std::hypot(v0.x, v0.y);
  v0 = {v0.x / n0, v0.y / n0};
  v1 = {-v0.y, v0.x};
  const double l0 = std::max(std::abs(eig[0]), floor);
  const double l1 = std::max(std::abs(eig[1]), floor);
  const double c0 = (v0.x * g[0] + v0.y * g[1]) / l0;
  const double c1 = (v1.x * g[0] + v1.y * g[1]) / l1;
  return {-(c0 * v0.x + c1 * v1.x), -(c0 * v0.y + c1 * v1.y)};
}

P2 capped(P2 d, double max_len) {
  const double n = std::hypot(d.x, d.y);
  return n > max_len ? P2{d.x * max_len / n, d.y * max_len / n} : d;
}

// Unit eigenvector of the smallest eigenvalue.
P2 lowest_mode(const Hessian2& h) {
  const auto eig = symmetric_eigenvalues(h);
  const double a = h[0][0];
  const double b = h[0][1];
  const double d = h[1][1];
  P2 v = std::abs(b) > 1e-300 ? P2{b, eig[0] - a} : (a <= d ? P2{1.0, 0.0} : P2{0.0, 1.0});
  const double n = std::hypot(v.x, v.y);
  return {v.x / n, v.y / n};
}

}  // namespace

std::string to_string(Phase phase) { return phase == Phase::Normal ? "Normal" : "Superradiant"; }

double MeanFieldSolution::order_parameter() const { return std::sqrt(psi2 * psi2 + psi3 * psi3); }

LocalMinimum minimize_reduced(const ModelParams& params, const MatterPoint& start, const MinimizeOptions& opt) {
  if (!(start.radius_sq() < 1.0)) throw ValidationError("minimize_reduced: start must lie in the open unit disk");
  const double radius = opt.barrier_radius;
  P2 x = clamp_to_disk({start.psi2, start.psi3}, radius);

  LocalMinimum out;
  for (int iter = 0; iter < opt.max_iterations; ++iter) {
    out.iterations = iter + 1;
    const LandscapeSample s = sample_landscape(params, {x.x, x.y});
    const double rx = std::hypot(x.x, x.y);
    const bool at_barrier = rx >= radius * (1.0 - 1e-14);

    // Projected gradient: outward pull is blocked at the barrier.
    Gradient2 g = s.gradient;
    bool blocked = false;
    if (at_barrier) {
      const double radial = (g[0] * x.x + g[1] * x.y) / rx;
      if (radial < 0.0) {
        g = {g[0] - radial * x.x / rx, g[1] - radial * x.y / rx};
        blocked = true;
      }
    }
    const double gnorm = std::hypot(g[0], g[1]);

    if (gnorm < opt.grad_tol) {
      const auto eig = symmetric_eigenvalues(s.hessian);
      const double scale = std::max({std::abs(s.hessian[0][0]), std::abs(s.hessian[0][1]), std::abs(s.hessian[1][1])});
      if (blocked || eig[0] >= -1e-10 * scale) {
        out.point = {x.x, x.y};
        out.energy = s.energy;
        out.converged = true;
        out.on_boundary = blocked;
        return out;
      }
      // Saddle or maximum: step along the lowest curvature mode.
      const P2 v = lowest_mode(s.hessian);
      bool moved = false;
      for (double eta = 0.1; eta > 1e-9 && !moved; eta *= 0.1) {
        for (double sign : {1.0, -1.0}) {
          const P2 trial = clamp_to_disk({x.x + sign * eta * v.x, x.y + sign * eta * v.y}, radius);
          if (energy_at(params, trial) < s.energy) {
            x = trial;
            moved = true;
            break;
          }
        }
      }
      if (!moved) {
        out.point = {x.x, x.y};
        out.energy = s.energy;
        out.converged = false;
        return out;
      }
      continue;
    }

    // Try the modified-Newton direction first, then steepest descent.
    const double hscale =
        std::max({std::abs(s.hessian[0][0]), std::abs(s.hessian[0][1]), std::abs(s.hessian[1][1]), 1e-300});
    const P2 newton = capped(blocked ? P2{-g[0], -g[1]} : newton_direction(s.hessian, g), opt.max_step);
    const P2 steepest = capped({-g[0] / hscale, -g[1] / hscale}, opt.max_step);

    bool accepted = false;
    for (const P2& dir : {newton, steepest}) {
      double step = 1.0;
      for (int k = 0; k < kMaxBacktracks; ++k, step *= 0.5) {
        const P2 trial = clamp_to_disk({x.x + step * dir.x, x.y + step * dir.y}, radius);
        const double e_trial = energy_at(params, trial);
        const double decrease = s.gradient[0] * (trial.x - x.x) + s.gradient[1] * (trial.y - x.y);
        // Clamping can turn a long step uphill; only true descent displacements count.
        if (decrease < 0.0 && e_trial <= s.energy + kArmijo * decrease) {
          x = trial;
          accepted = true;
          break;
        }
        // Close to the minimum the energy is flat to rounding; accept a
        // Newton step that does not raise the energy and shrinks the gradient.
        if (k == 0 && e_trial <= s.energy + 1e-15 * (1.0 + std::abs(s.energy)) && trial.x * trial.x + trial.y * trial.y < 1.0) {
          const Gradient2 gt = reduced_gradient(params, {trial.x, trial.y});
          if (std::hypot(gt[0], gt[1]) < 0.9 * gnorm) {
            x = trial;
            accepted = true;
            break;
          }
        }
      }
      if (accepted) break;
    }
    if (!accepted) {
      out.point = {x.x, x.y};
      out.energy = s.energy;
      out.converged = false;
      out.on_boundary = blocked;
      return out;
    }
  }
  out.point = {x.x, x.y};
  out.energy = energy_at(params, x);
  out.converged = false;
  return out;
}

std::vector<MatterPoint> default_start_set() {
  std::vector<MatterPoint> starts;
  starts.push_back({0.0, 0.0});
  for (int k = 0; k < 8; ++k) {
    const double angle = k * std::numbers::pi / 4.0;
    starts.push_back({0.5 * std::cos(angle), 0.5 * std::sin(angle)});
  }
  starts.push_back({0.95, 0.0});
  starts.push_back({0.0, 0.95});
  starts.push_back({-0.95, 0.0});
  starts.push_back({0.0, -0.95});
  return starts;
}

std::vector<MatterPoint> rim_start_set(const ModelParams& params, int samples, double radius) {
  std::vector<MatterPoint> ring(static_cast<std::size_t>(std::max(samples, 0)));
  std::vector<double> energy(ring.size());
  for (int k = 0; k < samples; ++k) {
    const double angle = 2.0 * std::numbers::pi * k / samples;
    ring[k] = {radius * std::cos(angle), radius * std::sin(angle)};
    energy[k] = reduced_energy(params, ring[k]);
  }
  std::vector<MatterPoint> out;
  for (int k = 0; k < samples && samples >= 3; ++k) {
    const double prev = energy[(k + samples - 1) % samples], next = energy[(k + 1) % samples];
    if (energy[k] < prev && energy[k] <= next) out.push_back(ring[k]);
  }
  return out;
}

MeanFieldSolution solve_ground_state(const ModelParams& params, const SolverOptions& options) {
  require_valid(params);

  struct Candidate {
    MatterPoint point;
    double energy;
    bool converged;
    bool on_boundary;
  };
  std::vector<Candidate> candidates;
  // The normal state is always a critical point with zero energy.
  candidates.push_back({{0.0, 0.0}, 0.0, true, false});

  auto starts = default_start_set();
  const auto rim = rim_start_set(params, options.rim_samples, options.rim_radius);
  starts.insert(starts.end(), rim.begin(), rim.end());
  int failures = 0;
  for (const auto& start : starts) {
    LocalMinimum local = minimize_reduced(params, start, options.local);
    if (!local.converged) ++failures;
    if (!std::isfinite(local.energy)) continue;
    // E0 is even in Psi3; fix the gauge Psi3 >= 0.
    if (local.point.psi3 < 0.0) local.point.psi3 = -local.point.psi3;
    candidates.push_back({local.point, local.energy, local.converged, local.on_boundary});
  }
  if (failures == static_cast<int>(starts.size()))
    throw NumericalError("solve_ground_state: no start converged");

  // Strict minimum in energy; an exact tie prefers psi2 >= 0.
  std::size_t best = 0;
  for (std::size_t i = 1; i < candidates.size(); ++i) {
    const Candidate& c = candidates[i];
    const Candidate& b = candidates[best];
    if (c.energy < b.energy) {
      const double exact_tie = 1e-15 * std::max(1.0, std::abs(b.energy));
      if (b.point.psi2 >= 0.0 && c.point.psi2 < 0.0 && b.energy - c.energy <= exact_tie) continue;
      best = i;
    } else if (c.energy - b.energy <= 1e-15 * std::max(1.0, std::abs(b.energy)) && b.point.psi2 < 0.0 &&
               c.point.psi2 >= 0.0) {
      best = i;
    }
  }

  const Candidate& win = candidates[best];
  MeanFieldSolution sol;
  sol.psi2 = win.point.psi2;
  sol.psi3 = win.point.psi3;
  sol.psi1 = ground_amplitude(win.point);
  const BosonFields bosons = eliminate_bosons(params, win.point);
  sol.phi1 = bosons.phi1;
  sol.phi2 = bosons.phi2;
  sol.e0 = win.energy;
  sol.converged = win.converged;
  sol.on_boundary = win.on_boundary;
  sol.starts_used = static_cast<int>(starts.size());
  for (const Candidate& c : candidates) {
    const double dist = std::hypot(c.point.psi2 - win.point.psi2, c.point.psi3 - win.point.psi3);
    if (dist > 1e-6 && c.energy - win.energy <= options.tie_tol) sol.degenerate = true;
  }
  sol.phase = classify_phase(sol, options.eps_sr).phase;
  return sol;
}

PhaseReport classify_phase(const MeanFieldSolution& s, double eps_sr) {
  PhaseReport r;
  r.phase = s.psi2 * s.psi2 + s.psi3 * s.psi3 <= eps_sr ? Phase::Normal : Phase::Superradiant;
  r.psi2_finite = s.psi2 * s.psi2 > eps_sr;
  r.psi3_finite = s.psi3 * s.psi3 > eps_sr;
  r.phi1_finite = s.phi1 * s.phi1 > eps_sr;
  r.phi2_finite = s.phi2 * s.phi2 > eps_sr;
  return r;
}

}  // namespace ldk
