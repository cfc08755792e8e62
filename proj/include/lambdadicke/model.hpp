#pragma once

#include <array>
#include <string>
#include <vector>

namespace ldk {

using Vec3 = std::array<double, 3>;

/**
 * Couplings and energies of the two-mode lambda Hamiltonian
 *
 *   H = sum_n E_n I_n^n + sum_n omega_n a_n^+ a_n
 *     + g1/sqrt(N) (I_3^1 + I_1^3) [X_1 + chi1 X_2]
 *     + g2/sqrt(N) (I_3^2 + I_2^3) [X_2 + chi2 X_1]
 *     + sum_n kappa_n^2/omega_n X_n^2 + 2 kappa3^2/sqrt(omega1 omega2) X_1 X_2
 *
 * with X_n = a_n^+ + a_n, E1 = 0, E2 = delta, E3 = big_delta.
 * All energies are in one caller-chosen unit.
 */
struct ModelParams {
  double delta = 0.0;      // E2 - E1
  double big_delta = 1.0;  // E3 - E1
  double omega1 = 1.0;
  double omega2 = 1.0;
  double g1 = 0.0;
  double g2 = 0.0;
  double chi1 = 0.0;
  double chi2 = 0.0;
  double kappa1 = 0.0;
  double kappa2 = 0.0;
  double kappa3 = 0.0;
};

struct Violation {
  std::string field;
  std::string rule;
};

/// Empty iff every invariant of ModelParams holds.
std::vector<Violation> validate(const ModelParams& params);

/// Throws ValidationError listing all violations.
void require_valid(const ModelParams& params);

struct TrkBounds {
  double g1_trk = 0.0;
  double g2_trk = 0.0;
};

/// Largest couplings compatible with the Thomas-Reiche-Kuhn sum rule for
/// diamagnetic strength `kappa`.
TrkBounds trk_bounds(const ModelParams& params, double kappa);

struct TrkCompliance {
  bool compliant = false;
  double slack1 = 0.0;  // g1_trk - g1
  double slack2 = 0.0;  // g2_trk - g2
};

TrkCompliance check_trk_compliance(const ModelParams& params, double kappa);

/**
 * Microscopic description of atoms in a two-mode resonator. The dipole
 * element d12 between the two ground states is taken to vanish. The
 * coupling scales g1, g2 are given directly rather than through cavity
 * volume and dipole magnitudes.
 */
struct AtomicConfig {
  double big_delta = 1.0;
  double delta = 0.0;
  double omega1 = 1.0;
  double omega2 = 1.0;
  double kappa = 0.0;
  Vec3 eps1{1.0, 0.0, 0.0};
  Vec3 eps2{0.0, 1.0, 0.0};
  Vec3 d31{1.0, 0.0, 0.0};
  Vec3 d32{0.0, 1.0, 0.0};
  double g1 = 0.0;
  double g2 = 0.0;
};

struct AtomicMapping {
  ModelParams params;
  double alpha = 0.0;  // eps1 . eps2
  // alpha_nl = |d_3n . eps_l| / |d_3n|
  double alpha11 = 0.0;
  double alpha12 = 0.0;
  double alpha21 = 0.0;
  double alpha22 = 0.0;
  TrkBounds bounds;
  TrkCompliance compliance;
};

/// Maps the atomic description onto the abstract couplings:
/// chi_n = (alpha_nn' / alpha_nn) sqrt(omega_n / omega_n'), kappa1 = kappa2 = kappa,
/// kappa3 = kappa sqrt(alpha). Rejects alpha < 0 and dipoles orthogonal to
/// their own mode. Parallel polarizations (alpha = 1) need explicit opt-in.
AtomicMapping from_atomic(const AtomicConfig& cfg, bool allow_parallel_polarizations = false);

}  // namespace ldk
