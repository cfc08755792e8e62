#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <random>
#include <vector>

namespace ldk::nogo {

/**
 * Single-mode model of nu-level atoms with a diamagnetic term:
 *
 *   H = sum_n E_n I_n^n + omega a^+ a + kappa^2/omega (a^+ + a)^2
 *     + sum_{n,m} g_{n,m} / (2 sqrt(N)) (I_n^m + I_m^n)(a^+ + a)
 *
 * Energies strictly increasing; g symmetric with zero diagonal.
 */
struct MultiLevelModel {
  std::vector<double> energies;
  Eigen::MatrixXd couplings;
  double omega = 1.0;
  double kappa = 0.0;

  int levels() const { return static_cast<int>(energies.size()); }
};

/// Throws ValidationError if an invariant fails.
void validate(const MultiLevelModel& model);

struct TrkReport {
  bool satisfied = false;
  std::vector<double> sums;    // per level m: sum_{n != m} g_{n,m}^2 / (E_n - E_m)
  std::vector<double> slacks;  // kappa^2/omega - sums[m]
};

/// Sum rules, one per level; satisfied within a relative 1e-12 of kappa^2/omega.
TrkReport trk_satisfied(const MultiLevelModel& model);

/// f_{n,m} = g_{n,m}^2 omega / ((E_n - E_m) kappa^2); each column sums to
/// at most 1 under the sum rule, exactly 1 at saturation.
Eigen::MatrixXd oscillator_strengths(const MultiLevelModel& model);

/// Hessian of the mean-field energy at the normal state, ordered
/// (phi, Psi_2, ..., Psi_nu):
///   2 [[omega + 4kappa^2/omega, 2g_{2,1}, ...], [2g_{2,1}, E_{2,1}, 0, ...], ...]
Eigen::MatrixXd normal_hessian(const MultiLevelModel& model);

/// Mean-field energy per atom, second-order expansion about the normal state.
double energy_quadratic(const MultiLevelModel& model, const Eigen::VectorXd& psi, double phi);

/// Full mean-field energy per atom; psi holds (Psi_2, ..., Psi_nu) with
/// sum Psi_n^2 <= 1. Spot evaluation only.
double energy_full(const MultiLevelModel& model, const Eigen::VectorXd& psi, double phi);

struct DefinitenessVerdict {
  bool positive_definite = false;     // from trailing principal minors
  double x = 0.0;                     // omega + 4kappa^2/omega - 4 sum g_{n,1}^2 / E_{n,1}
  std::vector<double> minors;         // k-th: determinant after deleting the first nu-k rows/columns
  bool trk = false;                   // the sum rules hold
  bool x_at_least_omega = false;      // X >= omega within 1e-12 * scale
  bool eigen_positive_definite = false;
  double min_eigenvalue = 0.0;
};

DefinitenessVerdict check_positive_definite(const MultiLevelModel& model);

struct GeneratorOptions {
  int min_levels = 2;
  int max_levels = 6;
  double energy_span = 5.0;  // E_1 = 0, E_n uniform in (0, energy_span]
  double fill_min = 0.05;    // TRK fill factor of level 1 drawn in [fill_min, fill_max]
  double fill_max = 1.0;
};

/// Random TRK-compliant model. Level-1 oscillator strengths are drawn on the
/// simplex and scaled to a fill factor; upper couplings are drawn and then
/// scaled so that every level's sum rule holds.
MultiLevelModel random_trk_model(std::mt19937_64& rng, const GeneratorOptions& options = {});

struct SumRuleCheck {
  double lhs = 0.0;  // sum_n (E_n - E_l) <l|O|n><n|O|l>
  double rhs = 0.0;  // 1/2 <l|[O,[H,O]]|l>
  double residual = 0.0;
};

/// Checks sum_n (E_n - E_l) |<l|O|n>|^2 = 1/2 <l|[O,[H,O]]|l> for eigenstate
/// l (ascending energy order) of Hermitian H.
SumRuleCheck sum_rule_identity_check(const Eigen::MatrixXcd& hamiltonian, const Eigen::MatrixXcd& observable,
                                     int level);

/// Random Hermitian matrix with entries of order one.
Eigen::MatrixXcd random_hermitian(std::mt19937_64& rng, int dim);

}  // namespace ldk::nogo
