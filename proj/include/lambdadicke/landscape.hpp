#pragma once

#include <array>
#include <optional>

#include "lambdadicke/model.hpp"

namespace ldk {

/// Matter mean fields (Psi2, Psi3); the ground-level amplitude
/// psi1 = sqrt(1 - Psi2^2 - Psi3^2) is derived.
struct MatterPoint {
  double psi2 = 0.0;
  double psi3 = 0.0;

  double radius_sq() const { return psi2 * psi2 + psi3 * psi3; }
};

struct BosonFields {
  double phi1 = 0.0;
  double phi2 = 0.0;
};

/// Quadratic part a1 phi1^2 + a2 phi2^2 + c phi1 phi2 of the mean-field
/// energy in the boson amplitudes.
///
/// The diagonal entries are omega_n + 4 kappa_n^2 / omega_n: the mean-field
/// value of kappa_n^2/omega_n (a_n^+ + a_n)^2. (A printed form of the
/// energy with 4 kappa_n / omega_n is a typo; the stability bound carries
/// kappa_n^2 consistently.)
struct BosonQuadraticForm {
  double a1 = 0.0;
  double a2 = 0.0;
  double c = 0.0;

  double determinant() const { return 4.0 * a1 * a2 - c * c; }
};

using Gradient2 = std::array<double, 2>;
using Hessian2 = std::array<std::array<double, 2>, 2>;

BosonQuadraticForm boson_form(const ModelParams& params);

/// psi1 for a point of the closed unit disk; throws ValidationError outside.
double ground_amplitude(const MatterPoint& m);

/// Mean-field ground-state energy per atom (relative to E1) at arbitrary
/// matter and boson amplitudes.
double full_energy(const ModelParams& params, const MatterPoint& m, const BosonFields& b);

/// Minimizes full_energy over (phi1, phi2) at fixed matter fields. The
/// minimizer is unique because the boson form is positive definite.
BosonFields eliminate_bosons(const ModelParams& params, const MatterPoint& m);

/// full_energy with the bosons eliminated: a function of (Psi2, Psi3) only.
double reduced_energy(const ModelParams& params, const MatterPoint& m);

/// Analytic derivatives with respect to (Psi2, Psi3). Defined only in the
/// open unit disk; throw std::domain_error when psi1 == 0.
Gradient2 reduced_gradient(const ModelParams& params, const MatterPoint& m);
Hessian2 reduced_hessian(const ModelParams& params, const MatterPoint& m);

/// Energy, gradient and Hessian in one pass (what the minimizer uses).
struct LandscapeSample {
  double energy = 0.0;
  Gradient2 gradient{};
  Hessian2 hessian{};
};
LandscapeSample sample_landscape(const ModelParams& params, const MatterPoint& m);

/// Closed-form coupling g1,c above which the normal state stops being a
/// local minimum. Independent of g2. Returns nullopt when the denominator of
/// the closed form is not positive (only possible for invalid parameters).
std::optional<double> critical_coupling_g1c(const ModelParams& params);

/// Positive-semidefiniteness of the reduced Hessian at the origin, judged
/// by eigenvalues > -rel_tol * max|H_ij|.
bool normal_state_stable(const ModelParams& params, double rel_tol = 1e-10);

/// Eigenvalues of a symmetric 2x2 matrix, ascending.
std::array<double, 2> symmetric_eigenvalues(const Hessian2& h);

}  // namespace ldk
