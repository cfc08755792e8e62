#pragma once

// Test-side oracles, kept independent of the library's own algebra.

#include <cmath>
#include <functional>
#include <limits>

#include "lambdadicke/landscape.hpp"
#include "lambdadicke/model.hpp"

namespace testing_support {

// Tilted-polarization reference point, with chi from the closed-form atomic
// mapping: eps1 . eps2 = alpha = sqrt(0.5), dipoles parallel to their own
// polarization, so alpha12 = alpha21 = alpha and alpha11 = alpha22 = 1.
inline ldk::ModelParams tilted_params(double g1 = 0.0, double g2 = 0.0) {
  const double alpha = std::sqrt(0.5);
  ldk::ModelParams p;
  p.delta = 0.1;
  p.big_delta = 1.0;
  p.omega1 = 0.5;
  p.omega2 = 0.6;
  p.kappa1 = 1.0;
  p.kappa2 = 1.0;
  p.kappa3 = std::sqrt(alpha);  // kappa * sqrt(alpha), kappa = 1
  p.chi1 = alpha * std::sqrt(p.omega1 / p.omega2);
  p.chi2 = alpha * std::sqrt(p.omega2 / p.omega1);
  p.g1 = g1;
  p.g2 = g2;
  return p;
}

inline double tilted_g1_trk() { return std::sqrt(1.0 / 0.5); }        // kappa sqrt(Delta / omega1)
inline double tilted_g2_trk() { return std::sqrt((1.0 - 0.1) / 0.6); }  // kappa sqrt((Delta - delta) / omega2)

// Parameters of the chi/kappa sweep.
inline ldk::ModelParams sweep_params(double chi, double kappa) {
  ldk::ModelParams p;
  p.delta = 0.1;
  p.big_delta = 1.0;
  p.omega1 = 1.0;
  p.omega2 = 0.9;
  p.chi1 = p.chi2 = chi;
  p.kappa1 = p.kappa2 = p.kappa3 = kappa;
  return p;
}

// Mean-field energy written out term by term from the Hamiltonian with
// coherent boson states and a product matter state.
inline double direct_energy(const ldk::ModelParams& p, double psi2, double psi3, double phi1, double phi2) {
  const double psi1 = std::sqrt(std::max(0.0, 1.0 - psi2 * psi2 - psi3 * psi3));
  const double x1 = 2.0 * phi1;  // <a + a^+> / sqrt(N)
  const double x2 = 2.0 * phi2;
  return p.delta * psi2 * psi2 + p.big_delta * psi3 * psi3 + p.omega1 * phi1 * phi1 + p.omega2 * phi2 * phi2 +
         p.g1 * 2.0 * psi1 * psi3 * (x1 + p.chi1 * x2) + p.g2 * 2.0 * psi2 * psi3 * (x2 + p.chi2 * x1) +
         p.kappa1 * p.kappa1 / p.omega1 * x1 * x1 + p.kappa2 * p.kappa2 / p.omega2 * x2 * x2 +
         2.0 * p.kappa3 * p.kappa3 / std::sqrt(p.omega1 * p.omega2) * x1 * x2;
}

// Boson fields minimizing direct_energy, by Newton iterations on the exact
// quadratic (one step suffices; the loop guards against ill-conditioning).
inline ldk::BosonFields argmin_bosons_numeric(const ldk::ModelParams& p, double psi2, double psi3) {
  const double h = 1e-3;
  auto e = [&](double a, double b) { return direct_energy(p, psi2, psi3, a, b); };
  double a = 0.0, b = 0.0;
  for (int it = 0; it < 3; ++it) {
    const double ga = (e(a + h, b) - e(a - h, b)) / (2 * h);
    const double gb = (e(a, b + h) - e(a, b - h)) / (2 * h);
    const double haa = (e(a + h, b) - 2 * e(a, b) + e(a - h, b)) / (h * h);
    const double hbb = (e(a, b + h) - 2 * e(a, b) + e(a, b - h)) / (h * h);
    const double hab = (e(a + h, b + h) - e(a + h, b - h) - e(a - h, b + h) + e(a - h, b - h)) / (4 * h * h);
    const double det = haa * hbb - hab * hab;
    a -= (hbb * ga - hab * gb) / det;
    b -= (haa * gb - hab * ga) / det;
  }
  return {a, b};
}

// Central finite difference of f along one coordinate.
inline double central_difference(const std::function<double(double)>& f, double x, double h) {
  return (f(x + h) - f(x - h)) / (2.0 * h);
}

}  // namespace testing_support
