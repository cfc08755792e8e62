#pragma once

// Brute-force grid oracles for the mean-field energy. Scalar reference
// kernels and AVX2 variants compute bitwise-identical results; the variant
// is picked at run time.

#include <cstddef>
#include <string>

#include "lambdadicke/landscape.hpp"
#include "lambdadicke/model.hpp"

namespace ldk::gridcheck {

enum class Isa { Scalar, Avx2 };
std::string to_string(Isa isa);

bool avx2_available();
/// Best variant supported by this CPU.
Isa best_isa();

/**
 * Energy with the bosons eliminated through the 2x2 linear system
 *   E = delta s^2 + Delta t^2 - (a2 b1^2 - c b1 b2 + a1 b2^2) / (4 a1 a2 - c^2)
 * with b the linear boson coefficients. Algebraically equal to
 * ldk::reduced_energy but evaluated along a separate route.
 */
struct EnergyCoefficients {
  double delta, big_delta;
  double g1, g1_chi1;  // g1, g1 chi1
  double g2, g2_chi2;  // g2, g2 chi2
  double a1, a2, c;
  double inv_det;      // 1 / (4 a1 a2 - c^2)

  static EnergyCoefficients from(const ModelParams& params);
};

/// Energies at (s, t[k]) for k < n; points outside the unit disk get +inf.
void reduced_energy_row(const EnergyCoefficients& k, double s, const double* t, double* out, std::size_t n, Isa isa);

/// full_energy at fixed matter for (phi1, phi2[k]), k < n.
void full_energy_row(const ModelParams& params, const MatterPoint& matter, double phi1, const double* phi2,
                     double* out, std::size_t n, Isa isa);

struct GridMinimum {
  double energy = 0.0;
  double psi2 = 0.0;
  double psi3 = 0.0;
  // Largest energy difference among the argmin and its in-disk neighbours:
  // the resolution of the grid at the minimum.
  double cell_variation = 0.0;
  std::size_t points = 0;  // grid points inside the disk
};

/// Argmin of the reduced energy over an n x n grid of [-1, 1]^2 restricted
/// to the closed unit disk.
GridMinimum disk_grid_minimum(const ModelParams& params, int points_per_axis = 2001, Isa isa = best_isa());

struct BosonGridMinimum {
  double energy = 0.0;
  BosonFields fields;
  double cell_variation = 0.0;
};

/// Minimum of full_energy over an n x n grid of boson fields in
/// [center - half_width, center + half_width]^2.
BosonGridMinimum boson_grid_minimum(const ModelParams& params, const MatterPoint& matter, const BosonFields& center,
                                    double half_width, int points_per_axis = 401, Isa isa = best_isa());

namespace scalar {
void reduced_energy_row(const EnergyCoefficients& k, double s, const double* t, double* out, std::size_t n);
void full_energy_row(const double* coeff, double phi1, const double* phi2, double* out, std::size_t n);
}  // namespace scalar

namespace avx2 {
void reduced_energy_row(const EnergyCoefficients& k, double s, const double* t, double* out, std::size_t n);
void full_energy_row(const double* coeff, double phi1, const double* phi2, double* out, std::size_t n);
}  // namespace avx2

}  // namespace ldk::gridcheck
