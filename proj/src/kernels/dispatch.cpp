#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <vector>

#include "lambdadicke/errors.hpp"
#include "lambdadicke/gridcheck.hpp"

namespace ldk::gridcheck {

std::string to_string(Isa isa) { return isa == Isa::Avx2 ? "avx2" : "scalar"; }

bool avx2_available() {
#if defined(__x86_64__) || defined(__i386__)
  return __builtin_cpu_supports("avx2");
#else
  return false;
#endif
}

Isa best_isa() { return avx2_available() ? Isa::Avx2 : Isa::Scalar; }

namespace {

Isa effective(Isa isa) { return (isa == Isa::Avx2 && !avx2_available()) ? Isa::Scalar : isa; }

std::vector<double> axis(double lo, double hi, int n) {
  std::vector<double> out(n);
  for (int i = 0; i < n; ++i) out[i] = lo + (hi - lo) * i / (n - 1);
  return out;
}

// Largest |E(p) - E(center)| over the in-grid 8-neighbourhood; entries of +inf
// (outside the disk) are skipped.
double neighbourhood_variation(const std::vector<double>& e, int n, int ci, int cj) {
  const double center = e[static_cast<std::size_t>(ci) * n + cj];
  double lo = center, hi = center;
  for (int di = -1; di <= 1; ++di)
    for (int dj = -1; dj <= 1; ++dj) {
      const int i = ci + di, j = cj + dj;
      if (i < 0 || j < 0 || i >= n || j >= n) continue;
      const double v = e[static_cast<std::size_t>(i) * n + j];
      if (!std::isfinite(v)) continue;
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
  return hi - lo;
}

}  // namespace

EnergyCoefficients EnergyCoefficients::from(const ModelParams& p) {
  require_valid(p);
  const BosonQuadraticForm q = boson_form(p);
  EnergyCoefficients k;
  k.delta = p.delta;
  k.big_delta = p.big_delta;
  k.g1 = p.g1;
  k.g1_chi1 = p.g1 * p.chi1;
  k.g2 = p.g2;
  k.g2_chi2 = p.g2 * p.chi2;
  k.a1 = q.a1;
  k.a2 = q.a2;
  k.c = q.c;
  k.inv_det = 1.0 / (4.0 * q.a1 * q.a2 - q.c * q.c);
  return k;
}

void reduced_energy_row(const EnergyCoefficients& k, double s, const double* t, double* out, std::size_t n, Isa isa) {
  if (effective(isa) == Isa::Avx2)
    avx2::reduced_energy_row(k, s, t, out, n);
  else
    scalar::reduced_energy_row(k, s, t, out, n);
}

namespace {

std::array<double, 8> full_energy_coefficients(const ModelParams& p, const MatterPoint& m) {
  const double psi1 = ground_amplitude(m);
  const BosonQuadraticForm q = boson_form(p);
  const double s = m.psi2, t = m.psi3;
  return {p.delta * s * s + p.big_delta * t * t,
          q.a1,
          q.a2,
          q.c,
          4.0 * p.g1 * psi1 * t,
          p.chi1,
          4.0 * p.g2 * s * t,
          p.chi2};
}

}  // namespace

void full_energy_row(const ModelParams& p, const MatterPoint& m, double phi1, const double* phi2, double* out,
                     std::size_t n, Isa isa) {
  const auto coeff = full_energy_coefficients(p, m);
  if (effective(isa) == Isa::Avx2)
    avx2::full_energy_row(coeff.data(), phi1, phi2, out, n);
  else
    scalar::full_energy_row(coeff.data(), phi1, phi2, out, n);
}

GridMinimum disk_grid_minimum(const ModelParams& p, int n, Isa isa) {
  if (n < 3) throw ValidationError("grid needs at least 3 points per axis");
  const EnergyCoefficients k = EnergyCoefficients::from(p);
  const std::vector<double> ax = axis(-1.0, 1.0, n);
  std::vector<double> e(static_cast<std::size_t>(n) * n);
  for (int i = 0; i < n; ++i) reduced_energy_row(k, ax[i], ax.data(), e.data() + static_cast<std::size_t>(i) * n, n, isa);

  GridMinimum out;
  out.energy = std::numeric_limits<double>::infinity();
  int bi = 0, bj = 0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const double v = e[static_cast<std::size_t>(i) * n + j];
      if (!std::isfinite(v)) continue;
      ++out.points;
      if (v < out.energy) {
        out.energy = v;
        bi = i;
        bj = j;
      }
    }
  out.psi2 = ax[bi];
  out.psi3 = ax[bj];
  out.cell_variation = neighbourhood_variation(e, n, bi, bj);
  return out;
}

BosonGridMinimum boson_grid_minimum(const ModelParams& p, const MatterPoint& m, const BosonFields& center,
                                    double half_width, int n, Isa isa) {
  if (n < 3) throw ValidationError("grid needs at least 3 points per axis");
  if (!(half_width > 0.0)) throw ValidationError("grid half width must be > 0");
  const auto coeff = full_energy_coefficients(p, m);
  const std::vector<double> ax1 = axis(center.phi1 - half_width, center.phi1 + half_width, n);
  const std::vector<double> ax2 = axis(center.phi2 - half_width, center.phi2 + half_width, n);
  std::vector<double> e(static_cast<std::size_t>(n) * n);
  const bool wide = effective(isa) == Isa::Avx2;
  for (int i = 0; i < n; ++i) {
    double* row = e.data() + static_cast<std::size_t>(i) * n;
    if (wide)
      avx2::full_energy_row(coeff.data(), ax1[i], ax2.data(), row, n);
    else
      scalar::full_energy_row(coeff.data(), ax1[i], ax2.data(), row, n);
  }
  const auto best = std::min_element(e.begin(), e.end()) - e.begin();
  const int bi = static_cast<int>(best / n), bj = static_cast<int>(best % n);
  BosonGridMinimum out;
  out.energy = e[best];
  out.fields = {ax1[bi], ax2[bj]};
  out.cell_variation = neighbourhood_variation(e, n, bi, bj);
  return out;
}

}  // namespace ldk::gridcheck
