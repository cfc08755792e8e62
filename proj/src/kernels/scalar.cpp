#include <algorithm>
#include <cmath>
#include <limits>

#include "lambdadicke/gridcheck.hpp"

namespace ldk::gridcheck::scalar {

// Reference kernels. The AVX2 variants perform the same operations in the
// same order, so results agree bit for bit.

void reduced_energy_row(const EnergyCoefficients& k, double s, const double* t, double* out, std::size_t n) {
  const double ss = s * s;
  const double ds = k.delta * ss;
  const double g2_s = k.g2 * s;
  const double g2chi2_s = k.g2_chi2 * s;
  const double inf = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < n; ++i) {
    const double tt = t[i] * t[i];
    const double r2 = ss + tt;
    const double psi1 = std::sqrt(std::max(0.0, 1.0 - r2));
    const double f1 = k.g1 * psi1 + g2chi2_s;
    const double f2 = k.g1_chi1 * psi1 + g2_s;
    const double four_t = 4.0 * t[i];
    const double b1 = four_t * f1;
    const double b2 = four_t * f2;
    const double q = (k.a2 * b1 * b1 - k.c * b1 * b2) + k.a1 * b2 * b2;
    const double e = (ds + k.big_delta * tt) - q * k.inv_det;
    out[i] = r2 <= 1.0 ? e : inf;
  }
}

// coeff = {base, a1, a2, c, p1, chi1, p2, chi2}:
// E = base + a1 phi1^2 + a2 phi2^2 + p1 (phi1 + chi1 phi2) + p2 (phi2 + chi2 phi1) + c phi1 phi2
void full_energy_row(const double* coeff, double phi1, const double* phi2, double* out, std::size_t n) {
  const double head = coeff[0] + coeff[1] * phi1 * phi1;
  const double chi2_phi1 = coeff[7] * phi1;
  const double c_phi1 = coeff[3] * phi1;
  for (std::size_t i = 0; i < n; ++i) {
    const double y = phi2[i];
    const double e = head + coeff[2] * y * y;
    const double e1 = e + coeff[4] * (phi1 + coeff[5] * y);
    const double e2 = e1 + coeff[6] * (y + chi2_phi1);
    out[i] = e2 + c_phi1 * y;
  }
}

}  // namespace ldk::gridcheck::scalar
