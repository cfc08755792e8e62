#include <cmath>
#include <limits>

#include "lambdadicke/gridcheck.hpp"

#if defined(__x86_64__) || defined(__i386__)
#include <immintrin.h>
#define LDK_HAVE_X86 1
#else
#define LDK_HAVE_X86 0
#endif

namespace ldk::gridcheck::avx2 {

#if LDK_HAVE_X86

// Four lanes per step, scalar reference kernels for the tail. Operation order
// mirrors scalar.cpp; the library is built without FMA contraction.

__attribute__((target("avx2"))) void reduced_energy_row(const EnergyCoefficients& k, double s, const double* t,
                                                        double* out, std::size_t n) {
  const double ss = s * s;
  const double ds = k.delta * ss;
  const double g2_s = k.g2 * s;
  const double g2chi2_s = k.g2_chi2 * s;

  const __m256d v_ss = _mm256_set1_pd(ss);
  const __m256d v_ds = _mm256_set1_pd(ds);
  const __m256d v_one = _mm256_set1_pd(1.0);
  const __m256d v_zero = _mm256_setzero_pd();
  const __m256d v_four = _mm256_set1_pd(4.0);
  const __m256d v_inf = _mm256_set1_pd(std::numeric_limits<double>::infinity());
  const __m256d v_g1 = _mm256_set1_pd(k.g1);
  const __m256d v_g1chi1 = _mm256_set1_pd(k.g1_chi1);
  const __m256d v_g2s = _mm256_set1_pd(g2_s);
  const __m256d v_g2chi2s = _mm256_set1_pd(g2chi2_s);
  const __m256d v_a1 = _mm256_set1_pd(k.a1);
  const __m256d v_a2 = _mm256_set1_pd(k.a2);
  const __m256d v_c = _mm256_set1_pd(k.c);
  const __m256d v_bd = _mm256_set1_pd(k.big_delta);
  const __m256d v_inv = _mm256_set1_pd(k.inv_det);

  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d vt = _mm256_loadu_pd(t + i);
    const __m256d tt = _mm256_mul_pd(vt, vt);
    const __m256d r2 = _mm256_add_pd(v_ss, tt);
    // Yields +0 for x <= 0, exactly like std::max(0.0, x).
    const __m256d psi1 = _mm256_sqrt_pd(_mm256_max_pd(_mm256_sub_pd(v_one, r2), v_zero));
    const __m256d f1 = _mm256_add_pd(_mm256_mul_pd(v_g1, psi1), v_g2chi2s);
    const __m256d f2 = _mm256_add_pd(_mm256_mul_pd(v_g1chi1, psi1), v_g2s);
    const __m256d four_t = _mm256_mul_pd(v_four, vt);
    const __m256d b1 = _mm256_mul_pd(four_t, f1);
    const __m256d b2 = _mm256_mul_pd(four_t, f2);
    const __m256d q = _mm256_add_pd(
        _mm256_sub_pd(_mm256_mul_pd(_mm256_mul_pd(v_a2, b1), b1), _mm256_mul_pd(_mm256_mul_pd(v_c, b1), b2)),
        _mm256_mul_pd(_mm256_mul_pd(v_a1, b2), b2));
    const __m256d e = _mm256_sub_pd(_mm256_add_pd(v_ds, _mm256_mul_pd(v_bd, tt)), _mm256_mul_pd(q, v_inv));
    const __m256d inside = _mm256_cmp_pd(r2, v_one, _CMP_LE_OQ);
    _mm256_storeu_pd(out + i, _mm256_blendv_pd(v_inf, e, inside));
  }
  if (i < n) scalar::reduced_energy_row(k, s, t + i, out + i, n - i);
}

__attribute__((target("avx2"))) void full_energy_row(const double* coeff, double phi1, const double* phi2,
                                                     double* out, std::size_t n) {
  const double head = coeff[0] + coeff[1] * phi1 * phi1;
  const double chi2_phi1 = coeff[7] * phi1;
  const double c_phi1 = coeff[3] * phi1;

  const __m256d v_head = _mm256_set1_pd(head);
  const __m256d v_a2 = _mm256_set1_pd(coeff[2]);
  const __m256d v_p1 = _mm256_set1_pd(coeff[4]);
  const __m256d v_chi1 = _mm256_set1_pd(coeff[5]);
  const __m256d v_p2 = _mm256_set1_pd(coeff[6]);
  const __m256d v_phi1 = _mm256_set1_pd(phi1);
  const __m256d v_chi2phi1 = _mm256_set1_pd(chi2_phi1);
  const __m256d v_cphi1 = _mm256_set1_pd(c_phi1);

  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d y = _mm256_loadu_pd(phi2 + i);
    const __m256d e = _mm256_add_pd(v_head, _mm256_mul_pd(_mm256_mul_pd(v_a2, y), y));
    const __m256d e1 = _mm256_add_pd(e, _mm256_mul_pd(v_p1, _mm256_add_pd(v_phi1, _mm256_mul_pd(v_chi1, y))));
    const __m256d e2 = _mm256_add_pd(e1, _mm256_mul_pd(v_p2, _mm256_add_pd(y, v_chi2phi1)));
    _mm256_storeu_pd(out + i, _mm256_add_pd(e2, _mm256_mul_pd(v_cphi1, y)));
  }
  if (i < n) scalar::full_energy_row(coeff, phi1, phi2 + i, out + i, n - i);
}

#else

void reduced_energy_row(const EnergyCoefficients& k, double s, const double* t, double* out, std::size_t n) {
  scalar::reduced_energy_row(k, s, t, out, n);
}

void full_energy_row(const double* coeff, double phi1, const double* phi2, double* out, std::size_t n) {
  scalar::full_energy_row(coeff, phi1, phi2, out, n);
}

#endif

}  // namespace ldk::gridcheck::avx2
