#include "lambdadicke/landscape.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "lambdadicke/errors.hpp"

namespace ldk {

namespace {

// Boundary slack for the unit-disk constraint: points this far outside
// still count as on the circle (psi1 = 0).
constexpr double kDiskSlack = 1e-14;

struct Vec2 {
  double x = 0.0;
  double y = 0.0;
};

// W = u^T M u with M = [[a2, -c/2], [-c/2, a1]] / (4 a1 a2 - c^2). The
// eliminated-boson energy is delta s^2 + Delta t^2 - 16 t^2 W(u), where
// u = g1 psi1 e + s f, e = (1, chi1), f = g2 (chi2, 1).
struct ReducedForm {
  double m11, m12, m22;
  Vec2 e, f;
  double g1;

  explicit ReducedForm(const ModelParams& p) {
    const BosonQuadraticForm q = boson_form(p);
    const double det = q.determinant();
    m11 = q.a2 / det;
    m12 = -0.5 * q.c / det;
    m22 = q.a1 / det;
    e = {1.0, p.chi1};
    f = {p.g2 * p.chi2, p.g2};
    g1 = p.g1;
  }

  double quad(const Vec2& a, const Vec2& b) const {
    return a.x * (m11 * b.x + m12 * b.y) + a.y * (m12 * b.x + m22 * b.y);
  }
};

}  // namespace

BosonQuadraticForm boson_form(const ModelParams& p) {
  BosonQuadraticForm q;
  q.a1 = p.omega1 + 4.0 * p.kappa1 * p.kappa1 / p.omega1;
  q.a2 = p.omega2 + 4.0 * p.kappa2 * p.kappa2 / p.omega2;
  q.c = 8.0 * p.kappa3 * p.kappa3 / std::sqrt(p.omega1 * p.omega2);
  return q;
}

double ground_amplitude(const MatterPoint& m) {
  const double r2 = m.radius_sq();
  if (!(r2 <= 1.0 + kDiskSlack)) throw ValidationError("matter point outside the unit disk: Psi2^2 + Psi3^2 > 1");
  return std::sqrt(std::max(0.0, 1.0 - r2));
}

double full_energy(const ModelParams& p, const MatterPoint& m, const BosonFields& b) {
  const double psi1 = ground_amplitude(m);
  const BosonQuadraticForm q = boson_form(p);
  const double s = m.psi2;
  const double t = m.psi3;
  return p.delta * s * s + p.big_delta * t * t + q.a1 * b.phi1 * b.phi1 + q.a2 * b.phi2 * b.phi2 +
         4.0 * p.g1 * psi1 * t * (b.phi1 + p.chi1 * b.phi2) + 4.0 * p.g2 * s * t * (b.phi2 + p.chi2 * b.phi1) +
         q.c * b.phi1 * b.phi2;
}

BosonFields eliminate_bosons(const ModelParams& p, const MatterPoint& m) {
  const double psi1 = ground_amplitude(m);
  const BosonQuadraticForm q = boson_form(p);
  const double det = q.determinant();
  if (!(det > 0.0)) throw NumericalError("eliminate_bosons: boson quadratic form is not positive definite");
  const double s = m.psi2;
  const double t = m.psi3;
  const double b1 = 4.0 * t * (p.g1 * psi1 + p.chi2 * p.g2 * s);
  const double b2 = 4.0 * t * (p.chi1 * p.g1 * psi1 + p.g2 * s);
  // [[2a1, c], [c, 2a2]] phi = -b
  return {-(2.0 * q.a2 * b1 - q.c * b2) / det, -(2.0 * q.a1 * b2 - q.c * b1) / det};
}

double reduced_energy(const ModelParams& p, const MatterPoint& m) {
  const double psi1 = ground_amplitude(m);
  const ReducedForm r(p);
  const double s = m.psi2;
  const double t = m.psi3;
  const Vec2 u{r.g1 * psi1 * r.e.x + s * r.f.x, r.g1 * psi1 * r.e.y + s * r.f.y};
  return p.delta * s * s + p.big_delta * t * t - 16.0 * t * t * r.quad(u, u);
}

LandscapeSample sample_landscape(const ModelParams& p, const MatterPoint& m) {
  const double s = m.psi2;
  const double t = m.psi3;
  const double r2 = m.radius_sq();
  if (!(r2 < 1.0)) throw std::domain_error("reduced-energy derivatives undefined on the unit circle");
  const double psi1 = std::sqrt(1.0 - r2);
  const double psi1_cubed = psi1 * psi1 * psi1;

  const double dpsi_s = -s / psi1;
  const double dpsi_t = -t / psi1;
  const double dpsi_ss = -(1.0 - t * t) / psi1_cubed;
  const double dpsi_tt = -(1.0 - s * s) / psi1_cubed;
  const double dpsi_st = -s * t / psi1_cubed;

  const ReducedForm r(p);
  const Vec2& e = r.e;
  const double g1 = r.g1;
  const Vec2 u{g1 * psi1 * e.x + s * r.f.x, g1 * psi1 * e.y + s * r.f.y};
  const Vec2 u_s{g1 * dpsi_s * e.x + r.f.x, g1 * dpsi_s * e.y + r.f.y};
  const Vec2 u_t{g1 * dpsi_t * e.x, g1 * dpsi_t * e.y};
  const Vec2 u_ss{g1 * dpsi_ss * e.x, g1 * dpsi_ss * e.y};
  const Vec2 u_tt{g1 * dpsi_tt * e.x, g1 * dpsi_tt * e.y};
  const Vec2 u_st{g1 * dpsi_st * e.x, g1 * dpsi_st * e.y};

  const double w = r.quad(u, u);
  const double w_s = 2.0 * r.quad(u, u_s);
  const double w_t = 2.0 * r.quad(u, u_t);
  const double w_ss = 2.0 * (r.quad(u_s, u_s) + r.quad(u, u_ss));
  const double w_tt = 2.0 * (r.quad(u_t, u_t) + r.quad(u, u_tt));
  const double w_st = 2.0 * (r.quad(u_s, u_t) + r.quad(u, u_st));

  LandscapeSample out;
  out.energy = p.delta * s * s + p.big_delta * t * t - 16.0 * t * t * w;
  out.gradient = {2.0 * p.delta * s - 16.0 * t * t * w_s,
                  2.0 * p.big_delta * t - 32.0 * t * w - 16.0 * t * t * w_t};
  const double h_ss = 2.0 * p.delta - 16.0 * t * t * w_ss;
  const double h_st = -32.0 * t * w_s - 16.0 * t * t * w_st;
  const double h_tt = 2.0 * p.big_delta - 32.0 * w - 64.0 * t * w_t - 16.0 * t * t * w_tt;
  out.hessian = {{{h_ss, h_st}, {h_st, h_tt}}};
  return out;
}

Gradient2 reduced_gradient(const ModelParams& p, const MatterPoint& m) { return sample_landscape(p, m).gradient; }

Hessian2 reduced_hessian(const ModelParams& p, const MatterPoint& m) { return sample_landscape(p, m).hessian; }

std::optional<double> critical_coupling_g1c(const ModelParams& p) {
  const double k1 = 4.0 * p.kappa1 * p.kappa1 / (p.omega1 * p.omega1);
  const double k2 = 4.0 * p.kappa2 * p.kappa2 / (p.omega2 * p.omega2);
  const double k3sq = p.kappa3 * p.kappa3;
  const double numerator = (1.0 + k1) * (1.0 + k2) - 16.0 * k3sq * k3sq / (p.omega1 * p.omega1 * p.omega2 * p.omega2);
  const double denominator = 1.0 + k2 + p.omega1 / p.omega2 * p.chi1 * p.chi1 * (1.0 + k1) -
                             8.0 * k3sq / (p.omega2 * p.omega2) * p.chi1 * std::sqrt(p.omega2 / p.omega1);
  if (!(denominator > 0.0) || !(numerator >= 0.0)) return std::nullopt;
  return std::sqrt(p.big_delta * p.omega1 / 4.0 * numerator / denominator);
}

std::array<double, 2> symmetric_eigenvalues(const Hessian2& h) {
  const double mean = 0.5 * (h[0][0] + h[1][1]);
  const double half_diff = 0.5 * (h[0][0] - h[1][1]);
  const double radius = std::hypot(half_diff, h[0][1]);
  return {mean - radius, mean + radius};
}

bool normal_state_stable(const ModelParams& p, double rel_tol) {
  const Hessian2 h = reduced_hessian(p, MatterPoint{});
  const double scale = std::max({std::abs(h[0][0]), std::abs(h[0][1]), std::abs(h[1][1])});
  const auto eig = symmetric_eigenvalues(h);
  return eig[0] > -rel_tol * scale;
}

}  // namespace ldk
