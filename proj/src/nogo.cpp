#include "lambdadicke/nogo.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>

#include "lambdadicke/errors.hpp"

namespace ldk::nogo {

void validate(const MultiLevelModel& model) {
  const int nu = model.levels();
  if (nu < 2) throw ValidationError("multilevel model needs at least two levels");
  for (int n = 0; n < nu; ++n) {
    if (!std::isfinite(model.energies[n])) throw ValidationError("energies must be finite");
    if (n > 0 && !(model.energies[n] > model.energies[n - 1]))
      throw ValidationError("energies must be strictly increasing (non-degenerate)");
  }
  if (model.couplings.rows() != nu || model.couplings.cols() != nu)
    throw ValidationError("coupling matrix must be nu x nu");
  for (int n = 0; n < nu; ++n) {
    if (model.couplings(n, n) != 0.0) throw ValidationError("coupling matrix must have zero diagonal");
    for (int m = 0; m < n; ++m) {
      if (!std::isfinite(model.couplings(n, m))) throw ValidationError("couplings must be finite");
      if (model.couplings(n, m) != model.couplings(m, n)) throw ValidationError("coupling matrix must be symmetric");
    }
  }
  if (!(model.omega > 0.0) || !std::isfinite(model.omega)) throw ValidationError("omega must be > 0");
  if (!(model.kappa >= 0.0) || !std::isfinite(model.kappa)) throw ValidationError("kappa must be >= 0");
}

TrkReport trk_satisfied(const MultiLevelModel& model) {
  validate(model);
  const int nu = model.levels();
  const double bound = model.kappa * model.kappa / model.omega;
  TrkReport r;
  r.satisfied = true;
  for (int m = 0; m < nu; ++m) {
    double sum = 0.0;
    for (int n = 0; n < nu; ++n) {
      if (n == m) continue;
      const double g = model.couplings(n, m);
      sum += g * g / (model.energies[n] - model.energies[m]);
    }
    r.sums.push_back(sum);
    r.slacks.push_back(bound - sum);
    if (sum > bound * (1.0 + 1e-12) + 1e-300) r.satisfied = false;
  }
  return r;
}

Eigen::MatrixXd oscillator_strengths(const MultiLevelModel& model) {
  validate(model);
  if (!(model.kappa > 0.0)) throw ValidationError("oscillator strengths need kappa > 0");
  const int nu = model.levels();
  Eigen::MatrixXd f = Eigen::MatrixXd::Zero(nu, nu);
  const double k2 = model.kappa * model.kappa;
  for (int m = 0; m < nu; ++m)
    for (int n = 0; n < nu; ++n)
      if (n != m) {
        const double g = model.couplings(n, m);
        f(n, m) = g * g * model.omega / ((model.energies[n] - model.energies[m]) * k2);
      }
  return f;
}

Eigen::MatrixXd normal_hessian(const MultiLevelModel& model) {
  validate(model);
  const int nu = model.levels();
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(nu, nu);
  h(0, 0) = model.omega + 4.0 * model.kappa * model.kappa / model.omega;
  for (int n = 1; n < nu; ++n) {
    h(0, n) = h(n, 0) = 2.0 * model.couplings(n, 0);
    h(n, n) = model.energies[n] - model.energies[0];
  }
  return 2.0 * h;
}

double energy_quadratic(const MultiLevelModel& model, const Eigen::VectorXd& psi, double phi) {
  const int nu = model.levels();
  if (psi.size() != nu - 1) throw ValidationError("psi must hold nu - 1 amplitudes");
  double e = model.energies[0] + (model.omega + 4.0 * model.kappa * model.kappa / model.omega) * phi * phi;
  for (int n = 1; n < nu; ++n) {
    const double p = psi[n - 1];
    e += (model.energies[n] - model.energies[0]) * p * p + 4.0 * model.couplings(n, 0) * p * phi;
  }
  return e;
}

double energy_full(const MultiLevelModel& model, const Eigen::VectorXd& psi, double phi) {
  const int nu = model.levels();
  if (psi.size() != nu - 1) throw ValidationError("psi must hold nu - 1 amplitudes");
  const double norm_sq = psi.squaredNorm();
  if (norm_sq > 1.0 + 1e-14) throw ValidationError("sum of Psi_n^2 exceeds 1");
  const double psi1 = std::sqrt(std::max(0.0, 1.0 - norm_sq));
  double e = model.energies[0] + (model.omega + 4.0 * model.kappa * model.kappa / model.omega) * phi * phi;
  double coupling = 0.0;
  for (int n = 1; n < nu; ++n) {
    const double p = psi[n - 1];
    e += (model.energies[n] - model.energies[0]) * p * p;
    double inner = 2.0 * model.couplings(n, 0) * psi1;
    for (int m = 1; m < nu; ++m) inner += model.couplings(n, m) * psi[m - 1];
    coupling += inner * p;
  }
  return e + 2.0 * phi * coupling;
}

DefinitenessVerdict check_positive_definite(const MultiLevelModel& model) {
  const Eigen::MatrixXd h = normal_hessian(model);
  const int nu = model.levels();
  DefinitenessVerdict v;
  const double diag = model.omega + 4.0 * model.kappa * model.kappa / model.omega;
  v.x = diag;
  for (int n = 1; n < nu; ++n) {
    const double g = model.couplings(n, 0);
    v.x -= 4.0 * g * g / (model.energies[n] - model.energies[0]);
  }
  v.positive_definite = true;
  for (int k = 1; k <= nu; ++k) {
    const double minor = h.bottomRightCorner(k, k).determinant();
    v.minors.push_back(minor);
    if (!(minor > 0.0)) v.positive_definite = false;
  }
  v.trk = trk_satisfied(model).satisfied;
  v.x_at_least_omega = v.x >= model.omega - 1e-12 * diag;

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(h, Eigen::EigenvaluesOnly);
  v.min_eigenvalue = eig.eigenvalues()(0);
  v.eigen_positive_definite = v.min_eigenvalue > 0.0;
  return v;
}

MultiLevelModel random_trk_model(std::mt19937_64& rng, const GeneratorOptions& opt) {
  if (opt.min_levels < 2 || opt.max_levels < opt.min_levels) throw ValidationError("generator: bad level range");
  if (!(opt.fill_min > 0.0) || opt.fill_max > 1.0 || opt.fill_min > opt.fill_max)
    throw ValidationError("generator: fill factors must satisfy 0 < fill_min <= fill_max <= 1");
  std::uniform_int_distribution<int> levels(opt.min_levels, opt.max_levels);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::exponential_distribution<double> expo(1.0);
  std::normal_distribution<double> gauss(0.0, 1.0);

  MultiLevelModel model;
  const int nu = levels(rng);
  model.omega = 0.2 + 2.8 * unit(rng);
  model.kappa = 0.1 + 1.9 * unit(rng);

  model.energies.assign(nu, 0.0);
  for (;;) {
    for (int n = 1; n < nu; ++n) model.energies[n] = opt.energy_span * (1.0 - unit(rng));  // (0, span]
    std::sort(model.energies.begin() + 1, model.energies.end());
    bool distinct = true;
    for (int n = 1; n < nu; ++n)
      if (model.energies[n] - model.energies[n - 1] < 1e-6 * opt.energy_span) distinct = false;
    if (distinct) break;
  }

  const double bound = model.kappa * model.kappa / model.omega;
  model.couplings = Eigen::MatrixXd::Zero(nu, nu);

  // Level 1: oscillator strengths on the simplex scaled to the fill factor.
  const double fill = opt.fill_min + (opt.fill_max - opt.fill_min) * unit(rng);
  std::vector<double> weights(nu, 0.0);
  double total = 0.0;
  for (int n = 1; n < nu; ++n) total += (weights[n] = expo(rng));
  for (int n = 1; n < nu; ++n) {
    const double g = std::sqrt(weights[n] / total * fill * (model.energies[n] - model.energies[0]) * bound);
    model.couplings(n, 0) = model.couplings(0, n) = unit(rng) < 0.5 ? -g : g;
  }

  // Upper couplings, rescaled so every level's sum rule holds.
  for (int n = 1; n < nu; ++n)
    for (int m = n + 1; m < nu; ++m)
      model.couplings(n, m) = model.couplings(m, n) = gauss(rng) * std::sqrt(bound * opt.energy_span);
  double limit = 1.0;
  for (int m = 1; m < nu; ++m) {
    const double g1m = model.couplings(0, m);
    const double fixed = g1m * g1m / (model.energies[0] - model.energies[m]);
    double variable = 0.0;
    for (int n = 1; n < nu; ++n)
      if (n != m) {
        const double g = model.couplings(n, m);
        variable += g * g / (model.energies[n] - model.energies[m]);
      }
    if (variable > 0.0) limit = std::min(limit, (bound - fixed) / variable);
  }
  const double scale = std::sqrt(limit * (1.0 - unit(rng)));
  for (int n = 1; n < nu; ++n)
    for (int m = 1; m < nu; ++m)
      if (n != m) model.couplings(n, m) *= scale;
  return model;
}

SumRuleCheck sum_rule_identity_check(const Eigen::MatrixXcd& h, const Eigen::MatrixXcd& o, int level) {
  if (h.rows() != h.cols() || o.rows() != o.cols() || h.rows() != o.rows())
    throw ValidationError("sum rule: H and O must be square matrices of equal dimension");
  if (level < 0 || level >= h.rows()) throw ValidationError("sum rule: level out of range");

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(h);
  if (eig.info() != Eigen::Success) throw NumericalError("sum rule: eigensolver failed");
  const Eigen::VectorXd& e = eig.eigenvalues();
  const Eigen::MatrixXcd& v = eig.eigenvectors();

  const Eigen::MatrixXcd o_eig = v.adjoint() * o * v;
  SumRuleCheck out;
  for (int n = 0; n < h.rows(); ++n) out.lhs += (e[n] - e[level]) * std::norm(o_eig(level, n));

  const Eigen::MatrixXcd inner = h * o - o * h;
  const Eigen::MatrixXcd outer = o * inner - inner * o;
  const Eigen::VectorXcd state = v.col(level);
  out.rhs = 0.5 * (state.adjoint() * outer * state)(0, 0).real();
  out.residual = std::abs(out.lhs - out.rhs);
  return out;
}

Eigen::MatrixXcd random_hermitian(std::mt19937_64& rng, int dim) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Eigen::MatrixXcd a(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) a(i, j) = {gauss(rng), gauss(rng)};
  return 0.5 * (a + a.adjoint());
}

}  // namespace ldk::nogo
