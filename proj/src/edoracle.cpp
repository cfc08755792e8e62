#include "lambdadicke/edoracle.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "lambdadicke/errors.hpp"

namespace ldk::ed {

namespace {

using Triplet = Eigen::Triplet<double>;

void add_symmetric(std::vector<Triplet>& out, std::size_t i, std::size_t j, double v) {
  if (v == 0.0) return;
  out.emplace_back(static_cast<int>(i), static_cast<int>(j), v);
  out.emplace_back(static_cast<int>(j), static_cast<int>(i), v);
}

int sign_of_parity(int exponent) { return (exponent % 2 == 0) ? 1 : -1; }

}  // namespace

Basis::Basis(int n_atoms, int cutoff1, int cutoff2, std::size_t max_dimension)
    : n_atoms_(n_atoms), cutoff1_(cutoff1), cutoff2_(cutoff2) {
  if (n_atoms < 1) throw ValidationError("n_atoms must be >= 1");
  if (cutoff1 < 0 || cutoff2 < 0) throw ValidationError("cutoffs must be >= 0");
  const std::size_t dim = dimension_for(n_atoms, cutoff1, cutoff2);
  if (dim > max_dimension)
    throw ValidationError("basis dimension " + std::to_string(dim) + " exceeds cap " + std::to_string(max_dimension));
  for (int n3 = 0; n3 <= n_atoms; ++n3)
    for (int n2 = 0; n2 <= n_atoms - n3; ++n2) matter_.push_back({n_atoms - n2 - n3, n2, n3});
}

std::size_t Basis::dimension_for(int n_atoms, int cutoff1, int cutoff2) {
  const std::size_t n = static_cast<std::size_t>(n_atoms);
  return (n + 1) * (n + 2) / 2 * static_cast<std::size_t>(cutoff1 + 1) * static_cast<std::size_t>(cutoff2 + 1);
}

long Basis::matter_index(int n1, int n2, int n3) const {
  if (n1 < 0 || n2 < 0 || n3 < 0 || n1 + n2 + n3 != n_atoms_) return -1;
  // Blocks of fixed n3 have N - n3 + 1 entries.
  long offset = 0;
  for (int k = 0; k < n3; ++k) offset += n_atoms_ - k + 1;
  return offset + n2;
}

Basis::State Basis::state(std::size_t index) const {
  const int k2 = static_cast<int>(index % (cutoff2_ + 1));
  index /= (cutoff2_ + 1);
  const int k1 = static_cast<int>(index % (cutoff1_ + 1));
  index /= (cutoff1_ + 1);
  return {matter_[index], k1, k2};
}

SparseMatrix build_hamiltonian(const Basis& basis, const ModelParams& p) {
  require_valid(p);
  const int c1 = basis.cutoff1();
  const int c2 = basis.cutoff2();
  const double inv_sqrt_n = 1.0 / std::sqrt(static_cast<double>(basis.n_atoms()));
  const double dia1 = p.kappa1 * p.kappa1 / p.omega1;
  const double dia2 = p.kappa2 * p.kappa2 / p.omega2;
  const double cross = 2.0 * p.kappa3 * p.kappa3 / std::sqrt(p.omega1 * p.omega2);
  const std::array<double, 3> level_energy{0.0, p.delta, p.big_delta};

  std::vector<Triplet> t;
  t.reserve(basis.dimension() * 16);

  for (std::size_t m = 0; m < basis.matter_size(); ++m) {
    const auto& n = basis.matter(m);
    // Matter raising moves: level 1 -> 3 (g1 term) and level 2 -> 3 (g2 term).
    const long up1 = basis.matter_index(n[0] - 1, n[1], n[2] + 1);
    const long up2 = basis.matter_index(n[0], n[1] - 1, n[2] + 1);
    const double amp1 = up1 >= 0 ? std::sqrt(static_cast<double>(n[0]) * (n[2] + 1)) : 0.0;
    const double amp2 = up2 >= 0 ? std::sqrt(static_cast<double>(n[1]) * (n[2] + 1)) : 0.0;

    for (int k1 = 0; k1 <= c1; ++k1)
      for (int k2 = 0; k2 <= c2; ++k2) {
        const std::size_t i = basis.index(m, k1, k2);
        double diag = level_energy[1] * n[1] + level_energy[2] * n[2] + p.omega1 * k1 + p.omega2 * k2 +
                      dia1 * (2 * k1 + 1) + dia2 * (2 * k2 + 1);
        t.emplace_back(static_cast<int>(i), static_cast<int>(i), diag);

        // Squeezing parts of the diamagnetic terms.
        if (k1 + 2 <= c1) add_symmetric(t, i, basis.index(m, k1 + 2, k2), dia1 * std::sqrt((k1 + 1.0) * (k1 + 2.0)));
        if (k2 + 2 <= c2) add_symmetric(t, i, basis.index(m, k1, k2 + 2), dia2 * std::sqrt((k2 + 1.0) * (k2 + 2.0)));
        // X1 X2 cross term: (k1 + 1, k2 + 1) and (k1 + 1, k2 - 1) plus transposes.
        if (k1 + 1 <= c1) {
          if (k2 + 1 <= c2)
            add_symmetric(t, i, basis.index(m, k1 + 1, k2 + 1), cross * std::sqrt((k1 + 1.0) * (k2 + 1.0)));
          if (k2 >= 1) add_symmetric(t, i, basis.index(m, k1 + 1, k2 - 1), cross * std::sqrt((k1 + 1.0) * k2));
        }

        // Light-matter couplings: matter raising times (X_own + chi X_other).
        auto couple = [&](long up, double amp, double g, double chi_own_mode1, double chi_own_mode2) {
          if (up < 0 || g == 0.0) return;
          const double base = g * inv_sqrt_n * amp;
          const std::size_t mu = static_cast<std::size_t>(up);
          const double w1 = base * chi_own_mode1;
          const double w2 = base * chi_own_mode2;
          if (k1 + 1 <= c1) add_symmetric(t, i, basis.index(mu, k1 + 1, k2), w1 * std::sqrt(k1 + 1.0));
          if (k1 >= 1) add_symmetric(t, i, basis.index(mu, k1 - 1, k2), w1 * std::sqrt(static_cast<double>(k1)));
          if (k2 + 1 <= c2) add_symmetric(t, i, basis.index(mu, k1, k2 + 1), w2 * std::sqrt(k2 + 1.0));
          if (k2 >= 1) add_symmetric(t, i, basis.index(mu, k1, k2 - 1), w2 * std::sqrt(static_cast<double>(k2)));
        };
        couple(up1, amp1, p.g1, 1.0, p.chi1);
        couple(up2, amp2, p.g2, p.chi2, 1.0);
      }
  }

  const int dim = static_cast<int>(basis.dimension());
  SparseMatrix h(dim, dim);
  h.setFromTriplets(t.begin(), t.end());
  h.makeCompressed();
  return h;
}

std::string to_string(Symmetry s) {
  switch (s) {
    case Symmetry::Pi1: return "Pi1";
    case Symmetry::Pi2: return "Pi2";
    case Symmetry::Pi1Prime: return "Pi1_prime";
    case Symmetry::Pi2Prime: return "Pi2_prime";
    case Symmetry::PiTotal: return "Pi_total";
  }
  return "unknown";
}

Eigen::VectorXd parity_operator(const Basis& basis, Symmetry which) {
  Eigen::VectorXd d(static_cast<Eigen::Index>(basis.dimension()));
  for (std::size_t i = 0; i < basis.dimension(); ++i) {
    const auto s = basis.state(i);
    // exp[-i pi m] = (-1)^m for integer m; the sign of the matter count is irrelevant.
    int exponent = 0;
    switch (which) {
      case Symmetry::Pi1: exponent = s.n[0] + s.k1 + s.k2; break;
      case Symmetry::Pi2: exponent = s.n[1] + s.k1 + s.k2; break;
      case Symmetry::Pi1Prime: exponent = s.n[0] + s.k1; break;
      case Symmetry::Pi2Prime: exponent = s.n[1] + s.k2; break;
      case Symmetry::PiTotal: exponent = s.n[0] + s.n[1] + s.k1 + s.k2; break;
    }
    d[static_cast<Eigen::Index>(i)] = sign_of_parity(exponent);
  }
  return d;
}

SparseMatrix quadrature_operator(const Basis& basis, int mode) {
  if (mode != 1 && mode != 2) throw ValidationError("mode must be 1 or 2");
  std::vector<Triplet> t;
  for (std::size_t m = 0; m < basis.matter_size(); ++m)
    for (int k1 = 0; k1 <= basis.cutoff1(); ++k1)
      for (int k2 = 0; k2 <= basis.cutoff2(); ++k2) {
        const std::size_t i = basis.index(m, k1, k2);
        if (mode == 1 && k1 + 1 <= basis.cutoff1()) add_symmetric(t, i, basis.index(m, k1 + 1, k2), std::sqrt(k1 + 1.0));
        if (mode == 2 && k2 + 1 <= basis.cutoff2()) add_symmetric(t, i, basis.index(m, k1, k2 + 1), std::sqrt(k2 + 1.0));
      }
  const int dim = static_cast<int>(basis.dimension());
  SparseMatrix x(dim, dim);
  x.setFromTriplets(t.begin(), t.end());
  return x;
}

SparseMatrix diagonal_matrix(const Eigen::VectorXd& entries) {
  const auto n = entries.size();
  SparseMatrix d(n, n);
  d.reserve(Eigen::VectorXi::Constant(n, 1));
  for (Eigen::Index i = 0; i < n; ++i) d.insert(i, i) = entries[i];
  d.makeCompressed();
  return d;
}

double max_entry_norm(const SparseMatrix& m) {
  double out = 0.0;
  for (int k = 0; k < m.outerSize(); ++k)
    for (SparseMatrix::InnerIterator it(m, k); it; ++it) out = std::max(out, std::abs(it.value()));
  return out;
}

double commutator_norm(const SparseMatrix& h, const SparseMatrix& s) {
  if (h.rows() != s.rows() || h.cols() != s.cols()) throw ValidationError("commutator: dimension mismatch");
  const SparseMatrix c = SparseMatrix(h * s) - SparseMatrix(s * h);
  return max_entry_norm(c);
}

double commutator_norm(const SparseMatrix& h, const Eigen::VectorXd& s) {
  if (h.rows() != s.size()) throw ValidationError("commutator: dimension mismatch");
  // (HS - SH)_ij = H_ij (s_j - s_i)
  double out = 0.0;
  for (int k = 0; k < h.outerSize(); ++k)
    for (SparseMatrix::InnerIterator it(h, k); it; ++it)
      out = std::max(out, std::abs(it.value() * (s[it.col()] - s[it.row()])));
  return out;
}

Eigenpair lowest_eigenpair_dense(const SparseMatrix& h) {
  const Eigen::MatrixXd dense = Eigen::MatrixXd(h);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(dense);
  if (eig.info() != Eigen::Success) throw NumericalError("dense eigensolver did not converge");
  return {eig.eigenvalues()(0), eig.eigenvectors().col(0), true, "dense"};
}

Eigenpair lowest_eigenpair_lanczos(const SparseMatrix& h, double tol, int max_krylov, int max_restarts) {
  const Eigen::Index n = h.rows();
  if (n == 0) throw ValidationError("empty matrix");
  const int m = static_cast<int>(std::min<Eigen::Index>(max_krylov, n));
  const double scale = std::max(1.0, max_entry_norm(h));

  // A generic start vector overlaps every symmetry sector.
  std::mt19937_64 rng(0x1a2c05ULL);
  std::normal_distribution<double> gauss(0.0, 1.0);
  Eigen::VectorXd x(n);
  for (Eigen::Index i = 0; i < n; ++i) x[i] = gauss(rng);
  x.normalize();

  Eigen::MatrixXd v(n, m);
  for (int restart = 0; restart < max_restarts; ++restart) {
    std::vector<double> alpha, beta;
    v.col(0) = x;
    Eigen::VectorXd y;
    int k = 0;
    bool done = false;
    for (int j = 0; j < m; ++j) {
      Eigen::VectorXd w = h * v.col(j);
      alpha.push_back(v.col(j).dot(w));
      // Full reorthogonalization, applied twice.
      for (int pass = 0; pass < 2; ++pass) w -= v.leftCols(j + 1) * (v.leftCols(j + 1).transpose() * w);
      const double b = w.norm();
      k = j + 1;

      const bool last = (j == m - 1) || b < 1e-14 * scale;
      if (last || k % 5 == 0) {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> tri;
        Eigen::VectorXd d = Eigen::Map<Eigen::VectorXd>(alpha.data(), k);
        Eigen::VectorXd e = k > 1 ? Eigen::VectorXd(Eigen::Map<Eigen::VectorXd>(beta.data(), k - 1))
                                  : Eigen::VectorXd(0);
        tri.computeFromTridiagonal(d, e, Eigen::ComputeEigenvectors);
        if (tri.info() != Eigen::Success) throw NumericalError("tridiagonal eigensolver failed");
        y = tri.eigenvectors().col(0);
        if (b * std::abs(y[k - 1]) <= tol * scale) done = true;
      }
      if (done || last) break;
      beta.push_back(b);
      v.col(j + 1) = w / b;
    }
    x = v.leftCols(k) * y;
    x.normalize();
    const Eigen::VectorXd hx = h * x;
    const double rayleigh = x.dot(hx);
    const double residual = (hx - rayleigh * x).norm();
    if (done || residual <= tol * scale) return {rayleigh, x, true, "lanczos"};
  }
  throw NumericalError("Lanczos did not converge");
}

Eigenpair lowest_eigenpair(const SparseMatrix& h, int dense_max_dimension) {
  if (h.rows() <= dense_max_dimension) return lowest_eigenpair_dense(h);
  return lowest_eigenpair_lanczos(h);
}

namespace {

EdResult analyse(const Basis& basis, const SparseMatrix& h, const Eigenpair& pair) {
  EdResult r;
  r.ground_energy = pair.value;
  r.ground_energy_per_atom = pair.value / basis.n_atoms();
  r.dimension = basis.dimension();
  r.cutoff1 = basis.cutoff1();
  r.cutoff2 = basis.cutoff2();
  r.method = pair.method;
  r.converged = pair.converged;
  r.hamiltonian_norm = max_entry_norm(h);

  std::vector<double> dist1(basis.cutoff1() + 1, 0.0), dist2(basis.cutoff2() + 1, 0.0);
  double p1 = 0.0, p2 = 0.0, pt = 0.0;
  for (std::size_t i = 0; i < basis.dimension(); ++i) {
    const double w = pair.vector[static_cast<Eigen::Index>(i)] * pair.vector[static_cast<Eigen::Index>(i)];
    if (w == 0.0) continue;
    const auto s = basis.state(i);
    dist1[s.k1] += w;
    dist2[s.k2] += w;
    r.boson_occupations[0] += w * s.k1;
    r.boson_occupations[1] += w * s.k2;
    for (int l = 0; l < 3; ++l) r.level_populations[l] += w * s.n[l];
    p1 += w * sign_of_parity(s.n[0] + s.k1 + s.k2);
    p2 += w * sign_of_parity(s.n[1] + s.k1 + s.k2);
    pt += w * sign_of_parity(s.n[0] + s.n[1] + s.k1 + s.k2);
  }
  for (double& l : r.level_populations) l /= basis.n_atoms();
  r.tail_weights = {dist1.back(), dist2.back()};
  r.parity1_expect = {p1, 0.0};
  r.parity2_expect = {p2, 0.0};
  r.parity_total_expect = {pt, 0.0};

  for (Symmetry s : {Symmetry::Pi1, Symmetry::Pi2, Symmetry::Pi1Prime, Symmetry::Pi2Prime, Symmetry::PiTotal})
    r.commutator_norms[to_string(s)] = commutator_norm(h, parity_operator(basis, s));
  return r;
}

std::array<double, 2> tail_weights(const Basis& basis, const Eigen::VectorXd& v) {
  std::array<double, 2> out{};
  for (std::size_t i = 0; i < basis.dimension(); ++i) {
    const auto s = basis.state(i);
    const double w = v[static_cast<Eigen::Index>(i)] * v[static_cast<Eigen::Index>(i)];
    if (s.k1 == basis.cutoff1()) out[0] += w;
    if (s.k2 == basis.cutoff2()) out[1] += w;
  }
  return out;
}

struct Solved {
  Basis basis;
  SparseMatrix h;
  Eigenpair pair;
};

Solved solve(const EdConfig& cfg, int c1, int c2) {
  Basis basis(cfg.n_atoms, c1, c2, cfg.max_dimension);
  SparseMatrix h = build_hamiltonian(basis, cfg.params);
  Eigenpair pair = lowest_eigenpair(h, cfg.dense_max_dimension);
  return {std::move(basis), std::move(h), std::move(pair)};
}

}  // namespace

EdResult ground_state(const EdConfig& cfg) {
  require_valid(cfg.params);
  if (cfg.n_atoms < 1) throw ValidationError("n_atoms must be >= 1");
  if ((cfg.cutoff1 && *cfg.cutoff1 < 0) || (cfg.cutoff2 && *cfg.cutoff2 < 0))
    throw ValidationError("cutoffs must be >= 0");
  if (cfg.initial_cutoff < 0 || cfg.max_cutoff < cfg.initial_cutoff)
    throw ValidationError("adaptive cutoff range is empty");

  int c1 = cfg.cutoff1.value_or(cfg.initial_cutoff);
  int c2 = cfg.cutoff2.value_or(cfg.initial_cutoff);
  const bool adaptive1 = !cfg.cutoff1.has_value();
  const bool adaptive2 = !cfg.cutoff2.has_value();

  const auto fits = [&](int n1, int n2) {
    return n1 <= std::max(cfg.max_cutoff, c1) && n2 <= std::max(cfg.max_cutoff, c2) &&
           Basis::dimension_for(cfg.n_atoms, n1, n2) <= cfg.max_dimension;
  };

  Solved cur = solve(cfg, c1, c2);
  std::array<double, 2> tails = tail_weights(cur.basis, cur.pair.vector);
  for (;;) {
    const bool grow1 = adaptive1 && tails[0] >= cfg.tail_tol;
    const bool grow2 = adaptive2 && tails[1] >= cfg.tail_tol;
    if (!grow1 && !grow2) break;
    const int n1 = grow1 ? c1 + 2 : c1;
    const int n2 = grow2 ? c2 + 2 : c2;
    if (!fits(n1, n2)) break;
    c1 = n1;
    c2 = n2;
    cur = solve(cfg, c1, c2);
    tails = tail_weights(cur.basis, cur.pair.vector);
  }

  // Energy convergence under cutoff + 2. With adaptive cutoffs a failed check
  // promotes the larger truncation and checks again: the tail criterion alone
  // does not bound the energy error of strongly squeezed vacua.
  bool converged = false;
  double change = 0.0;
  if (cfg.check_cutoff_convergence) {
    for (;;) {
      // A removed mode (cutoff 0) stays removed.
      const int e1 = c1 == 0 ? 0 : c1 + 2;
      const int e2 = c2 == 0 ? 0 : c2 + 2;
      if (Basis::dimension_for(cfg.n_atoms, e1, e2) > cfg.max_dimension) break;
      Solved bigger = solve(cfg, e1, e2);
      change = std::abs(bigger.pair.value - cur.pair.value);
      converged = change < 1e-8 * std::abs(cur.pair.value) + 1e-12;
      if (converged || !(adaptive1 || adaptive2) || !fits(adaptive1 ? e1 : c1, adaptive2 ? e2 : c2)) break;
      // Only adaptive modes may grow; a fixed cutoff stays as requested.
      if (adaptive1 && adaptive2) {
        c1 = e1;
        c2 = e2;
        cur = std::move(bigger);
      } else {
        c1 = adaptive1 ? e1 : c1;
        c2 = adaptive2 ? e2 : c2;
        cur = solve(cfg, c1, c2);
      }
    }
  }

  EdResult r = analyse(cur.basis, cur.h, cur.pair);
  r.cutoff_adequate = r.tail_weights[0] < cfg.tail_tol && r.tail_weights[1] < cfg.tail_tol;
  r.cutoff_converged = converged;
  r.cutoff_energy_change = change;
  return r;
}

std::array<double, 2> sector_ground_energies(const Basis& basis, const ModelParams& params, int dense_max_dimension) {
  const SparseMatrix h = build_hamiltonian(basis, params);
  const Eigen::VectorXd parity = parity_operator(basis, Symmetry::PiTotal);
  std::array<double, 2> out{};
  for (int sector = 0; sector < 2; ++sector) {
    const double want = sector == 0 ? 1.0 : -1.0;
    std::vector<int> local(basis.dimension(), -1);
    int count = 0;
    for (std::size_t i = 0; i < basis.dimension(); ++i)
      if (parity[static_cast<Eigen::Index>(i)] == want) local[i] = count++;
    if (count == 0) {
      out[sector] = std::numeric_limits<double>::infinity();
      continue;
    }
    std::vector<Triplet> t;
    for (int k = 0; k < h.outerSize(); ++k)
      for (SparseMatrix::InnerIterator it(h, k); it; ++it) {
        const int a = local[it.row()];
        const int b = local[it.col()];
        if (a >= 0 && b >= 0) t.emplace_back(a, b, it.value());
      }
    SparseMatrix block(count, count);
    block.setFromTriplets(t.begin(), t.end());
    out[sector] = lowest_eigenpair(block, dense_max_dimension).value;
  }
  return out;
}

}  // namespace ldk::ed
