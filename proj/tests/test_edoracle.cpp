#include <gtest/gtest.h>

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <vector>

#include "lambdadicke/edoracle.hpp"
#include "lambdadicke/errors.hpp"
#include "support.hpp"

using namespace ldk;
using namespace ldk::ed;

namespace {

using Dense = Eigen::MatrixXd;

Dense kron(const Dense& a, const Dense& b) {
  Dense out(a.rows() * b.rows(), a.cols() * b.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

Dense annihilation(int cutoff) {
  Dense a = Dense::Zero(cutoff + 1, cutoff + 1);
  for (int k = 1; k <= cutoff; ++k) a(k - 1, k) = std::sqrt(static_cast<double>(k));
  return a;
}

// Normal-ordered square of the quadrature, a^+a^+ + a a + 2 a^+a + 1.
Dense quadrature_square(int cutoff) {
  const Dense a = annihilation(cutoff);
  const Dense ad = a.transpose();
  return ad * ad + a * a + 2.0 * ad * a + Dense::Identity(cutoff + 1, cutoff + 1);
}

Dense unit(int n, int m) {
  Dense e = Dense::Zero(3, 3);
  e(n, m) = 1.0;
  return e;
}

// Hamiltonian of N distinguishable atoms (N = 1 or 2) built from Kronecker
// products, restricted to the permutation-symmetric subspace.
Dense oracle_hamiltonian(const ModelParams& p, int n_atoms, int c1, int c2) {
  const int d1 = c1 + 1, d2 = c2 + 1;
  const Dense i1 = Dense::Identity(d1, d1), i2 = Dense::Identity(d2, d2);
  const Dense a1 = annihilation(c1), a2 = annihilation(c2);
  const Dense x1 = kron(a1 + a1.transpose(), i2);
  const Dense x2 = kron(i1, a2 + a2.transpose());
  const Dense n1 = kron(a1.transpose() * a1, i2), n2 = kron(i1, a2.transpose() * a2);
  const Dense boson = p.omega1 * n1 + p.omega2 * n2 +
                      p.kappa1 * p.kappa1 / p.omega1 * kron(quadrature_square(c1), i2) +
                      p.kappa2 * p.kappa2 / p.omega2 * kron(i1, quadrature_square(c2)) +
                      2.0 * p.kappa3 * p.kappa3 / std::sqrt(p.omega1 * p.omega2) * x1 * x2;
  const Dense field1 = x1 + p.chi1 * x2, field2 = x2 + p.chi2 * x1;
  const double scale = 1.0 / std::sqrt(static_cast<double>(n_atoms));

  const Dense energies = Eigen::Vector3d(0.0, p.delta, p.big_delta).asDiagonal();
  const Dense raise13 = unit(2, 0) + unit(0, 2), raise23 = unit(2, 1) + unit(1, 2);
  const Dense id3 = Dense::Identity(3, 3);

  std::vector<Dense> single{energies, raise13, raise23};
  Dense coll_e, coll_13, coll_23, projector;
  if (n_atoms == 1) {
    coll_e = energies;
    coll_13 = raise13;
    coll_23 = raise23;
    projector = id3;
  } else {
    coll_e = kron(energies, id3) + kron(id3, energies);
    coll_13 = kron(raise13, id3) + kron(id3, raise13);
    coll_23 = kron(raise23, id3) + kron(id3, raise23);
    // Orthonormal symmetric states |nn> and (|nm> + |mn>)/sqrt(2).
    projector = Dense::Zero(9, 6);
    int col = 0;
    for (int n = 0; n < 3; ++n)
      for (int m = n; m < 3; ++m, ++col) {
        if (n == m) {
          projector(3 * n + n, col) = 1.0;
        } else {
          projector(3 * n + m, col) = std::sqrt(0.5);
          projector(3 * m + n, col) = std::sqrt(0.5);
        }
      }
  }
  const int db = d1 * d2;
  const Dense idb = Dense::Identity(db, db);
  const Dense idm = Dense::Identity(coll_e.rows(), coll_e.cols());
  const Dense h = kron(coll_e, idb) + kron(idm, boson) + p.g1 * scale * kron(coll_13, field1) +
                  p.g2 * scale * kron(coll_23, field2);
  const Dense proj = kron(projector, idb);
  return proj.transpose() * h * proj;
}

Eigen::VectorXd sorted_spectrum(const Dense& h) {
  Eigen::SelfAdjointEigenSolver<Dense> es(h);
  return es.eigenvalues();
}

ModelParams generic_params() {
  ModelParams p = testing_support::tilted_params(0.9, 0.6);
  return p;
}

}  // namespace

TEST(Basis, DimensionAndIndexing) {
  const Basis b(3, 4, 2);
  EXPECT_EQ(b.matter_size(), 10u);
  EXPECT_EQ(b.dimension(), 10u * 5u * 3u);
  EXPECT_EQ(Basis::dimension_for(3, 4, 2), b.dimension());
  for (std::size_t i = 0; i < b.dimension(); ++i) {
    const auto s = b.state(i);
    EXPECT_EQ(s.n[0] + s.n[1] + s.n[2], 3);
    const long m = b.matter_index(s.n[0], s.n[1], s.n[2]);
    ASSERT_GE(m, 0);
    EXPECT_EQ(b.index(static_cast<std::size_t>(m), s.k1, s.k2), i);
  }
  EXPECT_EQ(b.matter_index(1, 1, 0), -1);
}

TEST(Basis, Rejections) {
  EXPECT_THROW(Basis(0, 2, 2), ValidationError);
  EXPECT_THROW(Basis(1, -1, 2), ValidationError);
  EXPECT_THROW(Basis(40, 40, 40, 1000), ValidationError);
  EdConfig cfg;
  cfg.n_atoms = 40;
  cfg.cutoff1 = cfg.cutoff2 = 40;
  cfg.max_dimension = 1000;
  EXPECT_THROW(ground_state(cfg), ValidationError);
}

TEST(Hamiltonian, ExactlySymmetric) {
  const Basis b(3, 5, 4);
  const SparseMatrix h = build_hamiltonian(b, generic_params());
  const SparseMatrix ht = h.transpose();
  EXPECT_EQ((h - ht).norm(), 0.0);
}

TEST(Hamiltonian, FreeAtomsWithoutModes) {
  ModelParams p;
  p.delta = 0.1;
  p.big_delta = 1.0;
  const Basis b(2, 0, 0);
  const Dense h = Dense(build_hamiltonian(b, p));
  std::vector<double> expected{0.0, 0.1, 0.2, 1.0, 1.1, 2.0};
  const Eigen::VectorXd got = sorted_spectrum(h);
  ASSERT_EQ(got.size(), 6);
  for (int i = 0; i < 6; ++i) EXPECT_NEAR(got[i], expected[i], 1e-15);

  EdConfig cfg;
  cfg.n_atoms = 1;
  cfg.cutoff1 = cfg.cutoff2 = 0;
  cfg.params = p;
  const EdResult r = ground_state(cfg);
  EXPECT_DOUBLE_EQ(r.ground_energy, 0.0);
  EXPECT_NEAR(r.level_populations[0], 1.0, 1e-15);
}

TEST(Hamiltonian, MatchesKroneckerOracleSingleAtom) {
  const ModelParams p = generic_params();
  for (auto [c1, c2] : {std::pair{3, 0}, std::pair{0, 3}, std::pair{4, 3}}) {
    const Basis b(1, c1, c2);
    const Eigen::VectorXd lib = sorted_spectrum(Dense(build_hamiltonian(b, p)));
    const Eigen::VectorXd ref = sorted_spectrum(oracle_hamiltonian(p, 1, c1, c2));
    ASSERT_EQ(lib.size(), ref.size());
    EXPECT_LT((lib - ref).cwiseAbs().maxCoeff(), 1e-12);
  }
}

TEST(Hamiltonian, MatchesKroneckerOracleTwoAtoms) {
  ModelParams p = generic_params();
  p.chi1 = 0.3;
  p.chi2 = -0.2;
  p.kappa2 = 0.7;
  const Basis b(2, 3, 4);
  const Eigen::VectorXd lib = sorted_spectrum(Dense(build_hamiltonian(b, p)));
  const Eigen::VectorXd ref = sorted_spectrum(oracle_hamiltonian(p, 2, 3, 4));
  ASSERT_EQ(lib.size(), ref.size());
  EXPECT_LT((lib - ref).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(Parity, InvolutionsAndVacuum) {
  for (int n : {1, 2, 3}) {
    const Basis b(n, 3, 2);
    for (Symmetry s : {Symmetry::Pi1, Symmetry::Pi2, Symmetry::Pi1Prime, Symmetry::Pi2Prime, Symmetry::PiTotal}) {
      const Eigen::VectorXd d = parity_operator(b, s);
      EXPECT_TRUE((d.array() * d.array() == 1.0).all());
      // All atoms in the lowest level, both modes empty.
      const std::size_t vacuum = b.index(static_cast<std::size_t>(b.matter_index(n, 0, 0)), 0, 0);
      const double expected = (s == Symmetry::Pi2 || s == Symmetry::Pi2Prime) ? 1.0 : (n % 2 ? -1.0 : 1.0);
      EXPECT_EQ(d[static_cast<long>(vacuum)], expected) << to_string(s) << " N=" << n;
    }
  }
}

TEST(Parity, SingleModeParityFlipsCrossQuadrature) {
  const Basis b(2, 4, 4);
  const SparseMatrix x1 = quadrature_operator(b, 1), x2 = quadrature_operator(b, 2);
  const SparseMatrix cross = x1 * x2;
  for (Symmetry s : {Symmetry::Pi1Prime, Symmetry::Pi2Prime}) {
    const SparseMatrix d = diagonal_matrix(parity_operator(b, s));
    const SparseMatrix conj = d * cross * d;
    EXPECT_EQ(max_entry_norm(SparseMatrix(conj + cross)), 0.0);
  }
  // PiTotal leaves the cross term invariant.
  const SparseMatrix d = diagonal_matrix(parity_operator(b, Symmetry::PiTotal));
  EXPECT_EQ(max_entry_norm(SparseMatrix(d * cross * d - cross)), 0.0);
}

TEST(Parity, ConservedTotalParity) {
  const Basis b(3, 5, 5);
  const SparseMatrix h = build_hamiltonian(b, generic_params());
  EXPECT_EQ(commutator_norm(h, parity_operator(b, Symmetry::PiTotal)), 0.0);
}

TEST(Parity, SingleLambdaParitiesNeedOneCouplingOff) {
  const Basis b(3, 5, 5);
  ModelParams p = generic_params();
  p.g2 = 0.0;
  EXPECT_EQ(commutator_norm(build_hamiltonian(b, p), parity_operator(b, Symmetry::Pi1)), 0.0);
  p = generic_params();
  p.g1 = 0.0;
  EXPECT_EQ(commutator_norm(build_hamiltonian(b, p), parity_operator(b, Symmetry::Pi2)), 0.0);
  // With both couplings on, the g2 term (one photon in either mode, no
  // level-1 change) is odd under Pi1, and the g1 term is odd under Pi2.
  p = generic_params();
  const SparseMatrix h = build_hamiltonian(b, p);
  EXPECT_GT(commutator_norm(h, parity_operator(b, Symmetry::Pi1)), 0.1);
  EXPECT_GT(commutator_norm(h, parity_operator(b, Symmetry::Pi2)), 0.1);
}

TEST(Parity, SingleModeParityBrokenByMixing) {
  const Basis b(2, 5, 5);
  ModelParams p = generic_params();
  EXPECT_GT(commutator_norm(build_hamiltonian(b, p), parity_operator(b, Symmetry::Pi1Prime)), 0.1);
  p.chi1 = p.chi2 = p.kappa3 = 0.0;
  const SparseMatrix h = build_hamiltonian(b, p);
  EXPECT_EQ(commutator_norm(h, parity_operator(b, Symmetry::Pi1Prime)), 0.0);
  EXPECT_EQ(commutator_norm(h, parity_operator(b, Symmetry::Pi2Prime)), 0.0);
}

TEST(Eigensolver, DenseAndLanczosAgree) {
  const Basis b(3, 8, 6);
  const SparseMatrix h = build_hamiltonian(b, generic_params());
  const Eigenpair dense = lowest_eigenpair_dense(h);
  const Eigenpair lanczos = lowest_eigenpair_lanczos(h);
  EXPECT_TRUE(lanczos.converged);
  EXPECT_NEAR(dense.value, lanczos.value, 1e-9 * std::max(1.0, std::abs(dense.value)));
  const Eigen::VectorXd residual = h * lanczos.vector - lanczos.value * lanczos.vector;
  EXPECT_LT(residual.norm(), 1e-6);
  EXPECT_NEAR(std::abs(dense.vector.dot(lanczos.vector)), 1.0, 1e-8);
}

TEST(Eigensolver, DispatchByDimension) {
  const Basis b(2, 4, 4);
  const SparseMatrix h = build_hamiltonian(b, generic_params());
  EXPECT_EQ(lowest_eigenpair(h, 10000).method, "dense");
  EXPECT_EQ(lowest_eigenpair(h, 10).method, "lanczos");
}

TEST(GroundState, PopulationsAndOccupations) {
  EdConfig cfg;
  cfg.n_atoms = 3;
  cfg.params = generic_params();
  const EdResult r = ground_state(cfg);
  EXPECT_TRUE(r.converged);
  EXPECT_TRUE(r.cutoff_adequate);
  EXPECT_TRUE(r.cutoff_converged);
  EXPECT_NEAR(r.level_populations[0] + r.level_populations[1] + r.level_populations[2], 1.0, 1e-12);
  for (double v : r.level_populations) EXPECT_GE(v, -1e-15);
  for (double v : r.boson_occupations) EXPECT_GE(v, -1e-15);
  EXPECT_NEAR(r.ground_energy_per_atom * 3, r.ground_energy, 1e-14);
  EXPECT_EQ(r.commutator_norms.at("Pi_total"), 0.0);
  // The ground state lies in one total-parity sector.
  EXPECT_NEAR(std::abs(r.parity_total_expect.real()), 1.0, 1e-8);
}

TEST(GroundState, FixedCutoffsAreRespected) {
  EdConfig cfg;
  cfg.n_atoms = 2;
  cfg.cutoff1 = 5;
  cfg.cutoff2 = 0;
  cfg.params = generic_params();
  const EdResult r = ground_state(cfg);
  EXPECT_EQ(r.cutoff1, 5);
  EXPECT_EQ(r.cutoff2, 0);
  EXPECT_EQ(r.dimension, Basis::dimension_for(2, 5, 0));
}

TEST(GroundState, WeakCouplingEnergyPerAtomVanishes) {
  ModelParams p;
  p.delta = 0.1;
  p.big_delta = 1.0;
  p.g1 = p.g2 = 0.05;
  double prev = -1.0;
  for (int n = 1; n <= 5; ++n) {
    EdConfig cfg;
    cfg.n_atoms = n;
    cfg.params = p;
    const double e = ground_state(cfg).ground_energy_per_atom;
    EXPECT_LT(e, 0.0);
    EXPECT_GT(e, prev);
    EXPECT_LT(std::abs(e), p.g1 * p.g1);
    prev = e;
  }
}

TEST(GroundState, SectorGapClosesInSuperradiantPhase) {
  // Deep in the superradiant phase the two total-parity sectors become
  // degenerate as N grows.
  ModelParams p;
  p.delta = 0.1;
  p.big_delta = 1.0;
  p.g1 = 1.2;
  double prev = 1e9;
  for (int n = 2; n <= 6; ++n) {
    const Basis b(n, 30, 0);
    const auto e = sector_ground_energies(b, p);
    const double gap = std::abs(e[0] - e[1]);
    EXPECT_LT(gap, prev) << "N=" << n;
    prev = gap;
  }
  EXPECT_LT(prev, 0.05);
}
