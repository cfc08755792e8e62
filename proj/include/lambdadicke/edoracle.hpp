#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <array>
#include <complex>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "lambdadicke/model.hpp"

namespace ldk::ed {

using SparseMatrix = Eigen::SparseMatrix<double, Eigen::RowMajor>;

struct EdConfig {
  int n_atoms = 1;
  // Maximum occupation per mode (0 removes the mode); unset means adaptive
  // (grow from initial_cutoff until the top Fock state carries less than tail_tol).
  std::optional<int> cutoff1;
  std::optional<int> cutoff2;
  ModelParams params;

  std::size_t max_dimension = 200000;
  int dense_max_dimension = 2000;
  int initial_cutoff = 8;
  int max_cutoff = 40;
  double tail_tol = 1e-8;
  bool check_cutoff_convergence = true;
};

/**
 * Fully symmetric matter sector (occupations n1 + n2 + n3 = N of the three
 * levels) times truncated Fock spaces of both modes. State index:
 * (matter * (cutoff1 + 1) + k1) * (cutoff2 + 1) + k2.
 */
class Basis {
 public:
  /// Throws ValidationError if N < 1, a cutoff is negative or the dimension exceeds the cap.
  Basis(int n_atoms, int cutoff1, int cutoff2, std::size_t max_dimension = 200000);

  int n_atoms() const { return n_atoms_; }
  int cutoff1() const { return cutoff1_; }
  int cutoff2() const { return cutoff2_; }
  std::size_t matter_size() const { return matter_.size(); }
  std::size_t dimension() const { return matter_.size() * static_cast<std::size_t>((cutoff1_ + 1) * (cutoff2_ + 1)); }

  const std::array<int, 3>& matter(std::size_t m) const { return matter_[m]; }
  /// Index of occupation triple (n1, n2, n3); -1 if not in the sector.
  long matter_index(int n1, int n2, int n3) const;
  std::size_t index(std::size_t matter, int k1, int k2) const {
    return (matter * (cutoff1_ + 1) + k1) * (cutoff2_ + 1) + k2;
  }

  struct State {
    std::array<int, 3> n;
    int k1;
    int k2;
  };
  State state(std::size_t index) const;

  static std::size_t dimension_for(int n_atoms, int cutoff1, int cutoff2);

 private:
  int n_atoms_;
  int cutoff1_;
  int cutoff2_;
  std::vector<std::array<int, 3>> matter_;
};

/// Real symmetric Hamiltonian with 1/sqrt(N) coupling scaling. Boson squares
/// use the exact matrix elements of a^+a^+ + a a + 2a^+a + 1 within the cutoff.
SparseMatrix build_hamiltonian(const Basis& basis, const ModelParams& params);

enum class Symmetry { Pi1, Pi2, Pi1Prime, Pi2Prime, PiTotal };
std::string to_string(Symmetry s);

/**
 * Diagonal of the parity operator (entries +-1):
 *   Pi_n   = exp[-i pi (-I_n^n + a1^+a1 + a2^+a2)]
 *   Pi'_n  = exp[-i pi (-I_n^n + a_n^+a_n)]
 *   PiTotal = Pi'_1 Pi'_2 = exp[-i pi (-I_1^1 - I_2^2 + a1^+a1 + a2^+a2)]
 * PiTotal is the parity conserved by the full Hamiltonian.
 */
Eigen::VectorXd parity_operator(const Basis& basis, Symmetry which);

/// Quadrature X_n = a_n^+ + a_n of mode n (1 or 2) on the full basis.
SparseMatrix quadrature_operator(const Basis& basis, int mode);

/// Diagonal matrix from its entries.
SparseMatrix diagonal_matrix(const Eigen::VectorXd& entries);

/// max_ij |(HS - SH)_ij|.
double commutator_norm(const SparseMatrix& h, const SparseMatrix& s);
/// Same, for diagonal S given by its entries.
double commutator_norm(const SparseMatrix& h, const Eigen::VectorXd& s_diagonal);
double max_entry_norm(const SparseMatrix& m);

struct Eigenpair {
  double value = 0.0;
  Eigen::VectorXd vector;
  bool converged = false;
  std::string method;
};

/// Lowest eigenpair: dense solver up to dense_max_dimension, Lanczos with
/// full reorthogonalization above.
Eigenpair lowest_eigenpair(const SparseMatrix& h, int dense_max_dimension = 2000);
Eigenpair lowest_eigenpair_dense(const SparseMatrix& h);
Eigenpair lowest_eigenpair_lanczos(const SparseMatrix& h, double tol = 1e-10, int max_krylov = 60,
                                   int max_restarts = 300);

struct EdResult {
  double ground_energy = 0.0;
  double ground_energy_per_atom = 0.0;
  std::complex<double> parity1_expect;
  std::complex<double> parity2_expect;
  std::complex<double> parity_total_expect;
  std::map<std::string, double> commutator_norms;
  double hamiltonian_norm = 0.0;  // max-entry norm
  std::array<double, 2> boson_occupations{};
  std::array<double, 3> level_populations{};  // <I_nn>/N
  std::array<double, 2> tail_weights{};        // probability of the top Fock state per mode
  int cutoff1 = 0;
  int cutoff2 = 0;
  std::size_t dimension = 0;
  std::string method;
  bool converged = false;
  bool cutoff_adequate = false;   // both tail weights below tail_tol
  bool cutoff_converged = false;  // energy stable when both cutoffs grow by 2
  double cutoff_energy_change = 0.0;
};

EdResult ground_state(const EdConfig& cfg);

/// Lowest energy in each PiTotal sector: {even (+1), odd (-1)}.
std::array<double, 2> sector_ground_energies(const Basis& basis, const ModelParams& params,
                                             int dense_max_dimension = 2000);

}  // namespace ldk::ed
