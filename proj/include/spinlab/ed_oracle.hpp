#pragma once

#include <Eigen/Dense>

#include "spinlab/chain_model.hpp"

namespace spinlab {
namespace ed {

/// Dense spin-basis Hamiltonian, 2^N x 2^N. Site 1 is the most significant
/// qubit; bit value 1 means spin down (= one Jordan-Wigner fermion).
struct DenseHamiltonian {
  Eigen::MatrixXd matrix;
  ChainSpec spec;
};

struct ReducedDensity {
  Eigen::MatrixXd rho;  // real symmetric, trace 1
};

constexpr int kMaxSites = 14;

/// Kronecker-product assembly of the spin Hamiltonian as printed:
/// Ising: -sum sx sx - lambda sum sz (periodic adds -sx_N sx_1);
/// XY: -(1/2) sum [(1+gamma)/2 sx sx + (1-gamma)/2 sy sy + lambda sz].
/// The parity sector of a periodic spec is ignored here: the spin Hamiltonian
/// has no sector parameter.
DenseHamiltonian build_spin_hamiltonian(const ChainSpec& spec);

/// Lowest eigenpair by dense diagonalization. Exploits [H, parity] = 0 by
/// solving the two parity blocks separately, which is exact and four times
/// cheaper than one full-size solve. Phase fixed: largest-magnitude amplitude
/// positive.
std::pair<double, Eigen::VectorXd> ground_state(const DenseHamiltonian& h);

/// All eigenvalues, ascending (no vectors).
Eigen::VectorXd all_eigenvalues(const DenseHamiltonian& h);

/// Trace out everything except the contiguous sites [first, first+count-1]
/// (1-based). count = N returns |psi><psi|.
ReducedDensity partial_trace(const Eigen::VectorXd& state, int n_sites,
                             int first, int count);

/// -sum p ln p over the clamped eigenvalues of rho.
double vn_entropy(const ReducedDensity& rho);

/// Eigenvalues of rho, descending, clamped to [0, 1].
Eigen::VectorXd density_spectrum(const ReducedDensity& rho);

/// Schmidt coefficients (squared singular values of the amplitude matrix) for
/// the bipartition after site `cut` (1-based, keep sites 1..cut), descending.
Eigen::VectorXd schmidt_coefficients(const Eigen::VectorXd& state, int n_sites,
                                     int cut);

}  // namespace ed
}  // namespace spinlab
