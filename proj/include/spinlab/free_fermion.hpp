#pragma once

#include <Eigen/Dense>

#include "spinlab/chain_model.hpp"

namespace spinlab {

/// Result of diagonalizing the quadratic form via the squared problem
/// (A+B)(A-B). Rows of Phi/Psi/g/h are indexed by mode k, energies ascending.
struct BogoliubovSolution {
  Eigen::VectorXd lambdas;  // nonnegative, ascending
  Eigen::MatrixXd Phi, Psi; // orthogonal, rows are the eigenvectors
  Eigen::MatrixXd g, h;     // g = (Phi+Psi)/2, h = (Phi-Psi)/2
  double ground_energy = 0.0;  // vacuum energy incl. the scalar offset
};

/// Ground-state correlation matrices C = h^t h (symmetric),
/// F = h^t g (antisymmetric).
struct CorrelationPair {
  Eigen::MatrixXd C, F;
};

struct SectorEnergies {
  double even_e0 = 0.0;
  double odd_e0 = 0.0;
  Parity lower = Parity::Even;
  double gap = 0.0;       // |even - odd|
  double best_e0 = 0.0;
};

BogoliubovSolution solve(const QuadraticForm& qf);

CorrelationPair correlations(const BogoliubovSolution& sol);

/// Fermion parity of the Bogoliubov vacuum: sign(det Phi * det Psi).
/// Zero modes make the parity ill-defined (both sectors degenerate); the
/// returned value then reflects the sign convention only.
int vacuum_parity(const BogoliubovSolution& sol);

/// Lowest energy of the quadratic form restricted to states whose fermion
/// parity matches the sector's. Equals the vacuum energy when the vacuum has
/// the right parity, otherwise vacuum + smallest single-particle energy.
double sector_ground_energy(const ChainSpec& spec);

/// Best free-fermion ground energy for a spec: sector-resolved minimum for
/// periodic chains, plain vacuum energy for open ones (where the mapping to
/// the spin model carries no parity constraint).
double best_ground_energy(const ChainSpec& spec);

/// Ground energies of the even and odd sectors of a periodic chain.
SectorEnergies ground_energy_check(const ChainSpec& spec);

}  // namespace spinlab
