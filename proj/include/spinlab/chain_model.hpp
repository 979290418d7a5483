#pragma once

#include <Eigen/Dense>
#include <optional>
#include <vector>

namespace spinlab {

enum class Model { Ising, XY };
enum class Boundary { Open, Periodic };
enum class Parity { Even, Odd };  // eigenvalue of the fermion parity operator, +1 / -1

/// One Hamiltonian instance: model family, size and couplings.
/// For the Ising model gamma is ignored. The parity sector is meaningful
/// only for periodic chains and must be left unset for open ones.
struct ChainSpec {
  Model model = Model::Ising;
  int n_sites = 2;
  double lambda = 1.0;
  double gamma = 1.0;
  Boundary boundary = Boundary::Open;
  std::optional<Parity> parity{};

  /// Throws std::invalid_argument on N < 2, Open+parity, Periodic without parity.
  void validate() const;

  int parity_sign() const;  // +1 even, -1 odd (Periodic only)
};

/// H = sum_ij a_i^dag A_ij a_j + 1/2 (a_i^dag B_ij a_j^dag - a_i B_ij a_j) + offset.
/// A symmetric, B antisymmetric by construction.
struct QuadraticForm {
  Eigen::MatrixXd A;
  Eigen::MatrixXd B;
  double offset = 0.0;
};

struct MomentumGrid {
  std::vector<double> phis;  // N angles in (0, 2*pi]
  Parity sector = Parity::Even;
};

QuadraticForm build_quadratic_form(const ChainSpec& spec);

/// Single-particle dispersion. Ising: 2*sqrt(lambda^2 + 1 - 2*lambda*cos(phi)).
/// XY: sqrt((lambda - cos(phi))^2 + gamma^2 sin^2(phi)).
double dispersion(const ChainSpec& spec, double phi);

/// Allowed momenta for periodic chains. Even sector: (2k+1)pi/N; odd: (2k+2)pi/N.
MomentumGrid momentum_grid(const ChainSpec& spec);

/// Real roots k in (0, pi) of sin(kN) = lambda*sin(k(N+1)) for the open Ising
/// chain. May return N or N-1 roots; a missing root signals an edge mode that
/// only the matrix eigensolve recovers. Requires lambda != 0.
std::vector<double> open_bc_real_roots(const ChainSpec& spec);

}  // namespace spinlab
