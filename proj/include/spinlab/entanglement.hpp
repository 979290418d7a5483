#pragma once

#include <Eigen/Dense>
#include <vector>

#include "spinlab/free_fermion.hpp"

namespace spinlab {

/// Entanglement data for a contiguous sub-chain of L sites.
struct EntanglementReport {
  Eigen::VectorXd epsilons;       // signed single-particle energies, ascending |eps|
  std::vector<double> rho_eigs;   // reduced-density eigenvalues, descending
  double dropped_mass = 0.0;      // 1 - sum(rho_eigs): truncation + <1e-16 tail
  double entropy = 0.0;           // natural log
  double schmidt_gap = 0.0;       // rho_eigs[0] - rho_eigs[1]
};

/// Majorana correlation data for the thermodynamic-limit route.
struct MajoranaBlock {
  Eigen::MatrixXd gamma;  // 2L x 2L antisymmetric
  Eigen::VectorXd nus;    // L nonnegative eigenvalues of i*gamma, ascending
};

struct CentralChargeFit {
  double c = 0.0;
  double intercept = 0.0;
  double residual = 0.0;  // RMS of the fit
};

/// Leading L x L principal submatrices of C and F.
CorrelationPair restrict_correlations(const CorrelationPair& corr, int sub_len);

/// Solve (2C-1-2F)(2C-1+2F)|phi> = tanh^2(eps/2)|phi> and assemble the
/// report. The sign of each eps is recovered from the mode occupation, so
/// occupations > 1/2 get eps < 0. rho_eigs are generated exactly for
/// L <= 16 and by best-first truncation (up to `max_rho_eigs`) above that.
EntanglementReport entanglement_spectrum(const CorrelationPair& corr_l,
                                         std::size_t max_rho_eigs = 4096);

/// Fourier coefficients g_l of the ground-state symbol
/// (cos phi - lambda - i gamma sin phi)/|...| for l in [-l_max, l_max],
/// by uniform midpoint quadrature. Returned as coeffs[l + l_max].
std::vector<double> symbol_fourier_coeffs(double lambda, double gamma,
                                          int l_max, int quadrature_points);

/// Majorana correlation block of an infinite chain restricted to L sites.
MajoranaBlock majorana_block(double lambda, double gamma, int sub_len,
                             int quadrature_points);

/// Entanglement entropy of an L-site block of the infinite chain,
/// S(L) = sum_m H((1+nu_m)/2), natural log.
double entropy_thermo(double lambda, double gamma, int sub_len,
                      int quadrature_points = 4096);

/// Least-squares fit S = (c/3) ln L + b over the given (L, S) points.
CentralChargeFit fit_central_charge(
    const std::vector<std::pair<double, double>>& entropies);

/// Binary Shannon entropy, natural log, with 0 log 0 = 0.
double binary_entropy(double p);

}  // namespace spinlab
