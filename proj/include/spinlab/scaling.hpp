#pragma once

#include <string>
#include <vector>

#include "spinlab/chain_model.hpp"

namespace spinlab {
namespace scaling {

struct SweepRow {
  int n_sites = 0;
  double lambda = 0.0;
  double schmidt_gap = 0.0;
  double entropy = 0.0;
  double ground_energy = 0.0;
  bool ok = true;
  std::string error;
};

struct SweepResult {
  Model model = Model::Ising;
  double gamma = 1.0;
  std::vector<SweepRow> rows;
};

/// Half-chain Schmidt gap, entropy and ground energy over an (N, lambda)
/// grid (L = N/2 bipartition). Periodic chains use the even sector; open
/// chains have markedly smaller finite-size corrections to the critical gap
/// exponent. All N must be even. Individual failures are recorded per row;
/// the sweep continues.
SweepResult sweep(const std::vector<int>& ns, const std::vector<double>& lambdas,
                  Model model = Model::Ising, double gamma = 1.0,
                  Boundary boundary = Boundary::Periodic);

/// CSV with header N,lambda,schmidt_gap,entropy,ground_energy; 17 significant
/// digits, LF line endings, failed rows omitted.
std::string to_csv(const SweepResult& result);

/// JSON mirror of the rows plus model/gamma metadata.
std::string to_json(const SweepResult& result);

struct CollapseFit {
  double mu1 = 0.0;
  double mu2 = 0.0;
  double cost = 0.0;
  double nu_est = 0.0;   // 1/mu2
  double beta_est = 0.0; // mu1/mu2
};

struct SearchBox {
  double mu1_lo = 0.0, mu1_hi = 0.5;
  double mu2_lo = 0.2, mu2_hi = 2.0;
};

/// Collapse objective at fixed exponents: rescale to
/// x = (lambda - lambda_c) N^mu2, y = gap N^mu1, fit one cubic spline through
/// the pooled points, return the mean squared vertical residual normalized by
/// the variance of y (the normalization keeps the objective scale-free in mu1).
double collapse_cost(const SweepResult& result, double lambda_c, double mu1,
                     double mu2);

/// Minimize collapse_cost over (mu1, mu2): coarse grid over the box, then
/// Nelder-Mead refinement from the best grid point.
CollapseFit collapse(const SweepResult& result, double lambda_c,
                     const SearchBox& box = {});

}  // namespace scaling
}  // namespace spinlab
