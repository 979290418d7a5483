#include "spinlab/free_fermion.hpp"

#include <cmath>
#include <stdexcept>

namespace spinlab {

namespace {

// First component with |value| > 1e-8 made positive.
void fix_sign(Eigen::Ref<Eigen::VectorXd> v) {
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (std::abs(v[i]) > 1e-8) {
      if (v[i] < 0.0) v = -v;
      return;
    }
  }
}

}  // namespace

BogoliubovSolution solve(const QuadraticForm& qf) {
  const Eigen::Index n = qf.A.rows();
  if (qf.B.rows() != n || qf.A.cols() != n || qf.B.cols() != n)
    throw std::invalid_argument("solve: A, B must be square and same size");

  const Eigen::MatrixXd apb = qf.A + qf.B;
  const Eigen::MatrixXd amb = qf.A - qf.B;

  // (A+B)(A-B) is symmetric PSD; its eigenvectors are the |Psi_k>.
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(apb * amb);
  if (es.info() != Eigen::Success)
    throw std::runtime_error("solve: eigensolver failed on (A+B)(A-B)");

  Eigen::VectorXd ev = es.eigenvalues();  // ascending
  const double scale = std::max(std::abs(ev[0]), std::abs(ev[n - 1]));
  for (Eigen::Index k = 0; k < n; ++k) {
    if (ev[k] < -1e-9 * std::max(scale, 1.0))
      throw std::runtime_error("solve: negative eigenvalue of (A+B)(A-B)");
    ev[k] = std::max(ev[k], 0.0);
  }

  BogoliubovSolution sol;
  sol.lambdas = ev.cwiseSqrt();
  sol.Psi.resize(n, n);
  sol.Phi.resize(n, n);
  const double zero_tol = 1e-8 * std::max(sol.lambdas[n - 1], 1.0);

  Eigen::Index n_zero = 0;
  for (Eigen::Index k = 0; k < n; ++k) {
    Eigen::VectorXd psi = es.eigenvectors().col(k);
    fix_sign(psi);
    sol.Psi.row(k) = psi.transpose();
    if (sol.lambdas[k] > zero_tol) {
      sol.Phi.row(k) = (amb * psi).transpose() / sol.lambdas[k];
    } else {
      ++n_zero;
    }
  }

  if (n_zero > 0) {
    // Zero modes: |Phi> cannot be recovered from |Psi>; take the null space
    // of (A-B)(A+B) instead. The overall sign is genuinely ambiguous there
    // ((A+B)|Phi> = 0 = Lambda |Psi>), so only the first-component convention
    // applies.
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es2(amb * apb);
    if (es2.info() != Eigen::Success)
      throw std::runtime_error("solve: eigensolver failed on (A-B)(A+B)");
    const double lam_max = std::max(sol.lambdas[n - 1], 1.0);
    const double sq_tol =
        std::max(zero_tol * zero_tol, 1e-12 * lam_max * lam_max);
    for (Eigen::Index k = 0; k < n_zero; ++k) {
      if (es2.eigenvalues()[k] > sq_tol)
        throw std::runtime_error(
            "solve: zero-mode count mismatch between the two squared problems");
      Eigen::VectorXd phi = es2.eigenvectors().col(k);
      fix_sign(phi);
      sol.Phi.row(k) = phi.transpose();
    }
  }

  // The division by Lambda_k amplifies eigensolver roundoff in Phi; snap it
  // back to the nearest orthogonal matrix (polar factor). This touches rows
  // only at the 1e-9 level but restores the CAR identities to ~1e-14.
  {
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(
        sol.Phi, Eigen::ComputeFullU | Eigen::ComputeFullV);
    sol.Phi = svd.matrixU() * svd.matrixV().transpose();
  }

  sol.g = 0.5 * (sol.Phi + sol.Psi);
  sol.h = 0.5 * (sol.Phi - sol.Psi);
  sol.ground_energy = 0.5 * qf.A.trace() - 0.5 * sol.lambdas.sum() + qf.offset;
  return sol;
}

CorrelationPair correlations(const BogoliubovSolution& sol) {
  CorrelationPair cp;
  cp.C = sol.h.transpose() * sol.h;
  cp.F = sol.h.transpose() * sol.g;
  // symmetrize away roundoff so downstream eigenproblems see exact structure
  cp.C = 0.5 * (cp.C + cp.C.transpose()).eval();
  cp.F = 0.5 * (cp.F - cp.F.transpose()).eval();
  return cp;
}

int vacuum_parity(const BogoliubovSolution& sol) {
  const double d = sol.Phi.determinant() * sol.Psi.determinant();
  return d >= 0.0 ? +1 : -1;
}

double sector_ground_energy(const ChainSpec& spec) {
  const BogoliubovSolution sol = solve(build_quadratic_form(spec));
  if (spec.boundary == Boundary::Open) return sol.ground_energy;
  const Eigen::Index n = sol.lambdas.size();
  const double zero_tol = 1e-8 * std::max(sol.lambdas[n - 1], 1.0);
  if (sol.lambdas[0] < zero_tol) return sol.ground_energy;  // degenerate parities
  if (vacuum_parity(sol) == spec.parity_sign()) return sol.ground_energy;
  return sol.ground_energy + sol.lambdas[0];
}

double best_ground_energy(const ChainSpec& spec) {
  if (spec.boundary == Boundary::Open) return sector_ground_energy(spec);
  return ground_energy_check(spec).best_e0;
}

SectorEnergies ground_energy_check(const ChainSpec& spec) {
  if (spec.boundary != Boundary::Periodic)
    throw std::invalid_argument("ground_energy_check: periodic chains only");
  ChainSpec even = spec, odd = spec;
  even.parity = Parity::Even;
  odd.parity = Parity::Odd;
  SectorEnergies se;
  se.even_e0 = sector_ground_energy(even);
  se.odd_e0 = sector_ground_energy(odd);
  se.lower = se.even_e0 <= se.odd_e0 ? Parity::Even : Parity::Odd;
  se.gap = std::abs(se.even_e0 - se.odd_e0);
  se.best_e0 = std::min(se.even_e0, se.odd_e0);
  return se;
}

}  // namespace spinlab
