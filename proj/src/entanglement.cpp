#include "spinlab/entanglement.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <queue>
#include <stdexcept>

namespace spinlab {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kArtanhGuard = 1e-14;
constexpr double kEpsCap = 70.0;
constexpr double kTailDrop = 1e-16;

// Reduced-density eigenvalues as products over mode occupations.
// Exact enumeration for L <= 16, best-first top-k expansion above.
std::vector<double> density_eigenvalues(const std::vector<double>& occ,
                                        std::size_t max_count) {
  const std::size_t n_modes = occ.size();
  std::vector<double> out;
  if (n_modes <= 16) {
    const std::size_t total = std::size_t{1} << n_modes;
    out.reserve(total);
    for (std::size_t mask = 0; mask < total; ++mask) {
      double v = 1.0;
      for (std::size_t l = 0; l < n_modes; ++l)
        v *= (mask >> l) & 1 ? occ[l] : 1.0 - occ[l];
      out.push_back(v);
    }
    std::sort(out.rbegin(), out.rend());
  } else {
    // largest eigenvalue takes the majority branch of every mode; flipping a
    // mode multiplies by its ratio r_l <= 1
    std::vector<double> ratios(n_modes);
    double top = 1.0;
    for (std::size_t l = 0; l < n_modes; ++l) {
      const double q = std::max(occ[l], 1.0 - occ[l]);
      top *= q;
      ratios[l] = std::min(occ[l], 1.0 - occ[l]) / q;
    }
    std::sort(ratios.rbegin(), ratios.rend());
    // heap of (value, last flipped mode); children flip strictly later modes
    std::priority_queue<std::pair<double, std::size_t>> heap;
    heap.emplace(top, std::size_t(0));
    bool root = true;
    while (!heap.empty() && out.size() < max_count) {
      auto [v, last] = heap.top();
      heap.pop();
      out.push_back(v);
      const std::size_t start = root ? 0 : last + 1;
      root = false;
      for (std::size_t j = start; j < n_modes; ++j) {
        const double child = v * ratios[j];
        if (child < kTailDrop) break;
        heap.emplace(child, j);
      }
    }
  }
  while (!out.empty() && out.back() < kTailDrop) out.pop_back();
  return out;
}

}  // namespace

double binary_entropy(double p) {
  double s = 0.0;
  if (p > 0.0) s -= p * std::log(p);
  if (p < 1.0) s -= (1.0 - p) * std::log(1.0 - p);
  return s;
}

CorrelationPair restrict_correlations(const CorrelationPair& corr, int sub_len) {
  const Eigen::Index n = corr.C.rows();
  if (sub_len < 1 || sub_len > n)
    throw std::invalid_argument("restrict_correlations: L out of range");
  return {corr.C.topLeftCorner(sub_len, sub_len),
          corr.F.topLeftCorner(sub_len, sub_len)};
}

EntanglementReport entanglement_spectrum(const CorrelationPair& corr_l,
                                         std::size_t max_rho_eigs) {
  const Eigen::Index sub_len = corr_l.C.rows();
  const Eigen::MatrixXd x = 2.0 * corr_l.C
                            - Eigen::MatrixXd::Identity(sub_len, sub_len)
                            + 2.0 * corr_l.F;
  // (2C-1-2F)(2C-1+2F) = X^t X, symmetric with spectrum in [0, 1]
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(x.transpose() * x);
  if (es.info() != Eigen::Success)
    throw std::runtime_error("entanglement_spectrum: eigensolver failed");

  EntanglementReport rep;
  rep.epsilons.resize(sub_len);
  std::vector<double> occ(sub_len);

  for (Eigen::Index l = 0; l < sub_len; ++l) {
    double t2 = es.eigenvalues()[l];
    if (t2 > 1.0 + 1e-8)
      throw std::runtime_error(
          "entanglement_spectrum: eigenvalue above 1, inconsistent C/F input");
    t2 = std::clamp(t2, 0.0, 1.0 - kArtanhGuard);
    const double t = std::sqrt(t2);
    double eps = std::min(2.0 * std::atanh(t), kEpsCap);

    // Resolve the sign of eps from the mode occupation <b_l^dag b_l>.
    const Eigen::VectorXd phi = es.eigenvectors().col(l);
    if (t > 1e-12) {
      const Eigen::VectorXd psi = (x * phi) / t;
      const Eigen::VectorXd gam = 0.5 * (phi + psi);
      const Eigen::VectorXd eta = 0.5 * (phi - psi);
      const double n_l = gam.dot(corr_l.C * gam) + gam.dot(corr_l.F * eta) +
                         eta.dot(corr_l.F.transpose() * gam) + eta.squaredNorm() -
                         eta.dot(corr_l.C * eta);
      if (n_l > 0.5) eps = -eps;
    }
    rep.epsilons[l] = eps;
    occ[l] = 1.0 / (1.0 + std::exp(eps));
  }

  // report modes ordered by ascending |eps|
  std::vector<Eigen::Index> order(sub_len);
  for (Eigen::Index l = 0; l < sub_len; ++l) order[l] = l;
  std::sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b) {
    return std::abs(rep.epsilons[a]) < std::abs(rep.epsilons[b]);
  });
  Eigen::VectorXd sorted(sub_len);
  for (Eigen::Index l = 0; l < sub_len; ++l) sorted[l] = rep.epsilons[order[l]];
  rep.epsilons = sorted;

  rep.entropy = 0.0;
  for (double p : occ) rep.entropy += binary_entropy(p);

  rep.rho_eigs = density_eigenvalues(occ, max_rho_eigs);
  double mass = 0.0;
  for (double v : rep.rho_eigs) mass += v;
  rep.dropped_mass = 1.0 - mass;
  rep.schmidt_gap =
      rep.rho_eigs.size() > 1 ? rep.rho_eigs[0] - rep.rho_eigs[1] : rep.rho_eigs[0];
  return rep;
}

std::vector<double> symbol_fourier_coeffs(double lambda, double gamma,
                                          int l_max, int quadrature_points) {
  if (quadrature_points < 2)
    throw std::invalid_argument("symbol_fourier_coeffs: too few nodes");
  const int m = quadrature_points;

  std::vector<std::complex<double>> f(m);
  double offset = 0.5;
  for (int shift_try = 0;; ++shift_try) {
    // midpoint rule: periodic integrand, nodes never hit phi = 0
    offset = shift_try == 0 ? 0.5 : 0.25;
    bool ok = true;
    for (int j = 0; j < m; ++j) {
      const double phi = (j + offset) * 2.0 * kPi / m;
      const std::complex<double> num(std::cos(phi) - lambda,
                                     -gamma * std::sin(phi));
      const double den = std::abs(num);
      if (den < 1e-14) {
        ok = false;
        break;
      }
      f[j] = num / den;
    }
    if (ok) break;
    if (shift_try >= 1)
      throw std::runtime_error("symbol_fourier_coeffs: symbol vanishes on grid");
  }

  std::vector<double> coeffs(2 * l_max + 1);
  for (int l = -l_max; l <= l_max; ++l) {
    std::complex<double> acc(0.0, 0.0);
    for (int j = 0; j < m; ++j) {
      const double phi = (j + offset) * 2.0 * kPi / m;
      acc += f[j] * std::polar(1.0, -l * phi);
    }
    acc /= static_cast<double>(m);
    if (std::abs(acc.imag()) > 1e-10)
      throw std::runtime_error("symbol_fourier_coeffs: g_l not real");
    coeffs[l + l_max] = acc.real();
  }
  return coeffs;
}

MajoranaBlock majorana_block(double lambda, double gamma, int sub_len,
                             int quadrature_points) {
  if (sub_len < 1) throw std::invalid_argument("majorana_block: L >= 1 required");
  const auto g = symbol_fourier_coeffs(lambda, gamma, sub_len - 1,
                                       quadrature_points);
  const int l_max = sub_len - 1;

  MajoranaBlock mb;
  mb.gamma = Eigen::MatrixXd::Zero(2 * sub_len, 2 * sub_len);
  for (int i = 0; i < sub_len; ++i) {
    for (int j = 0; j < sub_len; ++j) {
      mb.gamma(2 * i, 2 * j + 1) = g[(j - i) + l_max];
      mb.gamma(2 * i + 1, 2 * j) = -g[(i - j) + l_max];
    }
  }

  // i*Gamma is Hermitian with spectrum symmetric about zero
  Eigen::MatrixXcd ig =
      std::complex<double>(0.0, 1.0) * mb.gamma.cast<std::complex<double>>();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(ig, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success)
    throw std::runtime_error("majorana_block: eigensolver failed");

  mb.nus.resize(sub_len);
  for (int k = 0; k < sub_len; ++k) {
    double nu = es.eigenvalues()[sub_len + k];  // nonnegative half
    if (nu > 1.0 + 1e-9)
      throw std::runtime_error("majorana_block: |nu| > 1");
    mb.nus[k] = std::clamp(nu, 0.0, 1.0);
  }
  return mb;
}

double entropy_thermo(double lambda, double gamma, int sub_len,
                      int quadrature_points) {
  if (quadrature_points < 512)
    throw std::invalid_argument("entropy_thermo: quadrature_points >= 512 required");
  const MajoranaBlock mb = majorana_block(lambda, gamma, sub_len,
                                          quadrature_points);
  double s = 0.0;
  for (int k = 0; k < sub_len; ++k)
    s += binary_entropy(0.5 * (1.0 + mb.nus[k]));
  return s;
}

CentralChargeFit fit_central_charge(
    const std::vector<std::pair<double, double>>& entropies) {
  const std::size_t n = entropies.size();
  if (n < 5)
    throw std::invalid_argument("fit_central_charge: need at least 5 points");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (const auto& [len, s] : entropies) {
    const double x = std::log(len);
    sx += x;
    sy += s;
    sxx += x * x;
    sxy += x * s;
  }
  const double denom = n * sxx - sx * sx;
  const double slope = (n * sxy - sx * sy) / denom;
  const double intercept = (sy - slope * sx) / n;

  CentralChargeFit fit;
  fit.c = 3.0 * slope;
  fit.intercept = intercept;
  double ss = 0.0;
  for (const auto& [len, s] : entropies) {
    const double r = s - (slope * std::log(len) + intercept);
    ss += r * r;
  }
  fit.residual = std::sqrt(ss / n);
  return fit;
}

}  // namespace spinlab
