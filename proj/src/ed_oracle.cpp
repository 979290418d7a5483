#include "spinlab/ed_oracle.hpp"

#include <lapacke.h>

#include <bit>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace spinlab {
namespace ed {

namespace {

// site i (1-based) <-> bit position; site 1 is the most significant qubit.
inline std::uint32_t site_mask(int n_sites, int site) {
  return 1u << (n_sites - site);
}

// Lowest eigenpair of a symmetric matrix handed over as a flat column-major
// buffer. Destroys the buffer.
std::pair<double, std::vector<double>> lowest_pair(std::vector<double>& a, int n) {
  std::vector<double> w(n), z(n);
  std::vector<lapack_int> isuppz(2);
  lapack_int m = 0;
  const lapack_int info = LAPACKE_dsyevr(
      LAPACK_COL_MAJOR, 'V', 'I', 'L', n, a.data(), n, 0.0, 0.0, 1, 1,
      LAPACKE_dlamch('S'), &m, w.data(), z.data(), n, isuppz.data());
  if (info != 0) throw std::runtime_error("dsyevr failed");
  z.resize(n);
  return {w[0], std::move(z)};
}

}  // namespace

DenseHamiltonian build_spin_hamiltonian(const ChainSpec& spec) {
  if (spec.n_sites > kMaxSites)
    throw std::invalid_argument("build_spin_hamiltonian: N > 14 not supported");
  if (spec.n_sites < 2)
    throw std::invalid_argument("build_spin_hamiltonian: N < 2");

  const int n = spec.n_sites;
  const std::size_t dim = std::size_t{1} << n;
  DenseHamiltonian h{Eigen::MatrixXd::Zero(dim, dim), spec};

  const bool periodic = spec.boundary == Boundary::Periodic;
  const int n_bonds = periodic ? n : n - 1;

  double cxx, cyy, cz;  // coefficients of sx sx, sy sy and sz as printed
  if (spec.model == Model::Ising) {
    cxx = -1.0;
    cyy = 0.0;
    cz = -spec.lambda;
  } else {
    cxx = -0.5 * (1.0 + spec.gamma) / 2.0;
    cyy = -0.5 * (1.0 - spec.gamma) / 2.0;
    cz = -0.5 * spec.lambda;
  }

  for (std::size_t b = 0; b < dim; ++b) {
    // field term: sz = +1 for bit 0 (up), -1 for bit 1 (down)
    double diag = 0.0;
    for (int site = 1; site <= n; ++site)
      diag += cz * ((b & site_mask(n, site)) ? -1.0 : 1.0);
    h.matrix(b, b) += diag;

    for (int bond = 1; bond <= n_bonds; ++bond) {
      const int i = bond;
      const int j = (bond % n) + 1;
      const std::uint32_t mi = site_mask(n, i), mj = site_mask(n, j);
      const std::size_t bp = b ^ mi ^ mj;
      // sx sx flips both spins with amplitude +1; sy sy flips with amplitude
      // -1 when the two spins are equal, +1 when they differ
      const bool equal = ((b & mi) != 0) == ((b & mj) != 0);
      double amp = cxx;
      if (cyy != 0.0) amp += equal ? -cyy : cyy;
      if (amp != 0.0) h.matrix(bp, b) += amp;
    }
  }
  return h;
}

std::pair<double, Eigen::VectorXd> ground_state(const DenseHamiltonian& h) {
  const std::size_t dim = h.matrix.rows();

  // indices grouped by parity of the number of down spins
  std::vector<std::size_t> sector[2];
  for (std::size_t b = 0; b < dim; ++b)
    sector[std::popcount(b) & 1].push_back(b);

  double best_e = 0.0;
  Eigen::VectorXd best = Eigen::VectorXd::Zero(dim);
  for (int p = 0; p < 2; ++p) {
    const auto& idx = sector[p];
    const int m = static_cast<int>(idx.size());
    std::vector<double> block(static_cast<std::size_t>(m) * m);
    for (int col = 0; col < m; ++col)
      for (int row = 0; row < m; ++row)
        block[static_cast<std::size_t>(col) * m + row] =
            h.matrix(idx[row], idx[col]);
    auto [e, z] = lowest_pair(block, m);
    if (p == 0 || e < best_e) {
      best_e = e;
      best.setZero();
      for (int row = 0; row < m; ++row) best[idx[row]] = z[row];
    }
  }

  best.normalize();
  Eigen::Index imax;
  best.cwiseAbs().maxCoeff(&imax);
  if (best[imax] < 0.0) best = -best;
  return {best_e, best};
}

Eigen::VectorXd all_eigenvalues(const DenseHamiltonian& h) {
  const int dim = static_cast<int>(h.matrix.rows());
  std::vector<double> a(h.matrix.data(), h.matrix.data() + h.matrix.size());
  Eigen::VectorXd w(dim);
  const lapack_int info =
      LAPACKE_dsyev(LAPACK_COL_MAJOR, 'N', 'L', dim, a.data(), dim, w.data());
  if (info != 0) throw std::runtime_error("dsyev failed");
  return w;
}

ReducedDensity partial_trace(const Eigen::VectorXd& state, int n_sites,
                             int first, int count) {
  if (first < 1 || count < 1 || first + count - 1 > n_sites)
    throw std::invalid_argument("partial_trace: site range out of bounds");
  const int n_left = first - 1;
  const int n_right = n_sites - n_left - count;
  const std::size_t d_keep = std::size_t{1} << count;
  const std::size_t d_left = std::size_t{1} << n_left;
  const std::size_t d_right = std::size_t{1} << n_right;

  Eigen::MatrixXd rho = Eigen::MatrixXd::Zero(d_keep, d_keep);
  for (std::size_t l = 0; l < d_left; ++l) {
    for (std::size_t r = 0; r < d_right; ++r) {
      for (std::size_t k = 0; k < d_keep; ++k) {
        const double a = state[(l << (count + n_right)) | (k << n_right) | r];
        if (a == 0.0) continue;
        for (std::size_t kp = 0; kp < d_keep; ++kp)
          rho(k, kp) +=
              a * state[(l << (count + n_right)) | (kp << n_right) | r];
      }
    }
  }
  return {std::move(rho)};
}

Eigen::VectorXd density_spectrum(const ReducedDensity& rd) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(rd.rho,
                                                    Eigen::EigenvaluesOnly);
  Eigen::VectorXd p = es.eigenvalues();
  for (Eigen::Index i = 0; i < p.size(); ++i)
    p[i] = std::min(1.0, std::max(0.0, p[i]));
  return p.reverse();
}

double vn_entropy(const ReducedDensity& rd) {
  const Eigen::VectorXd p = density_spectrum(rd);
  double s = 0.0;
  for (Eigen::Index i = 0; i < p.size(); ++i)
    if (p[i] > 0.0) s -= p[i] * std::log(p[i]);
  return std::max(s, 0.0);
}

Eigen::VectorXd schmidt_coefficients(const Eigen::VectorXd& state, int n_sites,
                                     int cut) {
  if (cut < 1 || cut >= n_sites)
    throw std::invalid_argument("schmidt_coefficients: cut out of range");
  const std::size_t rows = std::size_t{1} << cut;
  const std::size_t cols = std::size_t{1} << (n_sites - cut);
  Eigen::MatrixXd amp(rows, cols);
  for (std::size_t a = 0; a < rows; ++a)
    for (std::size_t c = 0; c < cols; ++c)
      amp(a, c) = state[(a << (n_sites - cut)) | c];
  Eigen::VectorXd sv = amp.jacobiSvd().singularValues();
  return sv.array().square();
}

}  // namespace ed
}  // namespace spinlab
