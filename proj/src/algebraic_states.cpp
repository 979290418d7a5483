#include "spinlab/algebraic_states.hpp"

#include <cmath>
#include <complex>
#include <random>
#include <stdexcept>

namespace spinlab {
namespace alg {

namespace {

constexpr double kSpanTol = 1e-10;
constexpr double kNullTol = 1e-10;
constexpr double kGramNegTol = -1e-8;
constexpr double kBlockTol = 1e-8;

std::complex<double> frob(const Mat& a, const Mat& b) {
  return (a.adjoint() * b).trace();
}

// Gram-Schmidt step: residual of cand against the orthonormal basis; appends
// the normalized residual when it is not negligible.
bool maybe_extend(std::vector<Mat>& basis, Mat cand) {
  const double norm0 = cand.norm();
  if (norm0 < 1e-14) return false;
  cand /= norm0;
  for (int pass = 0; pass < 2; ++pass)  // twice, for numerical orthogonality
    for (const Mat& e : basis) cand -= frob(e, cand) * e;
  const double res = cand.norm();
  if (res < kSpanTol) return false;
  basis.push_back(cand / res);
  return true;
}

// Basis of {X : [X, m] = 0 for all m}, via the SVD null space of the stacked
// commutator equations.
std::vector<Mat> commutant_basis(const std::vector<Mat>& mats) {
  if (mats.empty()) throw std::invalid_argument("commutant_basis: no matrices");
  const Eigen::Index m = mats[0].rows();
  Eigen::MatrixXcd stacked(mats.size() * m * m, m * m);
  const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(m, m);
  for (std::size_t a = 0; a < mats.size(); ++a) {
    // vec([X, A]) = (I kron A - A^T kron I) vec(X), column-major vec
    Eigen::MatrixXcd op(m * m, m * m);
    for (Eigen::Index i = 0; i < m; ++i)
      for (Eigen::Index j = 0; j < m; ++j)
        op.block(i * m, j * m, m, m) =
            id(j, i) * mats[a] - mats[a](j, i) * id;
    stacked.middleRows(a * m * m, m * m) = op;
  }
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(stacked, Eigen::ComputeThinV);
  const auto& sv = svd.singularValues();
  const double tol = 1e-8 * std::max(1.0, sv.size() ? sv[0] : 0.0);
  std::vector<Mat> out;
  for (Eigen::Index k = 0; k < sv.size(); ++k) {
    if (sv[k] > tol) continue;
    out.emplace_back(Eigen::Map<const Mat>(svd.matrixV().col(k).data(), m, m));
  }
  return out;
}

}  // namespace

AlgState vector_state(const Vec& psi) {
  if (std::abs(psi.norm() - 1.0) > 1e-12)
    throw std::invalid_argument("vector_state: unit vector required");
  return {psi * psi.adjoint()};
}

AlgState density_state(const Mat& rho) {
  if (std::abs(rho.trace().real() - 1.0) > 1e-12 ||
      std::abs(rho.trace().imag()) > 1e-12)
    throw std::invalid_argument("density_state: trace 1 required");
  return {rho};
}

double vn_entropy(const Mat& rho) {
  Eigen::SelfAdjointEigenSolver<Mat> es(rho, Eigen::EigenvaluesOnly);
  double s = 0.0;
  for (Eigen::Index i = 0; i < rho.rows(); ++i) {
    const double p = es.eigenvalues()[i];
    if (p > 1e-15) s -= p * std::log(p);
  }
  return s;
}

FiniteAlgebra close_algebra(const std::vector<Mat>& generators) {
  if (generators.empty())
    throw std::invalid_argument("close_algebra: no generators");
  const Eigen::Index d = generators[0].rows();
  for (const Mat& g : generators)
    if (g.rows() != d || g.cols() != d)
      throw std::invalid_argument("close_algebra: inconsistent dimensions");

  FiniteAlgebra a;
  a.ambient_dim = static_cast<int>(d);
  maybe_extend(a.basis, Mat::Identity(d, d));
  for (const Mat& g : generators) {
    maybe_extend(a.basis, g);
    maybe_extend(a.basis, g.adjoint());
  }

  const std::size_t max_dim = static_cast<std::size_t>(d) * d;
  bool grew = true;
  std::size_t rounds = 0;
  while (grew) {
    if (++rounds > max_dim + 1)
      throw std::runtime_error("close_algebra: closure did not stabilize");
    grew = false;
    const std::size_t n = a.basis.size();
    for (std::size_t i = 0; i < n; ++i) {
      grew |= maybe_extend(a.basis, a.basis[i].adjoint());
      for (std::size_t j = 0; j < n; ++j)
        grew |= maybe_extend(a.basis, a.basis[i] * a.basis[j]);
    }
    if (a.basis.size() > max_dim)
      throw std::runtime_error("close_algebra: dimension exceeds d^2");
  }
  return a;
}

GnsResult gns(const FiniteAlgebra& algebra, const AlgState& state) {
  const std::size_t n = algebra.basis.size();
  if (n == 0) throw std::invalid_argument("gns: empty algebra");

  Mat gram(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      gram(i, j) = state(algebra.basis[i].adjoint() * algebra.basis[j]);
  gram = 0.5 * (gram + gram.adjoint()).eval();

  Eigen::SelfAdjointEigenSolver<Mat> es(gram);
  if (es.info() != Eigen::Success)
    throw std::runtime_error("gns: Gram eigensolver failed");
  if (es.eigenvalues()[0] < kGramNegTol)
    throw std::invalid_argument("gns: state not positive on the algebra");

  // quotient by the null ideal: keep eigenvectors with mu >= threshold,
  // normalized in the omega inner product
  std::vector<Eigen::Index> kept;
  for (Eigen::Index k = 0; k < static_cast<Eigen::Index>(n); ++k)
    if (es.eigenvalues()[k] >= kNullTol) kept.push_back(k);
  const int m = static_cast<int>(kept.size());

  Mat q(n, m);
  for (int i = 0; i < m; ++i)
    q.col(i) = es.eigenvectors().col(kept[i]) / std::sqrt(es.eigenvalues()[kept[i]]);

  // structure constants of left multiplication in the orthonormal basis
  std::vector<Mat> left(n, Mat(n, n));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      const Mat prod = algebra.basis[a] * algebra.basis[b];
      for (std::size_t c = 0; c < n; ++c)
        left[a](c, b) = frob(algebra.basis[c], prod);
    }

  GnsResult res;
  res.hilbert_dim = m;
  res.rep_matrices.reserve(n);
  for (std::size_t a = 0; a < n; ++a)
    res.rep_matrices.push_back(q.adjoint() * gram * left[a] * q);

  // coefficients of the identity in the basis, then its class in the quotient
  Vec identity_coeffs(n);
  for (std::size_t b = 0; b < n; ++b)
    identity_coeffs[b] = algebra.basis[b].adjoint().trace();
  res.cyclic_vector = q.adjoint() * gram * identity_coeffs;

  // Invariant blocks by diagonalizing the commutant. When the rep contains
  // equivalent blocks the decomposition is not unique, and rho_omega depends
  // on it; the choice that reproduces the canonical density operator is the
  // one aligned with the state. So the primary splitting element is the
  // commutant representative Y0 of omega (Tr(Y0 X) = <Omega|X|Omega> on the
  // commutant), refined inside each of its eigenspaces by a seeded random
  // Hermitian commutant element.
  const std::vector<Mat> comm = commutant_basis(res.rep_matrices);
  const std::size_t nc = comm.size();

  Mat moment(nc, nc);
  Vec rhs(nc);
  for (std::size_t k = 0; k < nc; ++k) {
    for (std::size_t l = 0; l < nc; ++l) moment(k, l) = frob(comm[k], comm[l]);
    rhs[k] = res.cyclic_vector.dot(comm[k].adjoint() * res.cyclic_vector);
  }
  const Vec coef = moment.colPivHouseholderQr().solve(rhs);
  Mat y0 = Mat::Zero(m, m);
  for (std::size_t k = 0; k < nc; ++k) y0 += coef[k] * comm[k];
  y0 = 0.5 * (y0 + y0.adjoint()).eval();

  Eigen::SelfAdjointEigenSolver<Mat> ey0(y0);
  const double scale0 = std::max(1.0, std::abs(ey0.eigenvalues()[m - 1]));

  for (unsigned seed : {12345u, 987654321u}) {
    std::mt19937 rng(seed);
    std::normal_distribution<double> dist;
    Mat r = Mat::Zero(m, m);
    for (const Mat& x : comm)
      r += std::complex<double>(dist(rng), dist(rng)) * x;
    r = 0.5 * (r + r.adjoint()).eval();

    std::vector<Mat> projectors;
    int start = 0;
    for (int k = 1; k <= m; ++k) {
      if (k < m &&
          ey0.eigenvalues()[k] - ey0.eigenvalues()[k - 1] < 1e-8 * scale0)
        continue;
      // eigenspace of y0; split it further by the random commutant element
      const Mat v = ey0.eigenvectors().middleCols(start, k - start);
      const Mat b = v.adjoint() * r * v;
      Eigen::SelfAdjointEigenSolver<Mat> eb(b);
      const int mb = static_cast<int>(b.rows());
      const double scale_b =
          std::max(1.0, std::abs(eb.eigenvalues()[mb - 1]));
      int bs = 0;
      for (int j = 1; j <= mb; ++j) {
        if (j < mb &&
            eb.eigenvalues()[j] - eb.eigenvalues()[j - 1] < 1e-8 * scale_b)
          continue;
        const Mat w = v * eb.eigenvectors().middleCols(bs, j - bs);
        projectors.push_back(w * w.adjoint());
        bs = j;
      }
      start = k;
    }

    bool invariant = true;
    for (const Mat& p : projectors)
      for (const Mat& pa : res.rep_matrices)
        if ((p * pa - pa * p).norm() > kBlockTol) invariant = false;
    if (!invariant) continue;  // degenerate draw; retry with the other seed

    res.block_projectors = projectors;
    break;
  }
  if (res.block_projectors.empty())
    throw std::runtime_error("gns: block decomposition failed for both seeds");

  res.rho_omega = Mat::Zero(m, m);
  for (const Mat& p : res.block_projectors) {
    const Vec v = p * res.cyclic_vector;
    res.rho_omega += v * v.adjoint();
  }
  res.entropy = vn_entropy(res.rho_omega);
  return res;
}

AlgState restrict_state(const AlgState& state, const FiniteAlgebra& sub) {
  if (state.rho.rows() != sub.ambient_dim)
    throw std::invalid_argument("restrict_state: ambient dimension mismatch");
  const std::size_t n = sub.basis.size();
  Mat gram(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      gram(i, j) = state(sub.basis[i].adjoint() * sub.basis[j]);
  gram = 0.5 * (gram + gram.adjoint()).eval();
  Eigen::SelfAdjointEigenSolver<Mat> es(gram, Eigen::EigenvaluesOnly);
  if (es.eigenvalues()[0] < kGramNegTol)
    throw std::runtime_error("restrict_state: restriction not positive");
  return state;
}

PurityReport purity_report(const GnsResult& result) {
  PurityReport pr;
  pr.commutant_dim =
      static_cast<int>(commutant_basis(result.rep_matrices).size());
  pr.is_irreducible = pr.commutant_dim == 1;
  return pr;
}

namespace {

// Full Fock space of 4 fermionic modes in the order (a1, a2, b1, b2);
// occupation bitmask indexes the 16 states, mode 0 = lowest bit.
Eigen::MatrixXcd creation(int mode) {
  Eigen::MatrixXcd c = Eigen::MatrixXcd::Zero(16, 16);
  for (int mask = 0; mask < 16; ++mask) {
    if (mask & (1 << mode)) continue;
    int sign = 1;  // Jordan-Wigner string over the lower modes
    for (int l = 0; l < mode; ++l)
      if (mask & (1 << l)) sign = -sign;
    c(mask | (1 << mode), mask) = sign;
  }
  return c;
}

}  // namespace

TwoFermionSpace two_fermion_space() {
  const Eigen::MatrixXcd a1 = creation(0), a2 = creation(1), b1 = creation(2),
                         b2 = creation(3);
  Eigen::VectorXcd vac = Eigen::VectorXcd::Zero(16);
  vac[0] = 1.0;

  TwoFermionSpace sp;
  sp.embed.resize(16, 6);
  sp.embed.col(0) = a1 * a2 * vac;
  sp.embed.col(1) = b1 * b2 * vac;
  sp.embed.col(2) = a1 * b2 * vac;
  sp.embed.col(3) = a2 * b1 * vac;
  sp.embed.col(4) = a1 * b1 * vac;
  sp.embed.col(5) = a2 * b2 * vac;

  auto project = [&](const Eigen::MatrixXcd& op) -> Mat {
    return sp.embed.adjoint() * op * sp.embed;
  };
  const Eigen::MatrixXcd na1 = a1 * a1.adjoint();
  const Eigen::MatrixXcd na2 = a2 * a2.adjoint();
  const std::complex<double> i_unit(0.0, 1.0);

  sp.generators.push_back(Mat::Identity(6, 6));
  sp.generators.push_back(project(na1 * na2));               // n12
  sp.generators.push_back(project(na1 + na2));               // N_a
  sp.generators.push_back(
      project(0.5 * (a1 * a2.adjoint() + a2 * a1.adjoint())));           // T1
  sp.generators.push_back(
      project(0.5 * (-i_unit * a1 * a2.adjoint() + i_unit * a2 * a1.adjoint())));  // T2
  sp.generators.push_back(project(0.5 * (na1 - na2)));       // T3
  return sp;
}

Vec psi_theta(double theta) {
  Vec v = Vec::Zero(6);
  v[2] = std::cos(theta);
  v[3] = std::sin(theta);
  return v;
}

}  // namespace alg
}  // namespace spinlab
