#pragma once

#include <Eigen/Dense>
#include <vector>

namespace spinlab {
namespace alg {

using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;

/// A *-subalgebra of the d x d complex matrices, spanned by a
/// Frobenius-orthonormal basis that always contains the identity in its span.
struct FiniteAlgebra {
  int ambient_dim = 0;
  std::vector<Mat> basis;
};

/// State as a linear functional a -> Tr(rho a) with an ambient matrix rho.
/// Vector states use rho = |psi><psi|; the same rho serves every subalgebra,
/// which is what makes restriction trivial to express.
struct AlgState {
  Mat rho;

  std::complex<double> operator()(const Mat& a) const {
    return (rho * a).trace();
  }
};

AlgState vector_state(const Vec& psi);
AlgState density_state(const Mat& rho);

struct GnsResult {
  int hilbert_dim = 0;
  std::vector<Mat> rep_matrices;    // pi(e_a), basis-indexed
  Vec cyclic_vector;                // |[1]>
  std::vector<Mat> block_projectors;
  Mat rho_omega;
  double entropy = 0.0;             // natural log
};

struct PurityReport {
  bool is_irreducible = false;
  int commutant_dim = 0;
};

/// Close a generator set under products and adjoints by iterated
/// Gram-Schmidt in the Frobenius inner product (residual tolerance 1e-10).
/// The identity is always adjoined.
FiniteAlgebra close_algebra(const std::vector<Mat>& generators);

/// GNS construction: Gram matrix G_ab = omega(e_a* e_b), null ideal from
/// Gram eigenvalues < 1e-10, left multiplication on the quotient, invariant
/// blocks from the spectral decomposition of a seeded random Hermitian
/// commutant element, rho_omega = sum_k P_k |[1]><[1]| P_k.
GnsResult gns(const FiniteAlgebra& algebra, const AlgState& state);

/// The same functional viewed on a subalgebra; positivity is re-verified on
/// the subalgebra's Gram matrix.
AlgState restrict_state(const AlgState& state, const FiniteAlgebra& sub);

/// Commutant dimension of the GNS representation via the linear system
/// [X, pi(e_a)] = 0; irreducible iff the commutant is trivial.
PurityReport purity_report(const GnsResult& result);

/// -sum p ln p over the eigenvalues of a Hermitian density matrix.
double vn_entropy(const Mat& rho);

/// Two-fermion toolkit: modes (a1, a2, b1, b2), the 6-dimensional
/// two-particle sector with basis
/// {a1+a2+, b1+b2+, a1+b2+, a2+b1+, a1+b1+, a2+b2+}|0>, and the one-site
/// observables n12 = n_a1 n_a2, N_a = n_a1 + n_a2,
/// T_i = (1/2) a_l+ (sigma_i)_{ll'} a_l' projected to that sector.
struct TwoFermionSpace {
  Eigen::MatrixXcd embed;          // 16 x 6 isometry into the full Fock space
  std::vector<Mat> generators;     // {1, n12, N_a, T1, T2, T3}, 6 x 6
};

TwoFermionSpace two_fermion_space();

/// (cos t a1+ b2+ + sin t a2+ b1+)|0> in the 6-dim two-particle basis.
Vec psi_theta(double theta);

}  // namespace alg
}  // namespace spinlab
