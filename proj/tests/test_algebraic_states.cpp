#include <cmath>
#include <numbers>
#include <random>

#include <unsupported/Eigen/KroneckerProduct>

#include "doctest.h"
#include "spinlab/algebraic_states.hpp"

using namespace spinlab::alg;

namespace {

constexpr double kPi = std::numbers::pi;

Mat unit(int d, int i, int j) {
  Mat m = Mat::Zero(d, d);
  m(i, j) = 1.0;
  return m;
}

AlgState omega_lambda(double lambda) {
  Mat rho = Mat::Zero(2, 2);
  rho(0, 0) = lambda;
  rho(1, 1) = 1.0 - lambda;
  return density_state(rho);
}

FiniteAlgebra full_m2() { return close_algebra({unit(2, 0, 1)}); }

double binary_h(double p) {
  double s = 0.0;
  if (p > 0) s -= p * std::log(p);
  if (p < 1) s -= (1 - p) * std::log(1 - p);
  return s;
}

Vec random_vec(int d, std::mt19937& rng) {
  std::normal_distribution<double> dist;
  Vec v(d);
  for (int i = 0; i < d; ++i) v[i] = std::complex<double>(dist(rng), dist(rng));
  return v / v.norm();
}

// pi is a *-homomorphism and omega-compatible on the algebra basis
void check_gns_consistency(const FiniteAlgebra& a, const AlgState& w,
                           const GnsResult& r) {
  const std::size_t n = a.basis.size();
  const int m = r.hilbert_dim;
  for (std::size_t i = 0; i < n; ++i) {
    // vector-state property <[1]|pi(a)|[1]> = omega(a)
    const std::complex<double> expect =
        r.cyclic_vector.dot(r.rep_matrices[i] * r.cyclic_vector);
    CHECK(std::abs(expect - w(a.basis[i])) < 1e-9);
    // density-operator property Tr(rho pi(a)) = omega(a)
    const std::complex<double> via_rho =
        (r.rho_omega * r.rep_matrices[i]).trace();
    CHECK(std::abs(via_rho - w(a.basis[i])) < 1e-9);
  }
  // homomorphism: pi(e_i e_j) = pi(e_i) pi(e_j), with the product expanded
  // back onto the basis
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      Mat lhs = Mat::Zero(m, m);
      const Mat prod = a.basis[i] * a.basis[j];
      for (std::size_t c = 0; c < n; ++c)
        lhs += (a.basis[c].adjoint() * prod).trace() * r.rep_matrices[c];
      CHECK((lhs - r.rep_matrices[i] * r.rep_matrices[j]).norm() < 1e-9);
      // *-compatibility
      Mat star = Mat::Zero(m, m);
      for (std::size_t c = 0; c < n; ++c)
        star += (a.basis[c].adjoint() * a.basis[i].adjoint()).trace() *
                r.rep_matrices[c];
      CHECK((star - r.rep_matrices[i].adjoint()).norm() < 1e-9);
    }
  Mat sum = Mat::Zero(m, m);
  for (const Mat& p : r.block_projectors) sum += p;
  CHECK((sum - Mat::Identity(m, m)).norm() < 1e-8);
  CHECK(std::abs(r.rho_omega.trace().real() - 1.0) < 1e-10);
}

}  // namespace

TEST_SUITE("alg") {

TEST_CASE("algebra closure") {
  CHECK(full_m2().basis.size() == 4);
  Mat diag = Mat::Zero(2, 2);
  diag(0, 0) = 1.0;
  diag(1, 1) = -1.0;
  CHECK(close_algebra({diag}).basis.size() == 2);  // commutative {1, sigma_z}
  // closure invariant: every product stays in the span
  const auto a = full_m2();
  for (const Mat& x : a.basis)
    for (const Mat& y : a.basis) {
      Mat res = x * y;
      for (const Mat& e : a.basis) res -= (e.adjoint() * (x * y)).trace() * e;
      CHECK(res.norm() < 1e-10);
    }
}

TEST_CASE("two-fermion one-site subalgebra dimension") {
  const auto space = two_fermion_space();
  CHECK((space.embed.adjoint() * space.embed - Mat::Identity(6, 6)).norm() <
        1e-12);
  const auto sub = close_algebra(space.generators);
  CHECK(sub.basis.size() == 6);  // regression value: proper subalgebra of M6
}

TEST_CASE("gns of the m2 family") {
  SUBCASE("hilbert dimensions") {
    for (double lambda : {0.2, 0.5, 0.9})
      CHECK(gns(full_m2(), omega_lambda(lambda)).hilbert_dim == 4);
    CHECK(gns(full_m2(), omega_lambda(0.0)).hilbert_dim == 2);
    CHECK(gns(full_m2(), omega_lambda(1.0)).hilbert_dim == 2);
  }
  SUBCASE("two invariant blocks and the binary entropy") {
    for (double lambda : {0.2, 0.5, 0.77}) {
      const auto res = gns(full_m2(), omega_lambda(lambda));
      CHECK(res.block_projectors.size() == 2);
      CHECK(std::abs(res.entropy - binary_h(lambda)) < 1e-10);
      check_gns_consistency(full_m2(), omega_lambda(lambda), res);
    }
  }
  SUBCASE("purity at the boundary") {
    const auto pure = purity_report(gns(full_m2(), omega_lambda(0.0)));
    CHECK(pure.is_irreducible);
    CHECK(pure.commutant_dim == 1);
    const auto mixed = purity_report(gns(full_m2(), omega_lambda(0.5)));
    CHECK_FALSE(mixed.is_irreducible);
    // the two GNS blocks carry equivalent copies of M2, so the commutant is
    // a full M2 itself
    CHECK(mixed.commutant_dim == 4);
  }
  SUBCASE("non-positive functional is rejected") {
    Mat bad = Mat::Zero(2, 2);
    bad(0, 0) = 1.5;
    bad(1, 1) = -0.5;
    CHECK_THROWS_AS(gns(full_m2(), AlgState{bad}), std::invalid_argument);
  }
}

TEST_CASE("restriction to a tensor factor matches the partial trace") {
  // M2 (x) 1 inside M4, pure state on the full algebra
  std::vector<Mat> gens;
  Mat sx = Mat::Zero(2, 2), sz = Mat::Zero(2, 2);
  sx(0, 1) = sx(1, 0) = 1.0;
  sz(0, 0) = 1.0;
  sz(1, 1) = -1.0;
  const Mat id2 = Mat::Identity(2, 2);
  gens.push_back(Eigen::kroneckerProduct(sx, id2));
  gens.push_back(Eigen::kroneckerProduct(sz, id2));
  const auto sub = close_algebra(gens);
  CHECK(sub.basis.size() == 4);

  std::mt19937 rng(31);
  for (int trial = 0; trial < 20; ++trial) {
    const Vec psi = random_vec(4, rng);
    const auto w = restrict_state(vector_state(psi), sub);
    const auto res = gns(sub, w);
    // reduced density matrix of the first qubit, directly
    Mat rho1 = Mat::Zero(2, 2);
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j)
        for (int k = 0; k < 2; ++k)
          rho1(i, j) += psi[2 * i + k] * std::conj(psi[2 * j + k]);
    CHECK(std::abs(res.entropy - vn_entropy(rho1)) < 1e-8);
  }
}

TEST_CASE("two-fermion restricted state") {
  const auto space = two_fermion_space();
  const auto sub = close_algebra(space.generators);
  for (double theta : {0.0, kPi / 2}) {
    const auto res =
        gns(sub, restrict_state(vector_state(psi_theta(theta)), sub));
    CHECK(res.entropy < 1e-10);  // Slater-rank-one states look pure here
    CHECK(purity_report(res).is_irreducible);
  }
  const auto balanced =
      gns(sub, restrict_state(vector_state(psi_theta(kPi / 4)), sub));
  CHECK(balanced.entropy > 0.1);
  // golden value pinned by this implementation: ln 2 at the balanced angle
  CHECK(std::abs(balanced.entropy - std::log(2.0)) < 1e-9);
  check_gns_consistency(sub, restrict_state(vector_state(psi_theta(kPi / 4)), sub),
                        balanced);
}

TEST_CASE("purity equals irreducibility on random states") {
  std::mt19937 rng(41);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  const auto m2 = full_m2();
  for (int trial = 0; trial < 200; ++trial) {
    AlgState w{Mat()};
    bool pure = trial % 2 == 0;
    if (pure) {
      w = vector_state(random_vec(2, rng));
    } else {
      const Vec a = random_vec(2, rng), b = random_vec(2, rng);
      const double p = 0.1 + 0.8 * unif(rng);
      Mat rho = p * a * a.adjoint() + (1 - p) * b * b.adjoint();
      rho /= rho.trace();
      pure = vn_entropy(rho) < 1e-12;  // colinear draws can still be pure
      w = AlgState{rho};
    }
    const auto res = gns(m2, w);
    const auto rep = purity_report(res);
    CHECK(rep.is_irreducible == (res.entropy < 1e-9));
    CHECK(rep.is_irreducible == pure);
  }
}

TEST_CASE("cauchy-schwarz on fuzzed pairs") {
  std::mt19937 rng(47);
  const auto m2 = full_m2();
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  for (int trial = 0; trial < 500; ++trial) {
    const auto w = omega_lambda(unif(rng));
    std::normal_distribution<double> dist;
    Mat a = Mat::Zero(2, 2), b = Mat::Zero(2, 2);
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) {
        a(i, j) = std::complex<double>(dist(rng), dist(rng));
        b(i, j) = std::complex<double>(dist(rng), dist(rng));
      }
    const double lhs = std::norm(w(a.adjoint() * b));
    const double rhs =
        w(a.adjoint() * a).real() * w(b.adjoint() * b).real();
    CHECK(lhs <= rhs + 1e-10);
  }
}

}  // TEST_SUITE
