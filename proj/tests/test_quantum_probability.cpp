#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "spinlab/quantum_probability.hpp"

using namespace spinlab::bell;

namespace {

constexpr double kPi = std::numbers::pi;

Vec3 random_unit(std::mt19937& rng) {
  std::normal_distribution<double> dist;
  Vec3 v(dist(rng), dist(rng), dist(rng));
  while (v.norm() < 1e-3) v = Vec3(dist(rng), dist(rng), dist(rng));
  return v / v.norm();
}

}  // namespace

TEST_SUITE("bell") {

TEST_CASE("photon joint probability") {
  std::mt19937 rng(21);
  std::uniform_real_distribution<double> angle(-kPi, kPi);
  for (int i = 0; i < 1000; ++i) {
    const double phi = angle(rng), theta = angle(rng);
    const double p = joint_prob({phi, theta});
    const double closed = 0.5 * std::pow(std::sin(phi - theta), 2);
    CHECK(std::abs(p - closed) < 1e-12);
  }
  CHECK(std::abs(joint_prob({0.7, 0.7})) < 1e-14);           // aligned
  CHECK(joint_prob({0.3 + kPi / 2, 0.3}) ==
        doctest::Approx(0.5).epsilon(1e-12));                // crossed
  for (double a : {0.0, 0.4, 2.2}) {
    CHECK(marginal_prob_left(a) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(marginal_prob_right(a) == doctest::Approx(0.5).epsilon(1e-12));
  }
}

TEST_CASE("bell inequality with the quantum angles") {
  const auto bc = bell_check({0.0, kPi / 3}, {kPi / 2, kPi / 6});
  CHECK(bc.lhs == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(bc.rhs == doctest::Approx(0.75).epsilon(1e-12));
  CHECK(bc.violated);

  const auto aligned = bell_check({0.3, 1.0}, {0.3, 2.0});
  CHECK(aligned.lhs < 1e-14);
  CHECK_FALSE(aligned.violated);
}

TEST_CASE("deterministic assignments never violate") {
  CHECK(deterministic_bell_holds());
}

TEST_CASE("psi_lambda correlators") {
  std::mt19937 rng(5);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  SUBCASE("closed form vs matrix route, fuzzed") {
    for (int i = 0; i < 1000; ++i) {
      const double lambda = unif(rng);
      // psi_lambda_correlators throws if its two routes disagree by > 1e-12
      CHECK_NOTHROW(
          psi_lambda_correlators(lambda, random_unit(rng), random_unit(rng)));
    }
  }
  SUBCASE("singlet projector value") {
    for (int i = 0; i < 100; ++i) {
      const Vec3 a = random_unit(rng), b = random_unit(rng);
      const auto c = psi_lambda_correlators(0.5, a, b);
      CHECK(c.pp == doctest::Approx(0.25 * (1 - a.dot(b))).epsilon(1e-12));
    }
    const Vec3 n(0.3, -0.5, std::sqrt(1 - 0.09 - 0.25));
    CHECK(std::abs(psi_lambda_correlators(0.5, n, n).pp) < 1e-12);
  }
  SUBCASE("separable boundary") {
    std::mt19937 rng2(9);
    const Vec3 a = random_unit(rng2), b = random_unit(rng2);
    CHECK(psi_lambda_correlators(0.0, a, b).ee ==
          doctest::Approx(-a.z() * b.z()).epsilon(1e-12));
  }
  SUBCASE("input validation") {
    CHECK_THROWS(psi_lambda_correlators(0.5, Vec3(1, 1, 0), Vec3(0, 0, 1)));
  }
}

TEST_CASE("chsh values") {
  SUBCASE("closed form at lambda = 1/2") {
    std::mt19937 rng(13);
    for (int i = 0; i < 200; ++i) {
      const Vec3 a = random_unit(rng), ap = random_unit(rng);
      const Vec3 b = random_unit(rng), bp = random_unit(rng);
      const double closed =
          a.dot(b) + a.dot(bp) + ap.dot(b) - ap.dot(bp);
      CHECK(chsh_value(0.5, a, ap, b, bp) ==
            doctest::Approx(closed).epsilon(1e-12));
    }
  }
  SUBCASE("all vectors equal gives 2") {
    const Vec3 z(0, 0, 1);
    CHECK(chsh_value(0.5, z, z, z, z) == doctest::Approx(2.0).epsilon(1e-12));
  }
  SUBCASE("tsirelson bound over random draws") {
    std::mt19937 rng(17);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    const double bound = 2 * std::sqrt(2.0) + 1e-9;
    for (int i = 0; i < 10000; ++i) {
      const double v = chsh_value(unif(rng), random_unit(rng), random_unit(rng),
                                  random_unit(rng), random_unit(rng));
      CHECK(std::abs(v) <= bound);
    }
  }
  SUBCASE("maximization reaches the tsirelson bound") {
    CHECK(chsh_maximum() == doctest::Approx(2 * std::sqrt(2.0)).epsilon(1e-6));
  }
}

TEST_CASE("classical side stays below 2") {
  CHECK(classical_chsh_bound() == doctest::Approx(2.0));
  // convex mixtures of the 16 deterministic strategies
  std::mt19937 rng(23);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  for (int trial = 0; trial < 1000; ++trial) {
    double weights[16], total = 0.0;
    for (double& w : weights) {
      w = unif(rng);
      total += w;
    }
    double value = 0.0;
    for (int mask = 0; mask < 16; ++mask) {
      const double a = mask & 1 ? 1 : -1, ap = mask & 2 ? 1 : -1;
      const double b = mask & 4 ? 1 : -1, bp = mask & 8 ? 1 : -1;
      value += weights[mask] / total * (a * b + a * bp + ap * b - ap * bp);
    }
    CHECK(std::abs(value) <= 2.0 + 1e-12);
  }
}

}  // TEST_SUITE
