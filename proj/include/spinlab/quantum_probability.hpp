#pragma once

#include <Eigen/Dense>
#include <array>

namespace spinlab {
namespace bell {

using Vec3 = Eigen::Vector3d;

struct PolarizerSetup {
  double phi = 0.0;    // left polarizer angle
  double theta = 0.0;  // right polarizer angle
};

struct BellCheck {
  double lhs = 0.0;
  double rhs = 0.0;
  bool violated = false;
};

/// <psi| P_A(phi) P_B(theta) |psi> for the two-photon singlet state,
/// computed by explicit 4x4 projector algebra; equals sin^2(phi-theta)/2.
double joint_prob(const PolarizerSetup& setup);

/// Marginal <psi| P_A(phi) |psi> (= 1/2 for every angle).
double marginal_prob_left(double phi);
double marginal_prob_right(double theta);

/// Bell inequality p(f(A1,B1)) <= p(f(A1,B2)) + p(f(A2,B2)) + p(f(A2,B1))
/// with the quantum coincidence probabilities sin^2 of angle differences.
BellCheck bell_check(const std::array<double, 2>& phis,
                     const std::array<double, 2>& thetas);

/// True iff f(A1,B1) => f(A1,B2) + f(A2,B2) + f(A2,B1) holds for every one of
/// the 16 deterministic truth assignments (it does; the check is the
/// enumeration itself).
bool deterministic_bell_holds();

/// |psi_lambda> = sqrt(lambda)|+-> - sqrt(1-lambda)|-+>.
Eigen::Vector4cd psi_lambda(double lambda);

struct Correlators {
  double ee = 0.0;  // <E(a) x E(b)>
  double pp = 0.0;  // <P(a) x P(b)>
};

/// Spin correlators of psi_lambda for unit vectors a, b, computed both in
/// closed form and as a 4x4 matrix expectation (they must agree to 1e-12).
Correlators psi_lambda_correlators(double lambda, const Vec3& a, const Vec3& b);

/// <psi_lambda| E(a)(E(b)+E(b')) + E(a')(E(b)-E(b')) |psi_lambda> via the
/// matrix route. For lambda = 1/2 this equals
/// -(a.b + a.b' + a'.b - a'.b').
double chsh_value(double lambda, const Vec3& a, const Vec3& ap, const Vec3& b,
                  const Vec3& bp);

/// Maximum of |chsh_value| at lambda = 1/2 over unit vectors, by coarse
/// grid plus local refinement; reaches 2*sqrt(2).
double chsh_maximum();

/// Largest |classical CHSH value| over all 16 deterministic +-1 assignments
/// (= 2, the classical bound).
double classical_chsh_bound();

}  // namespace bell
}  // namespace spinlab
