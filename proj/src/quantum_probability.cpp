#include "spinlab/quantum_probability.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "spinlab/optim.hpp"

namespace spinlab {
namespace bell {

namespace {

using Eigen::Matrix2cd;
using Eigen::Matrix4cd;
using Eigen::Vector4cd;
using std::complex;

Matrix2cd pauli(const Vec3& n) {
  Matrix2cd m;
  m << n.z(), complex<double>(n.x(), -n.y()),
       complex<double>(n.x(), n.y()), -n.z();
  return m;
}

Matrix4cd kron2(const Matrix2cd& a, const Matrix2cd& b) {
  Matrix4cd out;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      out.block<2, 2>(2 * i, 2 * j) = a(i, j) * b;
  return out;
}

void require_unit(const Vec3& v, const char* what) {
  if (std::abs(v.norm() - 1.0) > 1e-10)
    throw std::invalid_argument(std::string(what) + ": unit vector required");
}

// Two-photon singlet in the linear-polarization basis |xx>,|xy>,|yx>,|yy>.
Vector4cd photon_singlet() {
  Vector4cd psi = Vector4cd::Zero();
  psi[1] = 1.0 / std::sqrt(2.0);
  psi[2] = -1.0 / std::sqrt(2.0);
  return psi;
}

// Rank-one projector onto linear polarization at the given angle.
Matrix2cd polarizer(double angle) {
  Eigen::Vector2cd e(std::cos(angle), std::sin(angle));
  return e * e.adjoint();
}

// <psi_lambda| A (x) B |psi_lambda>
double expectation(double lambda, const Matrix2cd& a, const Matrix2cd& b) {
  const Vector4cd psi = psi_lambda(lambda);
  return (psi.adjoint() * kron2(a, b) * psi).value().real();
}

}  // namespace

double joint_prob(const PolarizerSetup& setup) {
  const Vector4cd psi = photon_singlet();
  const Matrix4cd op = kron2(polarizer(setup.phi), polarizer(setup.theta));
  return (psi.adjoint() * op * psi).value().real();
}

double marginal_prob_left(double phi) {
  const Vector4cd psi = photon_singlet();
  const Matrix4cd op = kron2(polarizer(phi), Matrix2cd::Identity());
  return (psi.adjoint() * op * psi).value().real();
}

double marginal_prob_right(double theta) {
  const Vector4cd psi = photon_singlet();
  const Matrix4cd op = kron2(Matrix2cd::Identity(), polarizer(theta));
  return (psi.adjoint() * op * psi).value().real();
}

BellCheck bell_check(const std::array<double, 2>& phis,
                     const std::array<double, 2>& thetas) {
  auto s2 = [](double x) { return std::sin(x) * std::sin(x); };
  BellCheck bc;
  bc.lhs = s2(phis[0] - thetas[0]);
  bc.rhs = s2(phis[0] - thetas[1]) + s2(phis[1] - thetas[1]) +
           s2(phis[1] - thetas[0]);
  bc.violated = bc.lhs > bc.rhs + 1e-12;
  return bc;
}

bool deterministic_bell_holds() {
  // f(X,Y) = "X and Y disagree". With fixed truth values the coincidence
  // events satisfy f(A1,B1) => f(A1,B2) or f(A2,B2) or f(A2,B1), so the
  // probability inequality holds assignment by assignment.
  for (int mask = 0; mask < 16; ++mask) {
    const bool a1 = mask & 1, a2 = mask & 2, b1 = mask & 4, b2 = mask & 8;
    const int lhs = a1 != b1 ? 1 : 0;
    const int rhs = (a1 != b2 ? 1 : 0) + (a2 != b2 ? 1 : 0) + (a2 != b1 ? 1 : 0);
    if (lhs > rhs) return false;
  }
  return true;
}

Vector4cd psi_lambda(double lambda) {
  if (lambda < 0.0 || lambda > 1.0)
    throw std::invalid_argument("psi_lambda: lambda in [0,1] required");
  Vector4cd psi = Vector4cd::Zero();
  psi[1] = std::sqrt(lambda);
  psi[2] = -std::sqrt(1.0 - lambda);
  return psi;
}

Correlators psi_lambda_correlators(double lambda, const Vec3& a, const Vec3& b) {
  require_unit(a, "psi_lambda_correlators");
  require_unit(b, "psi_lambda_correlators");

  const double cross = 2.0 * std::sqrt(lambda * (1.0 - lambda));
  Correlators closed;
  closed.ee = -a.z() * b.z() - cross * (a.x() * b.x() + a.y() * b.y());
  closed.pp = 0.25 * (1.0 + (2.0 * lambda - 1.0) * (a.z() - b.z()) -
                      a.z() * b.z() - cross * (a.x() * b.x() + a.y() * b.y()));

  const Matrix2cd id = Matrix2cd::Identity();
  Correlators matrix;
  matrix.ee = expectation(lambda, pauli(a), pauli(b));
  matrix.pp = expectation(lambda, 0.5 * (id + pauli(a)), 0.5 * (id + pauli(b)));

  if (std::abs(closed.ee - matrix.ee) > 1e-12 ||
      std::abs(closed.pp - matrix.pp) > 1e-12)
    throw std::runtime_error(
        "psi_lambda_correlators: closed form disagrees with matrix route");
  return matrix;
}

double chsh_value(double lambda, const Vec3& a, const Vec3& ap, const Vec3& b,
                  const Vec3& bp) {
  require_unit(a, "chsh_value");
  require_unit(ap, "chsh_value");
  require_unit(b, "chsh_value");
  require_unit(bp, "chsh_value");
  // The second party measures spin along the reversed axis (a relabeling of
  // its +-1 outcomes); the singlet lambda = 1/2 then gives
  // a.b + a.b' + a'.b - a'.b'.
  const Matrix2cd eb = -pauli(b), ebp = -pauli(bp);
  return expectation(lambda, pauli(a), eb + ebp) +
         expectation(lambda, pauli(ap), eb - ebp);
}

double chsh_maximum() {
  // All four vectors in the x-z plane; the value depends only on pairwise
  // dot products, so coplanar configurations already attain the maximum.
  auto value = [](const Eigen::VectorXd& ang) {
    auto unit = [](double t) { return Vec3(std::sin(t), 0.0, std::cos(t)); };
    return chsh_value(0.5, unit(ang[0]), unit(ang[1]), unit(ang[2]),
                      unit(ang[3]));
  };
  auto cost = [&](const Eigen::VectorXd& ang) { return -std::abs(value(ang)); };

  const double pi = std::numbers::pi;
  double best = 0.0;
  Eigen::VectorXd best_ang = Eigen::VectorXd::Zero(4);
  const int steps = 6;  // pi/6 grid, first angle fixed by global rotation
  for (int i = 0; i < steps; ++i)
    for (int j = 0; j < steps; ++j)
      for (int k = 0; k < steps; ++k) {
        Eigen::VectorXd ang(4);
        ang << 0.0, i * pi / steps, j * pi / steps, k * pi / steps;
        const double v = std::abs(value(ang));
        if (v > best) {
          best = v;
          best_ang = ang;
        }
      }
  const NelderMeadResult r = nelder_mead(cost, best_ang, 0.05, 1e-14, 20000);
  return -r.value;
}

double classical_chsh_bound() {
  double best = 0.0;
  for (int mask = 0; mask < 16; ++mask) {
    const double a = mask & 1 ? 1 : -1, ap = mask & 2 ? 1 : -1;
    const double b = mask & 4 ? 1 : -1, bp = mask & 8 ? 1 : -1;
    best = std::max(best, std::abs(a * b + a * bp + ap * b - ap * bp));
  }
  return best;
}

}  // namespace bell
}  // namespace spinlab
