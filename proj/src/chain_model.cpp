#include "spinlab/chain_model.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace spinlab {

namespace {
constexpr double kPi = std::numbers::pi;
}

void ChainSpec::validate() const {
  if (n_sites < 2) throw std::invalid_argument("ChainSpec: n_sites must be >= 2");
  if (boundary == Boundary::Open && parity.has_value())
    throw std::invalid_argument("ChainSpec: open boundary carries no parity sector");
  if (boundary == Boundary::Periodic && !parity.has_value())
    throw std::invalid_argument("ChainSpec: periodic boundary requires a parity sector");
}

int ChainSpec::parity_sign() const {
  if (!parity.has_value())
    throw std::invalid_argument("ChainSpec: no parity sector set");
  return *parity == Parity::Even ? +1 : -1;
}

QuadraticForm build_quadratic_form(const ChainSpec& spec) {
  spec.validate();
  const int n = spec.n_sites;
  QuadraticForm qf;
  qf.A = Eigen::MatrixXd::Zero(n, n);
  qf.B = Eigen::MatrixXd::Zero(n, n);

  // Nearest-neighbour couplings; the Ising convention has no global 1/2,
  // the XY one keeps it inside A, B and the offset.
  double diag, hop, pair;
  if (spec.model == Model::Ising) {
    diag = 2.0 * spec.lambda;
    hop = -1.0;
    pair = -1.0;
    qf.offset = -spec.lambda * n;
  } else {
    diag = spec.lambda;
    hop = -0.5;
    pair = -0.5 * spec.gamma;
    qf.offset = -0.5 * spec.lambda * n;
  }

  for (int i = 0; i < n; ++i) qf.A(i, i) = diag;
  for (int i = 0; i + 1 < n; ++i) {
    qf.A(i, i + 1) = hop;
    qf.A(i + 1, i) = hop;
    qf.B(i, i + 1) = pair;
    qf.B(i + 1, i) = -pair;
  }

  if (spec.boundary == Boundary::Periodic) {
    // Boundary term picks up the parity sign: entries are -sigma times the
    // bulk couplings (antiperiodic fermions in the even sector).
    const double s = static_cast<double>(spec.parity_sign());
    qf.A(0, n - 1) = -s * hop;
    qf.A(n - 1, 0) = -s * hop;
    qf.B(0, n - 1) = s * pair;
    qf.B(n - 1, 0) = -s * pair;
  }
  return qf;
}

double dispersion(const ChainSpec& spec, double phi) {
  if (spec.model == Model::Ising) {
    const double s2 =
        spec.lambda * spec.lambda + 1.0 - 2.0 * spec.lambda * std::cos(phi);
    return 2.0 * std::sqrt(std::max(s2, 0.0));
  }
  const double dx = spec.lambda - std::cos(phi);
  const double dy = spec.gamma * std::sin(phi);
  return std::sqrt(dx * dx + dy * dy);
}

MomentumGrid momentum_grid(const ChainSpec& spec) {
  spec.validate();
  if (spec.boundary != Boundary::Periodic)
    throw std::invalid_argument("momentum_grid: open chains have no momentum grid");
  const int n = spec.n_sites;
  MomentumGrid grid;
  grid.sector = *spec.parity;
  grid.phis.reserve(n);
  const double shift = (grid.sector == Parity::Even) ? 1.0 : 2.0;
  for (int k = 0; k < n; ++k) {
    double phi = (2.0 * k + shift) * kPi / n;
    // fold into (0, 2*pi]
    while (phi > 2.0 * kPi) phi -= 2.0 * kPi;
    while (phi <= 0.0) phi += 2.0 * kPi;
    grid.phis.push_back(phi);
  }
  return grid;
}

std::vector<double> open_bc_real_roots(const ChainSpec& spec) {
  spec.validate();
  if (spec.model != Model::Ising || spec.boundary != Boundary::Open)
    throw std::invalid_argument("open_bc_real_roots: Ising open chains only");
  if (spec.lambda == 0.0)
    throw std::invalid_argument("open_bc_real_roots: lambda must be nonzero");

  const int n = spec.n_sites;
  const double lam = spec.lambda;
  auto f = [&](double k) { return std::sin(k * n) - lam * std::sin(k * (n + 1)); };

  // The residual oscillates with period ~pi/N, so 64*N brackets are plenty.
  const int n_cells = 64 * n;
  const double h = kPi / n_cells;
  std::vector<double> roots;
  for (int c = 0; c < n_cells; ++c) {
    double a = c * h, b = (c + 1) * h;
    // keep strictly inside (0, pi); k = 0 and k = pi solve the equation trivially
    if (c == 0) a = h * 1e-6;
    if (c == n_cells - 1) b = kPi - h * 1e-6;
    double fa = f(a), fb = f(b);
    if (fa == 0.0) {
      roots.push_back(a);
      continue;
    }
    if (fa * fb > 0.0) continue;
    for (int it = 0; it < 200 && b - a > 1e-15; ++it) {
      const double m = 0.5 * (a + b);
      const double fm = f(m);
      if (fm == 0.0) {
        a = b = m;
        break;
      }
      if (fa * fm < 0.0) {
        b = m;
      } else {
        a = m;
        fa = fm;
      }
    }
    const double r = 0.5 * (a + b);
    if (std::abs(f(r)) < 1e-12) roots.push_back(r);
  }
  return roots;
}

}  // namespace spinlab
