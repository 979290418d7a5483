#pragma once

#include <Eigen/Dense>
#include <functional>

namespace spinlab {

struct NelderMeadResult {
  Eigen::VectorXd x;
  double value = 0.0;
  int iterations = 0;
};

/// Minimize f by the Nelder-Mead simplex method, starting from x0 with the
/// given initial simplex edge length. Stops when the simplex value spread
/// drops below tol or after max_iter iterations.
NelderMeadResult nelder_mead(const std::function<double(const Eigen::VectorXd&)>& f,
                             const Eigen::VectorXd& x0, double step,
                             double tol = 1e-12, int max_iter = 5000);

}  // namespace spinlab
