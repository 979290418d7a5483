#include "spinlab/optim.hpp"

#include <algorithm>
#include <numeric>
#include <vector>

namespace spinlab {

NelderMeadResult nelder_mead(const std::function<double(const Eigen::VectorXd&)>& f,
                             const Eigen::VectorXd& x0, double step, double tol,
                             int max_iter) {
  const Eigen::Index dim = x0.size();
  std::vector<Eigen::VectorXd> pts(dim + 1, x0);
  std::vector<double> vals(dim + 1);
  for (Eigen::Index i = 0; i < dim; ++i) pts[i + 1][i] += step;
  for (Eigen::Index i = 0; i <= dim; ++i) vals[i] = f(pts[i]);

  std::vector<std::size_t> ord(dim + 1);
  NelderMeadResult res;
  for (res.iterations = 0; res.iterations < max_iter; ++res.iterations) {
    std::iota(ord.begin(), ord.end(), 0);
    std::sort(ord.begin(), ord.end(),
              [&](std::size_t a, std::size_t b) { return vals[a] < vals[b]; });
    const std::size_t best = ord[0], worst = ord[dim];
    if (vals[worst] - vals[best] < tol) break;

    Eigen::VectorXd centroid = Eigen::VectorXd::Zero(dim);
    for (Eigen::Index i = 0; i <= dim; ++i)
      if (static_cast<std::size_t>(i) != worst) centroid += pts[i];
    centroid /= static_cast<double>(dim);

    const Eigen::VectorXd refl = centroid + (centroid - pts[worst]);
    const double f_refl = f(refl);
    if (f_refl < vals[best]) {
      const Eigen::VectorXd expa = centroid + 2.0 * (centroid - pts[worst]);
      const double f_expa = f(expa);
      if (f_expa < f_refl) {
        pts[worst] = expa;
        vals[worst] = f_expa;
      } else {
        pts[worst] = refl;
        vals[worst] = f_refl;
      }
      continue;
    }
    if (f_refl < vals[ord[dim - 1]]) {
      pts[worst] = refl;
      vals[worst] = f_refl;
      continue;
    }
    const Eigen::VectorXd contr = centroid + 0.5 * (pts[worst] - centroid);
    const double f_contr = f(contr);
    if (f_contr < vals[worst]) {
      pts[worst] = contr;
      vals[worst] = f_contr;
      continue;
    }
    for (Eigen::Index i = 0; i <= dim; ++i) {  // shrink toward the best vertex
      if (static_cast<std::size_t>(i) == best) continue;
      pts[i] = pts[best] + 0.5 * (pts[i] - pts[best]);
      vals[i] = f(pts[i]);
    }
  }

  const auto it = std::min_element(vals.begin(), vals.end());
  res.value = *it;
  res.x = pts[static_cast<std::size_t>(it - vals.begin())];
  return res;
}

}  // namespace spinlab
