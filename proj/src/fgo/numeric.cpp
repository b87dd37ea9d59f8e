#include "jpcm/fgo/numeric.hpp"

#include <algorithm>

namespace jpcm::fgo {

std::vector<Eigen::MatrixXd> numerical_jacobians(const Factor& factor,
                                                 const Values& values,
                                                 double eps) {
  std::vector<Eigen::MatrixXd> out;
  out.reserve(factor.keys().size());
  for (const Key k : factor.keys()) {
    const int dim = values.tangent_dim(k);
    Eigen::MatrixXd J(factor.dim(), dim);
    for (int i = 0; i < dim; ++i) {
      Eigen::VectorXd delta = Eigen::VectorXd::Zero(dim);

      delta(i) = eps;
      Values plus = values;
      plus.retract_in_place(k, delta);

      delta(i) = -eps;
      Values minus = values;
      minus.retract_in_place(k, delta);

      J.col(i) = (factor.error(plus) - factor.error(minus)) / (2.0 * eps);
    }
    out.push_back(std::move(J));
  }
  return out;
}

double max_jacobian_error(const Factor& factor, const Values& values,
                          double eps) {
  const auto analytic = factor.jacobians(values);
  const auto numeric = numerical_jacobians(factor, values, eps);
  double worst = 0.0;
  for (std::size_t i = 0; i < analytic.size(); ++i) {
    const double scale =
        std::max(1.0, analytic[i].cwiseAbs().maxCoeff());
    const double err =
        (analytic[i] - numeric[i]).cwiseAbs().maxCoeff() / scale;
    worst = std::max(worst, err);
  }
  return worst;
}

}  // namespace jpcm::fgo
