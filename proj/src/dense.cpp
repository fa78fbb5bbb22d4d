#include "mixdom/dense.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "mixdom/util.hpp"

namespace mixdom {

Eigen::MatrixXd dense_sigma_eta(const ThetaParams& theta, const MixedDomainGrid& grid) {
  validate(theta);
  const std::size_t n = grid.n;
  if (n > dense_cap()) {
    throw std::invalid_argument("dense_sigma_eta: n exceeds dense cap " +
                                std::to_string(dense_cap()) + " (set MIXDOM_DENSE_CAP to raise)");
  }
  const double c = theta.theta2 / theta.theta3;
  const double h = grid.spacing();
  Eigen::MatrixXd s(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j <= i; ++j) {
      const double d = static_cast<double>(i - j) * h;
      const double v = c * std::exp(-theta.theta3 * d);
      s(i, j) = v;
      s(j, i) = v;
    }
  }
  return s;
}

Eigen::MatrixXd dense_sigma(const ThetaParams& theta, const MixedDomainGrid& grid) {
  Eigen::MatrixXd s = dense_sigma_eta(theta, grid);
  s.diagonal().array() += theta.theta1;
  return s;
}

double dense_logdet(const Eigen::MatrixXd& spd) {
  Eigen::LLT<Eigen::MatrixXd> llt(spd);
  if (llt.info() != Eigen::Success) {
    throw std::runtime_error("dense_logdet: Cholesky factorization failed");
  }
  return 2.0 * llt.matrixL().toDenseMatrix().diagonal().array().log().sum();
}

Eigen::MatrixXd dense_g(const ThetaParams& theta, const MixedDomainGrid& grid) {
  const std::size_t n = grid.n;
  if (n > dense_cap()) {
    throw std::invalid_argument("dense_g: n exceeds dense cap");
  }
  const double rho = std::exp(-theta.theta3 * grid.spacing());
  Eigen::MatrixXd g = Eigen::MatrixXd::Identity(n, n);
  for (std::size_t i = 1; i < n; ++i) g(i, i - 1) = -rho;
  return g;
}

}  // namespace mixdom
