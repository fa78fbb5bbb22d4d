#pragma once

#include <Eigen/Dense>

#include "mixdom/grid.hpp"
#include "mixdom/params.hpp"

namespace mixdom {

/// Dense covariance matrix, entry (i, j) equal to
/// (theta2/theta3) exp(-theta3 |s_i - s_j|) + theta1 1{i = j}.
/// Reference oracle for the O(n) factor paths; refuses n above dense_cap().
Eigen::MatrixXd dense_sigma(const ThetaParams& theta, const MixedDomainGrid& grid);

/// log det of an SPD matrix via its Cholesky factor (oracle-side helper).
double dense_logdet(const Eigen::MatrixXd& spd);

/// Dense unit-lower-bidiagonal differencing matrix G (subdiagonal -rho).
Eigen::MatrixXd dense_g(const ThetaParams& theta, const MixedDomainGrid& grid);

/// Dense latent-path covariance without the nugget.
Eigen::MatrixXd dense_sigma_eta(const ThetaParams& theta, const MixedDomainGrid& grid);

}  // namespace mixdom
