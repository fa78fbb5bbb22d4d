#pragma once

#include <vector>

#include "mixdom/factor.hpp"
#include "mixdom/grid.hpp"
#include "mixdom/params.hpp"

namespace mixdom {

/// Exact trace functionals of Sigma(theta) that drive the Fisher-information
/// and consistency diagnostics. Computed in O(n^2) time and O(n) memory from
/// n tridiagonal solves (one inverse column at a time); n is limited by
/// quadratic_cap().
struct TraceDiagnostics {
  double tr_sinv;          // tr(Sigma^-1)
  double tr_sinv2;         // tr(Sigma^-2)
  double tr_sinv_seta_sq;  // tr((Sigma_eta Sigma^-1)^2)
  double tr_sinv_ds3_sq;   // tr((Sigma^-1 dSigma/dtheta3)^2)
  double tr_seta0_sinv;    // tr(Sigma_eta(theta0) Sigma^-1(theta))
};

TraceDiagnostics trace_diagnostics(const ThetaParams& theta, const ThetaParams& theta0,
                                   const MixedDomainGrid& grid);

/// y = Sigma_eta(theta) v in O(n) via forward/backward geometric recursions
/// (the kernel is exponential, so prefix sums telescope).
std::vector<double> sigma_eta_matvec(const ThetaParams& theta, const MixedDomainGrid& grid,
                                     const std::vector<double>& v);

/// y = (dSigma/dtheta3) v in O(n). The entrywise derivative of
/// (theta2/theta3) e^(-theta3 d) is -(theta2/theta3^2) e^(-theta3 d)
/// - (theta2/theta3) d e^(-theta3 d) with d = |s_i - s_j|.
std::vector<double> dsigma_dtheta3_matvec(const ThetaParams& theta, const MixedDomainGrid& grid,
                                          const std::vector<double>& v);

/// Column j (zero-based) of Sigma_eta(theta); O(n), no transcendental calls
/// past the first.
std::vector<double> sigma_eta_column(const ThetaParams& theta, const MixedDomainGrid& grid,
                                     std::size_t j);

/// Column j of dSigma/dtheta3; O(n).
std::vector<double> dsigma_dtheta3_column(const ThetaParams& theta, const MixedDomainGrid& grid,
                                          std::size_t j);

}  // namespace mixdom
