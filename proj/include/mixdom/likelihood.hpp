#pragma once

#include <vector>

#include "mixdom/dataset.hpp"
#include "mixdom/factor.hpp"
#include "mixdom/params.hpp"

namespace mixdom {

/// Profile log-likelihood at theta with the trend coefficients concentrated
/// out by GLS: loglik = -0.5 * (n log 2pi + logdet + rss_q), where rss_q is
/// the quadratic form of the GLS residual r = z - X beta_hat in Sigma^-1.
struct LikelihoodEval {
  double loglik;
  std::vector<double> beta_hat;
  double logdet;
  double rss_q;
  ThetaParams theta;
};

/// GLS trend estimate beta_hat(theta) = (X' Sigma^-1 X)^-1 X' Sigma^-1 z.
/// Cost: p + 2 half solves plus a (p+1) x (p+1) SPD solve.
std::vector<double> gls_beta(const ThetaParams& theta, const Dataset& dataset);

LikelihoodEval profile_loglik(const ThetaParams& theta, const Dataset& dataset);

/// Decomposition of -2 loglik(theta) for simulated data into interpretable
/// pieces. With w = eta + eps and M the Sigma^-1-orthogonal projector onto
/// the design column space:
///   -2 loglik = base_neg2ll0 + h_term + misspec_quad + cross_term - proj_term
/// base_neg2ll0 = n log 2pi + logdet Sigma(theta) + tr(Sigma(theta0) Sigma^-1(theta))
/// h_term       = w' Sigma^-1 w - tr(Sigma(theta0) Sigma^-1(theta))   (mean zero)
/// misspec_quad = mu0' Sigma^-1 (I - M) mu0                           (>= 0)
/// cross_term   = 2 mu0' Sigma^-1 (I - M) w
/// proj_term    = w' Sigma^-1 M w                                     (>= 0)
/// The trace needs the O(n^2) diagnostics path, so n is capped by
/// quadratic_cap().
struct Neg2llDecomposition {
  double h_term;
  double misspec_quad;
  double cross_term;
  double proj_term;
  double base_neg2ll0;
};

Neg2llDecomposition neg2ll_decomposition(const ThetaParams& theta, const Dataset& dataset);

/// mu0' Sigma^-1 (I - M) mu0 >= 0: the deterministic contamination of
/// -2 loglik from fitting the design `x` (columns, intercept first) when the
/// true mean is truth.mu0. Zero when mu0 lies in the design column space.
double misspec_quad(const ThetaParams& theta, const SimulationTruth& truth,
                    const std::vector<std::vector<double>>& x);

/// Empirical version of the uniform contamination bound: the maximum of
/// misspec_quad over a finite theta grid, then the maximum with p (the
/// non-intercept regressor count). A lower bound for the analytic sup.
double r_theta_sup(const SimulationTruth& truth, const std::vector<std::vector<double>>& x,
                   const std::vector<ThetaParams>& theta_grid);

/// Log-spaced lattice with `per_axis` points per axis covering [lo, hi]^3
/// (default audit lattice for r_theta_sup).
std::vector<ThetaParams> theta_lattice(double lo, double hi, int per_axis);

}  // namespace mixdom
