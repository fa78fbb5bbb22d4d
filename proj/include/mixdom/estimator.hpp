#pragma once

#include <array>
#include <vector>

#include "mixdom/dataset.hpp"
#include "mixdom/params.hpp"

namespace mixdom {

struct OptimizerOptions {
  int max_evals = 2000;   // per start
  double tol = 1e-9;      // simplex log-likelihood spread
  int starts = 4;         // deterministic start points (capped at 4)
};

struct EstimationResult {
  ThetaParams theta_hat;
  std::vector<double> beta_hat;
  double loglik;
  int n_evals;          // total across starts
  bool converged;       // the winning start met the spread tolerance
  int starts;
  std::array<bool, 3> at_boundary;  // per component, within 1e-6 * range of the box
};

/// Method-of-moments starting point from OLS residuals: total variance and
/// lag-1 correlation give theta3 and the split of variance between the OU
/// path and the nugget. Always returns a point inside the box.
ThetaParams initial_guess(const Dataset& dataset, const ParamBox& box);

/// Maximizes the profile log-likelihood over the box by Nelder-Mead in
/// log-parameter coordinates with box projection, restarted from 4
/// deterministic points (moment-based guess, box center, two interior
/// corners). Deterministic given options; ties between starts break by
/// higher log-likelihood, then lexicographically smaller theta.
EstimationResult fit_ml(const Dataset& dataset, const ParamBox& box,
                        const OptimizerOptions& options = {});

}  // namespace mixdom
