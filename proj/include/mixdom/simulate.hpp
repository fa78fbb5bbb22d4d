#pragma once

#include <vector>

#include "mixdom/dataset.hpp"
#include "mixdom/grid.hpp"
#include "mixdom/params.hpp"
#include "mixdom/rng.hpp"

namespace mixdom {

/// Exact draw of the stationary OU path on the grid via its AR(1) recursion:
/// eta_1 ~ N(0, theta2/theta3), eta_{i+1} = rho eta_i +
/// sqrt((theta2/theta3)(1 - rho^2)) w_i, rho = exp(-theta3 * spacing).
std::vector<double> sample_ou(const ThetaParams& theta0, const MixedDomainGrid& grid, Rng& rng);

/// Simulates a full dataset for one scenario: z = mu0 + eta + eps with eps
/// i.i.d. N(0, theta1). The fitted design depends on the scenario:
/// CorrectTrend uses intercept plus p scaled-monomial columns ((s/n^delta)^j,
/// bounded in [0,1]) and mu0 = X beta; ScaledLinearTrend and GpTrend carry
/// their trend outside the (intercept-only) design. The GpTrend covariate
/// path draws from a sub-stream derived from rng, so trend and noise draws
/// never interleave.
Dataset sample_dataset(const ScenarioSpec& scenario, const ThetaParams& theta0,
                       const MixedDomainGrid& grid, Rng& rng);

}  // namespace mixdom
