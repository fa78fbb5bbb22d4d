#include "mixdom/simulate.hpp"

#include <cmath>
#include <stdexcept>

namespace mixdom {

namespace {

// Key for the sub-stream feeding the random covariate path; chosen once so
// trend and noise draws never interleave.
constexpr std::uint64_t kTrendStreamKey = 0x7472656e64ULL;

}  // namespace

std::vector<double> sample_ou(const ThetaParams& theta0, const MixedDomainGrid& grid, Rng& rng) {
  validate(theta0);
  const std::size_t n = grid.n;
  const double var = theta0.theta2 / theta0.theta3;
  const double h = grid.spacing();
  const double rho = std::exp(-theta0.theta3 * h);
  const double innov_sd = std::sqrt(var * -std::expm1(-2.0 * theta0.theta3 * h));

  std::vector<double> eta(n);
  eta[0] = std::sqrt(var) * rng.next_normal();
  for (std::size_t i = 1; i < n; ++i) {
    eta[i] = rho * eta[i - 1] + innov_sd * rng.next_normal();
  }
  return eta;
}

Dataset sample_dataset(const ScenarioSpec& scenario, const ThetaParams& theta0,
                       const MixedDomainGrid& grid, Rng& rng) {
  validate(scenario);
  validate(theta0);
  const std::size_t n = grid.n;

  // Derive the covariate stream before the main stream advances.
  Rng trend_rng = rng.derive(kTrendStreamKey);

  std::vector<std::vector<double>> x;
  x.emplace_back(n, 1.0);
  std::vector<double> mu0(n, 0.0);

  switch (scenario.kind) {
    case ScenarioKind::CorrectTrend: {
      const double scale = std::pow(static_cast<double>(n), -grid.delta);
      for (int j = 1; j <= scenario.p; ++j) {
        std::vector<double> col(n);
        for (std::size_t i = 0; i < n; ++i) {
          col[i] = std::pow(scale * grid.site(i + 1), j);
        }
        x.push_back(std::move(col));
      }
      if (scenario.beta.size() > x.size()) {
        throw std::invalid_argument("sample_dataset: more beta coefficients than design columns");
      }
      for (std::size_t j = 0; j < scenario.beta.size(); ++j) {
        for (std::size_t i = 0; i < n; ++i) mu0[i] += scenario.beta[j] * x[j][i];
      }
      break;
    }
    case ScenarioKind::ScaledLinearTrend: {
      const double b0 = scenario.beta.size() > 0 ? scenario.beta[0] : 0.0;
      const double b1 = scenario.beta.size() > 1 ? scenario.beta[1] : 0.0;
      const double scale = std::pow(static_cast<double>(n), -grid.delta);
      for (std::size_t i = 0; i < n; ++i) mu0[i] = b0 + b1 * scale * grid.site(i + 1);
      break;
    }
    case ScenarioKind::GpTrend: {
      const double b0 = scenario.beta.size() > 0 ? scenario.beta[0] : 0.0;
      const double b1 = scenario.beta.size() > 1 ? scenario.beta[1] : 0.0;
      const ThetaParams gp{1.0, scenario.gp_params->first, scenario.gp_params->second};
      const std::vector<double> path = sample_ou(gp, grid, trend_rng);
      for (std::size_t i = 0; i < n; ++i) mu0[i] = b0 + b1 * path[i];
      break;
    }
  }

  std::vector<double> eta = sample_ou(theta0, grid, rng);
  std::vector<double> eps(n);
  const double eps_sd = std::sqrt(theta0.theta1);
  for (std::size_t i = 0; i < n; ++i) eps[i] = eps_sd * rng.next_normal();

  std::vector<double> z(n);
  for (std::size_t i = 0; i < n; ++i) z[i] = mu0[i] + eta[i] + eps[i];

  SimulationTruth truth;
  truth.mu0 = std::move(mu0);
  truth.eta = std::move(eta);
  truth.eps = std::move(eps);
  truth.theta0 = theta0;
  truth.scenario = scenario;
  truth.grid = grid;
  return make_dataset(grid, std::move(z), std::move(x), std::move(truth));
}

}  // namespace mixdom
