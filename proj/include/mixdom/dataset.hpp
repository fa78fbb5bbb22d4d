#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "mixdom/grid.hpp"
#include "mixdom/params.hpp"

namespace mixdom {

enum class ScenarioKind {
  CorrectTrend,       // mean lies in the span of the fitted design
  ScaledLinearTrend,  // mean beta0 + beta1 * n^-delta * s, fitted intercept-only
  GpTrend,            // mean beta0 + beta1 * x(s) with x an independent OU path,
                      // fitted intercept-only
};

std::string to_string(ScenarioKind kind);
ScenarioKind scenario_kind_from_string(const std::string& name);

/// Stable small integer used in seed derivation and CSV output.
inline std::uint64_t scenario_id(ScenarioKind kind) { return static_cast<std::uint64_t>(kind); }

/// Data-generating scenario: trend coefficients, optional parameters of the
/// random covariate path, and the number of non-intercept regressors p in the
/// *fitted* model. ScaledLinearTrend and GpTrend are always fitted
/// intercept-only (p = 0); the misspecified part of the mean never enters the
/// design.
struct ScenarioSpec {
  ScenarioKind kind = ScenarioKind::CorrectTrend;
  std::vector<double> beta;  // (beta_0, beta_1, ...); defaults to zeros
  std::optional<std::pair<double, double>> gp_params;  // (theta_12, theta_13)
  int p = 1;
};

/// Throws std::invalid_argument on inconsistent combinations (p != 0 for the
/// misspecified scenarios, missing/nonpositive gp_params for GpTrend, ...).
void validate(const ScenarioSpec& scenario);

/// Convenience constructors with the scenario invariants baked in.
ScenarioSpec correct_trend(std::vector<double> beta, int p = 1);
ScenarioSpec scaled_linear_trend(double beta0, double beta1);
ScenarioSpec gp_trend(double beta0, double beta1, double theta12, double theta13);

/// Ground truth stored alongside simulated data: the decomposition
/// z = mu0 + eta + eps, the generating parameters, and the grid.
struct SimulationTruth {
  std::vector<double> mu0;
  std::vector<double> eta;
  std::vector<double> eps;
  ThetaParams theta0;
  ScenarioSpec scenario;
  MixedDomainGrid grid;
};

/// Observed responses z and design matrix X on a grid. X is stored by
/// columns; column 0 is the intercept (all ones). Construction checks full
/// column rank (smallest singular value >= 1e-10 times the largest).
struct Dataset {
  MixedDomainGrid grid;
  std::vector<double> z;
  std::vector<std::vector<double>> x;
  std::optional<SimulationTruth> truth;

  std::size_t n() const { return z.size(); }
  std::size_t n_coef() const { return x.size(); }  // p + 1
};

Dataset make_dataset(MixedDomainGrid grid, std::vector<double> z,
                     std::vector<std::vector<double>> x,
                     std::optional<SimulationTruth> truth = std::nullopt);

/// CSV persistence. Format: header `s,z,x1,...,xp`, one row per site in
/// increasing s, 17 significant digits. The intercept column is implicit.
/// The reader infers (n, delta) from the row count and the first site and
/// rejects irregular grids.
void write_dataset_csv(const std::string& path, const Dataset& dataset);
Dataset read_dataset_csv(const std::string& path);

/// Sidecar with the simulation truth: header `s,mu0,eta,eps`.
void write_truth_csv(const std::string& path, const SimulationTruth& truth);

}  // namespace mixdom
