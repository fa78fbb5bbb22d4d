#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "mixdom/dataset.hpp"
#include "mixdom/estimator.hpp"
#include "mixdom/params.hpp"
#include "mixdom/rng.hpp"

namespace mixdom {

struct ExperimentOutputs {
  std::string replicates_csv;  // empty: not written
  std::string summary_csv;     // empty: not written
};

/// One replicated simulate-fit experiment: scenario, generating parameters,
/// ladder of sample sizes, and the optimizer setup. Loadable from JSON (same
/// field names, snake_case).
struct ExperimentConfig {
  ScenarioSpec scenario;
  ThetaParams theta0{1.0, 1.0, 1.0};
  double delta = 0.0;
  std::vector<std::size_t> n_ladder;
  int replicates = 1;
  RngSpec rng;
  ParamBox box = default_box();
  OptimizerOptions optimizer;
  ExperimentOutputs outputs;
  int jobs = 0;  // worker threads; 0 = available parallelism (not part of JSON)
};

void validate(const ExperimentConfig& config);
ExperimentConfig parse_experiment_config(const std::string& json_text);
ExperimentConfig load_experiment_config(const std::string& path);
std::string to_json(const ExperimentConfig& config);

/// One fitted replicate. Failed fits keep NaN estimates and count as
/// failures in the summary.
struct ReplicateRow {
  std::string scenario;
  std::size_t n;
  double delta;
  int rep;
  std::uint64_t seed;
  ThetaParams theta_hat{};
  double loglik = 0.0;
  bool converged = false;
  bool at_boundary = false;
  bool failed = false;
};

/// Per-(n, parameter) aggregate. Errors are scaled by n^r with r the
/// predicted rate exponent for the scenario's contamination order xi;
/// replicates that failed or hit the box boundary are excluded from the
/// distributional summaries and counted. Optional fields are absent when
/// undefined (NoGuarantee mode, too few replicates, single-point ladder).
struct SummaryCell {
  std::string scenario;
  std::size_t n;
  int param;  // 1..3
  std::optional<double> mean_error;  // raw theta_hat - theta0 over used replicates
  std::optional<double> emp_var_scaled;
  std::optional<double> pred_var;
  std::optional<double> ks;
  std::optional<double> rate_slope;  // shared across the ladder per param
  int boundary_hits = 0;
  int failures = 0;
};

struct McSummary {
  std::vector<ReplicateRow> rows;    // sorted by (n, rep)
  std::vector<SummaryCell> cells;    // sorted by (n, param)
};

/// Runs the full experiment: for every (n, replicate) derive the seed,
/// simulate, fit, and aggregate. Replicates run concurrently; aggregation is
/// over results sorted by (n, replicate), so output is independent of the
/// number of workers. Per-replicate fit failures never abort the run.
McSummary run_experiment(const ExperimentConfig& config);

/// Least-squares slope of log RMSE against log n. Needs at least two ladder
/// points with nonempty error lists.
double estimate_rate(const std::map<std::size_t, std::vector<double>>& errors_by_n);

/// Kolmogorov-Smirnov sup distance between the empirical CDF of samples and
/// the zero-mean normal CDF with the given variance. Needs >= 20 samples.
double ks_statistic(std::vector<double> samples, double variance);

/// CSV renderings (byte-stable given identical inputs).
/// Replicate header: scenario,n,delta,rep,seed,theta1_hat,theta2_hat,
///   theta3_hat,loglik,converged,at_boundary
/// Summary header: scenario,n,param,mean_error,emp_var_scaled,pred_var,ks,
///   rate_slope,boundary_hits,failures
std::string replicates_csv_text(const std::vector<ReplicateRow>& rows);
std::string summary_csv_text(const std::vector<SummaryCell>& cells);

}  // namespace mixdom
