#pragma once

#include <optional>

#include "mixdom/dataset.hpp"
#include "mixdom/params.hpp"

namespace mixdom {

enum class RateMode { CLT, RateOnly, NoGuarantee };

/// Theoretical prediction for one parameter's estimation error: the mode of
/// guarantee, the rate exponent r in theta_hat - theta0 = O_p(n^-r)
/// (meaningless for NoGuarantee), and the limiting variance of
/// n^r (theta_hat - theta0) in CLT mode.
struct RatePrediction {
  int param_index;  // 1, 2, or 3
  RateMode mode;
  double exponent = 0.0;
  std::optional<double> limit_variance;
};

/// Central-limit predictions for the well-specified model:
/// param 1: rate n^{1/2},        variance 2 theta01^2
/// param 2: rate n^{(1+delta)/4}, variance 2^{5/2} theta01^{1/2} theta02^{3/2}
/// param 3: rate n^{delta/2},     variance 2 theta03 (requires delta > 0;
///          delta = 0 yields NoGuarantee)
RatePrediction clt_prediction(const ThetaParams& theta0, int param_index, double delta);

/// Phase diagram over (delta, xi), where xi is the growth exponent of the
/// trend contamination of -2 loglik. Half-open regime boundaries; sitting
/// exactly on a threshold returns the weaker guarantee.
/// param 1: xi < 1/2 -> CLT (exp 1/2); 1/2 <= xi < 1 -> RateOnly (exp 1-xi).
/// param 2: xi < (1+delta)/4 -> CLT (exp (1+delta)/4);
///          (1+delta)/4 <= xi < (1+delta)/2 -> RateOnly (exp (1+delta)/2-xi);
///          otherwise NoGuarantee.
/// param 3 (delta > 0): xi < delta/2 -> CLT (exp delta/2);
///          delta/2 <= xi < delta -> RateOnly (exp delta-xi);
///          otherwise NoGuarantee.
RatePrediction rate_region(double delta, double xi, int param_index);

/// Probability limits of the (inconsistent) ML estimates under trend
/// misspecification. ScaledLinearTrend shrinks theta3:
///   theta3_lim = 12 theta02 theta03 / (12 theta02 + beta1^2 theta03).
/// GpTrend inflates theta2 and moves theta3:
///   theta2_lim = theta02 + beta1^2 theta12,
///   theta3_lim     = theta2_lim / (beta1^2 theta12/theta13 + theta02/theta03),
///   theta3_lim_alt = theta2_lim / (beta1^2 theta12/theta13 + 1).
/// Two plausible normalizations of the theta3 denominator give different
/// limits; both are computed, and the Monte Carlo harness reports which one
/// the data matches. Errors on
/// CorrectTrend (no inconsistency predicted).
struct InconsistencyLimit {
  std::optional<double> theta2_lim;
  std::optional<double> theta3_lim;
  std::optional<double> theta3_lim_alt;
};

InconsistencyLimit inconsistency_limit(const ScenarioSpec& scenario, const ThetaParams& theta0);

/// Leading terms of log det Sigma(theta) on the mixed-domain grid:
///   n log theta1 + sqrt(2 theta2/theta1) n^{(1+delta)/2}
///   - (theta2/theta1 + theta3) n^delta + ((1-delta)/2) log n.
/// The remainder is O(1) in n (checked numerically across ladders).
double logdet_expansion(const ThetaParams& theta, std::size_t n, double delta);

/// Leading-term predictions for the trace functionals of trace_diagnostics,
/// evaluated at (theta, theta0).
struct TraceExpansionPredictions {
  double tr_s0_sinv;       // tr(Sigma(theta0) Sigma^-1(theta))
  double tr_seta_sinv_sq;  // tr((Sigma_eta Sigma^-1)^2) ~ sqrt(theta2/(8 theta1)) n^{(1+delta)/2}
  double tr_sinv_ds3_sq;   // tr((Sigma^-1 dSigma/dtheta3)^2) ~ n^delta / theta3
  double tr_sinv2;         // tr(Sigma^-2(theta0)) ~ n / theta01^2
};

TraceExpansionPredictions trace_expansion_predictions(const ThetaParams& theta,
                                                      const ThetaParams& theta0, std::size_t n,
                                                      double delta);

/// Growth exponent xi of the trend contamination for each scenario:
/// CorrectTrend 0, ScaledLinearTrend delta, GpTrend (1+delta)/2.
double risk_order(const ScenarioSpec& scenario, double delta);

}  // namespace mixdom
