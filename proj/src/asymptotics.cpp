#include "mixdom/asymptotics.hpp"

#include <cmath>
#include <stdexcept>

namespace mixdom {

namespace {

void check_param_index(int param_index) {
  if (param_index < 1 || param_index > 3) {
    throw std::invalid_argument("param_index must be 1, 2, or 3");
  }
}

void check_delta(double delta) {
  if (!(delta >= 0.0 && delta < 1.0)) throw std::invalid_argument("delta must lie in [0, 1)");
}

}  // namespace

RatePrediction clt_prediction(const ThetaParams& theta0, int param_index, double delta) {
  validate(theta0);
  check_param_index(param_index);
  check_delta(delta);

  RatePrediction p;
  p.param_index = param_index;
  switch (param_index) {
    case 1:
      p.mode = RateMode::CLT;
      p.exponent = 0.5;
      p.limit_variance = 2.0 * theta0.theta1 * theta0.theta1;
      break;
    case 2:
      p.mode = RateMode::CLT;
      p.exponent = 0.25 * (1.0 + delta);
      p.limit_variance =
          std::pow(2.0, 2.5) * std::sqrt(theta0.theta1) * std::pow(theta0.theta2, 1.5);
      break;
    case 3:
      if (delta == 0.0) {
        p.mode = RateMode::NoGuarantee;
      } else {
        p.mode = RateMode::CLT;
        p.exponent = 0.5 * delta;
        p.limit_variance = 2.0 * theta0.theta3;
      }
      break;
  }
  return p;
}

RatePrediction rate_region(double delta, double xi, int param_index) {
  check_param_index(param_index);
  check_delta(delta);
  if (!(xi >= 0.0 && xi < 1.0)) throw std::invalid_argument("xi must lie in [0, 1)");

  RatePrediction p;
  p.param_index = param_index;
  switch (param_index) {
    case 1:
      if (xi < 0.5) {
        p.mode = RateMode::CLT;
        p.exponent = 0.5;
      } else {
        p.mode = RateMode::RateOnly;
        p.exponent = 1.0 - xi;
      }
      break;
    case 2: {
      const double clt_edge = 0.25 * (1.0 + delta);
      const double rate_edge = 0.5 * (1.0 + delta);
      if (xi < clt_edge) {
        p.mode = RateMode::CLT;
        p.exponent = clt_edge;
      } else if (xi < rate_edge) {
        p.mode = RateMode::RateOnly;
        p.exponent = rate_edge - xi;
      } else {
        p.mode = RateMode::NoGuarantee;
      }
      break;
    }
    case 3:
      if (delta > 0.0 && xi < 0.5 * delta) {
        p.mode = RateMode::CLT;
        p.exponent = 0.5 * delta;
      } else if (delta > 0.0 && xi < delta) {
        p.mode = RateMode::RateOnly;
        p.exponent = delta - xi;
      } else {
        p.mode = RateMode::NoGuarantee;
      }
      break;
  }
  return p;
}

InconsistencyLimit inconsistency_limit(const ScenarioSpec& scenario, const ThetaParams& theta0) {
  validate(scenario);
  validate(theta0);
  const double b1 = scenario.beta.size() > 1 ? scenario.beta[1] : 0.0;

  InconsistencyLimit out;
  switch (scenario.kind) {
    case ScenarioKind::CorrectTrend:
      throw std::invalid_argument("inconsistency_limit: no inconsistency under a correct trend");
    case ScenarioKind::ScaledLinearTrend:
      out.theta3_lim = 12.0 * theta0.theta2 * theta0.theta3 /
                       (12.0 * theta0.theta2 + b1 * b1 * theta0.theta3);
      break;
    case ScenarioKind::GpTrend: {
      const double t12 = scenario.gp_params->first;
      const double t13 = scenario.gp_params->second;
      const double num = theta0.theta2 + b1 * b1 * t12;
      out.theta2_lim = num;
      out.theta3_lim = num / (b1 * b1 * t12 / t13 + theta0.theta2 / theta0.theta3);
      out.theta3_lim_alt = num / (b1 * b1 * t12 / t13 + 1.0);
      break;
    }
  }
  return out;
}

double logdet_expansion(const ThetaParams& theta, std::size_t n, double delta) {
  validate(theta);
  check_delta(delta);
  const double nd = static_cast<double>(n);
  return nd * std::log(theta.theta1) +
         std::sqrt(2.0 * theta.theta2 / theta.theta1) * std::pow(nd, 0.5 * (1.0 + delta)) -
         (theta.theta2 / theta.theta1 + theta.theta3) * std::pow(nd, delta) +
         0.5 * (1.0 - delta) * std::log(nd);
}

TraceExpansionPredictions trace_expansion_predictions(const ThetaParams& theta,
                                                      const ThetaParams& theta0, std::size_t n,
                                                      double delta) {
  validate(theta);
  validate(theta0);
  check_delta(delta);
  const double nd = static_cast<double>(n);
  const double n_half = std::pow(nd, 0.5 * (1.0 + delta));
  const double n_delta = std::pow(nd, delta);

  TraceExpansionPredictions p;
  p.tr_s0_sinv =
      (theta0.theta1 / theta.theta1) * nd -
      (theta0.theta1 / (2.0 * theta.theta1)) * std::sqrt(2.0 * theta.theta2 / theta.theta1) *
          n_half +
      theta0.theta2 / std::sqrt(2.0 * theta.theta1 * theta.theta2) * n_half +
      theta0.theta2 * (theta.theta3 * theta.theta3 - theta0.theta3 * theta0.theta3) /
          (2.0 * theta.theta2 * theta0.theta3) * n_delta;
  p.tr_seta_sinv_sq = std::sqrt(theta.theta2 / (8.0 * theta.theta1)) * n_half;
  p.tr_sinv_ds3_sq = n_delta / theta.theta3;
  p.tr_sinv2 = nd / (theta0.theta1 * theta0.theta1);
  return p;
}

double risk_order(const ScenarioSpec& scenario, double delta) {
  validate(scenario);
  check_delta(delta);
  switch (scenario.kind) {
    case ScenarioKind::CorrectTrend: return 0.0;
    case ScenarioKind::ScaledLinearTrend: return delta;
    case ScenarioKind::GpTrend: return 0.5 * (1.0 + delta);
  }
  throw std::logic_error("risk_order: unknown scenario kind");
}

}  // namespace mixdom
