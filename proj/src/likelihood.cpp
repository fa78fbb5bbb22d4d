#include "mixdom/likelihood.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "mixdom/traces.hpp"
#include "mixdom/util.hpp"

namespace mixdom {

namespace {

const double kLog2Pi = std::log(2.0 * std::numbers::pi);

struct GlsFit {
  std::vector<double> beta;
  std::vector<double> residual;
};

/// GLS of v on the columns of x under the factor's Sigma: the normal matrix
/// is assembled as W' D^-1 W with W = L^-1 G X, which is symmetric positive
/// semidefinite by construction.
GlsFit gls_fit(const TridiagFactor& factor, const std::vector<std::vector<double>>& x,
               const std::vector<double>& v) {
  const std::size_t n = factor.n();
  const std::size_t k = x.size();
  std::vector<std::vector<double>> w(k);
  for (std::size_t j = 0; j < k; ++j) w[j] = half_solve(factor, x[j]);
  const std::vector<double> wv = half_solve(factor, v);

  Eigen::MatrixXd a(k, k);
  Eigen::VectorXd rhs(k);
  for (std::size_t j = 0; j < k; ++j) {
    for (std::size_t l = 0; l <= j; ++l) {
      KahanSum s;
      for (std::size_t i = 0; i < n; ++i) s.add(w[j][i] * w[l][i] / factor.ldl_d[i]);
      a(j, l) = s.value();
      a(l, j) = s.value();
    }
    KahanSum s;
    for (std::size_t i = 0; i < n; ++i) s.add(w[j][i] * wv[i] / factor.ldl_d[i]);
    rhs(j) = s.value();
  }

  Eigen::LLT<Eigen::MatrixXd> llt(a);
  if (llt.info() != Eigen::Success) {
    throw std::runtime_error("gls_fit: singular normal equations");
  }
  const Eigen::VectorXd beta = llt.solve(rhs);

  GlsFit out;
  out.beta.assign(beta.data(), beta.data() + k);
  out.residual.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    double fit = 0.0;
    for (std::size_t j = 0; j < k; ++j) fit += out.beta[j] * x[j][i];
    out.residual[i] = v[i] - fit;
  }
  return out;
}

}  // namespace

std::vector<double> gls_beta(const ThetaParams& theta, const Dataset& dataset) {
  const TridiagFactor factor = build_factor(theta, dataset.grid);
  return gls_fit(factor, dataset.x, dataset.z).beta;
}

LikelihoodEval profile_loglik(const ThetaParams& theta, const Dataset& dataset) {
  const TridiagFactor factor = build_factor(theta, dataset.grid);
  GlsFit fit = gls_fit(factor, dataset.x, dataset.z);

  LikelihoodEval eval;
  eval.theta = theta;
  eval.beta_hat = std::move(fit.beta);
  eval.logdet = logdet_sigma(factor);
  eval.rss_q = quad_form(factor, fit.residual, fit.residual);
  eval.loglik =
      -0.5 * (static_cast<double>(dataset.n()) * kLog2Pi + eval.logdet + eval.rss_q);
  return eval;
}

Neg2llDecomposition neg2ll_decomposition(const ThetaParams& theta, const Dataset& dataset) {
  if (!dataset.truth.has_value()) {
    throw std::invalid_argument("neg2ll_decomposition: dataset carries no simulation truth");
  }
  const SimulationTruth& truth = *dataset.truth;
  const std::size_t n = dataset.n();
  const TridiagFactor factor = build_factor(theta, dataset.grid);

  std::vector<double> w(n);
  for (std::size_t i = 0; i < n; ++i) w[i] = truth.eta[i] + truth.eps[i];

  const GlsFit w_fit = gls_fit(factor, dataset.x, w);
  const GlsFit mu_fit = gls_fit(factor, dataset.x, truth.mu0);

  const double quad_w = quad_form(factor, w, w);
  const double quad_rw = quad_form(factor, w_fit.residual, w_fit.residual);

  const TraceDiagnostics traces = trace_diagnostics(theta, truth.theta0, dataset.grid);
  const double tr_s0_sinv = truth.theta0.theta1 * traces.tr_sinv + traces.tr_seta0_sinv;

  Neg2llDecomposition out;
  out.misspec_quad = quad_form(factor, mu_fit.residual, mu_fit.residual);
  out.cross_term = 2.0 * quad_form(factor, mu_fit.residual, w_fit.residual);
  out.proj_term = quad_w - quad_rw;
  out.h_term = quad_w - tr_s0_sinv;
  out.base_neg2ll0 = static_cast<double>(n) * kLog2Pi + logdet_sigma(factor) + tr_s0_sinv;
  return out;
}

double misspec_quad(const ThetaParams& theta, const SimulationTruth& truth,
                    const std::vector<std::vector<double>>& x) {
  const TridiagFactor factor = build_factor(theta, truth.grid);
  const GlsFit mu_fit = gls_fit(factor, x, truth.mu0);
  return quad_form(factor, mu_fit.residual, mu_fit.residual);
}

double r_theta_sup(const SimulationTruth& truth, const std::vector<std::vector<double>>& x,
                   const std::vector<ThetaParams>& theta_grid) {
  if (theta_grid.empty()) throw std::invalid_argument("r_theta_sup: empty theta grid");
  double sup = 0.0;
  for (const ThetaParams& theta : theta_grid) {
    sup = std::max(sup, misspec_quad(theta, truth, x));
  }
  const double p = static_cast<double>(x.size()) - 1.0;
  return std::max(sup, p);
}

std::vector<ThetaParams> theta_lattice(double lo, double hi, int per_axis) {
  if (!(lo > 0.0 && hi > lo) || per_axis < 2) {
    throw std::invalid_argument("theta_lattice: need 0 < lo < hi and >= 2 points per axis");
  }
  std::vector<double> ticks(per_axis);
  const double llo = std::log(lo), lhi = std::log(hi);
  for (int i = 0; i < per_axis; ++i) {
    ticks[i] = std::exp(llo + (lhi - llo) * static_cast<double>(i) /
                                  static_cast<double>(per_axis - 1));
  }
  std::vector<ThetaParams> grid;
  grid.reserve(static_cast<std::size_t>(per_axis) * per_axis * per_axis);
  for (double t1 : ticks)
    for (double t2 : ticks)
      for (double t3 : ticks) grid.push_back(ThetaParams{t1, t2, t3});
  return grid;
}

}  // namespace mixdom
