#include "mixdom/estimator.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "mixdom/likelihood.hpp"

namespace mixdom {

namespace {

using Vec3 = std::array<double, 3>;

double clamp(double v, double lo, double hi) { return std::min(hi, std::max(lo, v)); }

ThetaParams theta_from_log(const Vec3& u, const ParamBox& box) {
  ThetaParams t{std::exp(u[0]), std::exp(u[1]), std::exp(u[2])};
  t.theta1 = clamp(t.theta1, box.lower.theta1, box.upper.theta1);
  t.theta2 = clamp(t.theta2, box.lower.theta2, box.upper.theta2);
  t.theta3 = clamp(t.theta3, box.lower.theta3, box.upper.theta3);
  return t;
}

struct NmResult {
  Vec3 u;
  double f = std::numeric_limits<double>::infinity();
  int evals = 0;
  bool converged = false;
};

/// Nelder-Mead on f over R^3 (log-theta coordinates; the objective clamps
/// into the box before evaluating). Standard reflection/expansion/
/// contraction/shrink coefficients 1, 2, 0.5, 0.5.
template <typename F>
NmResult nelder_mead(F&& f, const Vec3& start, double step, double tol, int max_evals) {
  std::array<Vec3, 4> pts;
  std::array<double, 4> fv;
  NmResult res;

  pts[0] = start;
  for (int k = 1; k < 4; ++k) {
    pts[k] = start;
    pts[k][k - 1] += step;
  }
  for (int k = 0; k < 4; ++k) {
    fv[k] = f(pts[k]);
    ++res.evals;
  }

  auto order = [&] {
    std::array<int, 4> idx{0, 1, 2, 3};
    std::sort(idx.begin(), idx.end(), [&](int a, int b) { return fv[a] < fv[b]; });
    std::array<Vec3, 4> p2;
    std::array<double, 4> f2;
    for (int k = 0; k < 4; ++k) {
      p2[k] = pts[idx[k]];
      f2[k] = fv[idx[k]];
    }
    pts = p2;
    fv = f2;
  };
  order();

  while (res.evals < max_evals) {
    if (std::isfinite(fv[0]) && fv[3] - fv[0] < tol) {
      res.converged = true;
      break;
    }
    Vec3 centroid{};
    for (int k = 0; k < 3; ++k) {
      centroid[k] = (pts[0][k] + pts[1][k] + pts[2][k]) / 3.0;
    }
    auto along = [&](double coef) {
      Vec3 x;
      for (int k = 0; k < 3; ++k) x[k] = centroid[k] + coef * (pts[3][k] - centroid[k]);
      return x;
    };

    const Vec3 xr = along(-1.0);
    const double fr = f(xr);
    ++res.evals;
    if (fr < fv[0]) {
      const Vec3 xe = along(-2.0);
      const double fe = f(xe);
      ++res.evals;
      if (fe < fr) {
        pts[3] = xe;
        fv[3] = fe;
      } else {
        pts[3] = xr;
        fv[3] = fr;
      }
    } else if (fr < fv[2]) {
      pts[3] = xr;
      fv[3] = fr;
    } else {
      const bool outside = fr < fv[3];
      const Vec3 xc = along(outside ? -0.5 : 0.5);
      const double fc = f(xc);
      ++res.evals;
      if (fc < (outside ? fr : fv[3])) {
        pts[3] = xc;
        fv[3] = fc;
      } else {
        for (int k = 1; k < 4; ++k) {
          for (int d = 0; d < 3; ++d) pts[k][d] = pts[0][d] + 0.5 * (pts[k][d] - pts[0][d]);
          fv[k] = f(pts[k]);
          ++res.evals;
        }
      }
    }
    order();
  }
  order();
  res.u = pts[0];
  res.f = fv[0];
  return res;
}

}  // namespace

ThetaParams initial_guess(const Dataset& dataset, const ParamBox& box) {
  validate(box);
  const std::size_t n = dataset.n();
  if (n < 4) throw std::invalid_argument("initial_guess: needs n >= 4");

  // OLS residuals of z on the design.
  const std::size_t k = dataset.n_coef();
  Eigen::MatrixXd xm(n, k);
  for (std::size_t j = 0; j < k; ++j) {
    xm.col(j) = Eigen::Map<const Eigen::VectorXd>(dataset.x[j].data(), n);
  }
  const Eigen::Map<const Eigen::VectorXd> zv(dataset.z.data(), n);
  const Eigen::VectorXd beta = xm.colPivHouseholderQr().solve(zv);
  const Eigen::VectorXd resid = zv - xm * beta;

  const double mean = resid.mean();
  double ss = 0.0, lag = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double e = resid(i) - mean;
    ss += e * e;
    if (i + 1 < n) lag += e * (resid(i + 1) - mean);
  }
  const double var = ss / static_cast<double>(n - 1);
  double r1 = ss > 0.0 ? lag / ss : 0.0;
  if (!std::isfinite(r1) || r1 < 0.05) r1 = 0.05;

  const double h = dataset.grid.spacing();
  double theta3 = -std::log(r1) / h;
  theta3 = clamp(theta3, box.lower.theta3, box.upper.theta3);
  double theta2 = std::max(var * r1, 0.1 * var) * theta3;
  theta2 = clamp(theta2, box.lower.theta2, box.upper.theta2);
  double theta1 = std::max(var - theta2 / theta3, 0.1 * var);
  theta1 = clamp(theta1, box.lower.theta1, box.upper.theta1);
  return ThetaParams{theta1, theta2, theta3};
}

EstimationResult fit_ml(const Dataset& dataset, const ParamBox& box,
                        const OptimizerOptions& options) {
  validate(box);
  if (options.max_evals < 8 || options.starts < 1) {
    throw std::invalid_argument("fit_ml: bad optimizer options");
  }

  const auto objective = [&](const Vec3& u) -> double {
    try {
      const ThetaParams t = theta_from_log(u, box);
      return -profile_loglik(t, dataset).loglik;
    } catch (const std::exception&) {
      return std::numeric_limits<double>::infinity();
    }
  };

  const Vec3 llo{std::log(box.lower.theta1), std::log(box.lower.theta2),
                 std::log(box.lower.theta3)};
  const Vec3 lhi{std::log(box.upper.theta1), std::log(box.upper.theta2),
                 std::log(box.upper.theta3)};

  const ThetaParams guess = initial_guess(dataset, box);
  std::array<Vec3, 4> starts;
  starts[0] = {std::log(guess.theta1), std::log(guess.theta2), std::log(guess.theta3)};
  for (int k = 0; k < 3; ++k) {
    const double range = lhi[k] - llo[k];
    starts[1][k] = 0.5 * (llo[k] + lhi[k]);
    // Corner starts sit 5% of the log-range inside the box so the initial
    // simplex stays strictly feasible.
    starts[2][k] = llo[k] + 0.05 * range;
    starts[3][k] = lhi[k] - 0.05 * range;
  }

  const int n_starts = std::min(options.starts, 4);
  NmResult best;
  ThetaParams best_theta{1.0, 1.0, 1.0};
  bool have_best = false;
  int total_evals = 0;
  for (int s = 0; s < n_starts; ++s) {
    NmResult r = nelder_mead(objective, starts[s], 0.25, options.tol, options.max_evals);
    total_evals += r.evals;
    if (!std::isfinite(r.f)) continue;
    const ThetaParams cand = theta_from_log(r.u, box);
    const bool better =
        !have_best || r.f < best.f ||
        (r.f == best.f && cand.as_array() < best_theta.as_array());
    if (better) {
      best = r;
      best_theta = cand;
      have_best = true;
    }
  }
  if (!have_best) {
    throw std::runtime_error("fit_ml: every start failed to produce a finite log-likelihood");
  }

  const LikelihoodEval eval = profile_loglik(best_theta, dataset);
  EstimationResult out;
  out.theta_hat = best_theta;
  out.beta_hat = eval.beta_hat;
  out.loglik = eval.loglik;
  out.n_evals = total_evals;
  out.converged = best.converged;
  out.starts = n_starts;
  for (int k = 0; k < 3; ++k) {
    const double lo = box.lower[k], hi = box.upper[k];
    const double tol = 1e-6 * (hi - lo);
    out.at_boundary[k] =
        std::abs(best_theta[k] - lo) < tol || std::abs(best_theta[k] - hi) < tol;
  }
  return out;
}

}  // namespace mixdom
