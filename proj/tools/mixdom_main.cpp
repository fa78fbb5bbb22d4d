// Command-line front end: simulate datasets, fit by exact ML, run replicated
// experiments, and print deterministic diagnostics. All randomness flows from
// --seed; every run echoes its fully resolved configuration to stderr.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <exception>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "mixdom/asymptotics.hpp"
#include "mixdom/dataset.hpp"
#include "mixdom/dense.hpp"
#include "mixdom/estimator.hpp"
#include "mixdom/factor.hpp"
#include "mixdom/likelihood.hpp"
#include "mixdom/mc.hpp"
#include "mixdom/rng.hpp"
#include "mixdom/simulate.hpp"
#include "mixdom/traces.hpp"
#include "mixdom/util.hpp"

namespace {

using json = nlohmann::json;
using namespace mixdom;

ThetaParams to_theta(const std::vector<double>& v) {
  return ThetaParams{v[0], v[1], v[2]};
}

void echo_config(const json& j) { std::cerr << j.dump() << "\n"; }

struct SimulateArgs {
  std::string scenario;
  std::vector<double> theta0;
  std::size_t n = 0;
  double delta = 0.0;
  std::uint64_t seed = 0;
  std::string out;
  std::vector<double> beta;
  std::vector<double> gp_params;
  int p = -1;  // -1: per-scenario default
};

int cmd_simulate(const SimulateArgs& a) {
  ScenarioSpec scenario;
  scenario.kind = scenario_kind_from_string(a.scenario);
  scenario.p = a.p >= 0 ? a.p : (scenario.kind == ScenarioKind::CorrectTrend ? 1 : 0);
  if (!a.beta.empty()) {
    scenario.beta = a.beta;
  } else if (scenario.kind != ScenarioKind::CorrectTrend) {
    scenario.beta = {0.0, 1.0};
  }
  if (!a.gp_params.empty()) {
    scenario.gp_params = std::make_pair(a.gp_params[0], a.gp_params[1]);
  } else if (scenario.kind == ScenarioKind::GpTrend) {
    scenario.gp_params = std::make_pair(1.0, 1.0);
  }
  validate(scenario);
  const ThetaParams theta0 = to_theta(a.theta0);
  const MixedDomainGrid grid = make_grid(a.n, a.delta);
  const std::string truth_out = a.out + ".truth.csv";

  json je{{"subcommand", "simulate"},
          {"scenario", to_string(scenario.kind)},
          {"beta", scenario.beta},
          {"p", scenario.p},
          {"theta0", theta0.as_array()},
          {"n", a.n},
          {"delta", a.delta},
          {"seed", a.seed},
          {"out", a.out},
          {"truth_out", truth_out}};
  if (scenario.gp_params.has_value()) {
    je["gp_params"] = {scenario.gp_params->first, scenario.gp_params->second};
  }
  echo_config(je);

  Rng rng(a.seed);
  const Dataset dataset = sample_dataset(scenario, theta0, grid, rng);
  write_dataset_csv(a.out, dataset);
  write_truth_csv(truth_out, *dataset.truth);
  std::cout << "wrote " << a.out << " (" << dataset.n() << " rows) and " << truth_out << "\n";
  return 0;
}

struct FitArgs {
  std::string data;
  std::vector<double> box;
  int starts = 4;
};

int cmd_fit(const FitArgs& a) {
  ParamBox box = default_box();
  if (a.box.size() == 2) {
    box.lower = ThetaParams{a.box[0], a.box[0], a.box[0]};
    box.upper = ThetaParams{a.box[1], a.box[1], a.box[1]};
  } else if (a.box.size() == 6) {
    box.lower = ThetaParams{a.box[0], a.box[1], a.box[2]};
    box.upper = ThetaParams{a.box[3], a.box[4], a.box[5]};
  } else if (!a.box.empty()) {
    throw std::invalid_argument("--box takes 2 values (lo,hi) or 6 (lo1,lo2,lo3,hi1,hi2,hi3)");
  }
  validate(box);
  OptimizerOptions options;
  options.starts = a.starts;

  echo_config(json{{"subcommand", "fit"},
                   {"data", a.data},
                   {"box", {{"lower", box.lower.as_array()}, {"upper", box.upper.as_array()}}},
                   {"starts", options.starts},
                   {"max_evals", options.max_evals},
                   {"tol", options.tol}});

  const Dataset dataset = read_dataset_csv(a.data);
  const EstimationResult r = fit_ml(dataset, box, options);

  // Hand-rendered JSON so every number carries 17 significant digits.
  std::cout << "{\"theta_hat\":[" << fmt17(r.theta_hat.theta1) << ',' << fmt17(r.theta_hat.theta2)
            << ',' << fmt17(r.theta_hat.theta3) << "],\"beta_hat\":[";
  for (std::size_t j = 0; j < r.beta_hat.size(); ++j) {
    std::cout << (j ? "," : "") << fmt17(r.beta_hat[j]);
  }
  std::cout << "],\"loglik\":" << fmt17(r.loglik) << ",\"n_evals\":" << r.n_evals
            << ",\"converged\":" << (r.converged ? "true" : "false")
            << ",\"starts\":" << r.starts << ",\"at_boundary\":["
            << (r.at_boundary[0] ? "true" : "false") << ',' << (r.at_boundary[1] ? "true" : "false")
            << ',' << (r.at_boundary[2] ? "true" : "false") << "]}\n";
  return 0;
}

struct McArgs {
  std::string config;
  int jobs = 0;
  std::string out_dir;
};

int cmd_mc(const McArgs& a) {
  ExperimentConfig config = load_experiment_config(a.config);
  config.jobs = a.jobs;
  if (!a.out_dir.empty()) {
    std::filesystem::create_directories(a.out_dir);
    config.outputs.replicates_csv = (std::filesystem::path(a.out_dir) / "replicates.csv").string();
    config.outputs.summary_csv = (std::filesystem::path(a.out_dir) / "summary.csv").string();
  }
  json je = json::parse(to_json(config));
  je["subcommand"] = "mc";
  je["jobs"] = config.jobs;
  echo_config(je);

  const McSummary summary = run_experiment(config);
  std::cout << summary_csv_text(summary.cells);
  return 0;
}

struct DiagArgs {
  std::vector<double> theta;
  std::vector<double> theta0;
  double delta = 0.0;
  std::vector<std::size_t> n_ladder;
};

int cmd_diag(const DiagArgs& a) {
  const ThetaParams theta = to_theta(a.theta);
  const ThetaParams theta0 = to_theta(a.theta0);
  echo_config(json{{"subcommand", "diag"},
                   {"theta", theta.as_array()},
                   {"theta0", theta0.as_array()},
                   {"delta", a.delta},
                   {"n_ladder", a.n_ladder}});

  const auto ratio = [](double exact, double pred) { return exact / pred; };
  std::cout << "n,logdet_exact,logdet_pred,logdet_ratio"
               ",tr_s0_sinv_exact,tr_s0_sinv_pred,tr_s0_sinv_ratio"
               ",tr_sinv2_exact,tr_sinv2_pred,tr_sinv2_ratio"
               ",tr_seta_sinv_sq_exact,tr_seta_sinv_sq_pred,tr_seta_sinv_sq_ratio"
               ",tr_sinv_ds3_sq_exact,tr_sinv_ds3_sq_pred,tr_sinv_ds3_sq_ratio\n";
  for (std::size_t n : a.n_ladder) {
    const MixedDomainGrid grid = make_grid(n, a.delta);
    const TridiagFactor factor = build_factor(theta, grid);
    const double logdet = logdet_sigma(factor);
    const double logdet_pred = logdet_expansion(theta, n, a.delta);
    const TraceDiagnostics traces = trace_diagnostics(theta, theta0, grid);
    const TraceExpansionPredictions pred = trace_expansion_predictions(theta, theta0, n, a.delta);
    const double tr_s0_sinv = theta0.theta1 * traces.tr_sinv + traces.tr_seta0_sinv;
    std::cout << n << ',' << fmt17(logdet) << ',' << fmt17(logdet_pred) << ','
              << fmt17(ratio(logdet, logdet_pred)) << ',' << fmt17(tr_s0_sinv) << ','
              << fmt17(pred.tr_s0_sinv) << ',' << fmt17(ratio(tr_s0_sinv, pred.tr_s0_sinv)) << ','
              << fmt17(traces.tr_sinv2) << ',' << fmt17(pred.tr_sinv2) << ','
              << fmt17(ratio(traces.tr_sinv2, pred.tr_sinv2)) << ','
              << fmt17(traces.tr_sinv_seta_sq) << ',' << fmt17(pred.tr_seta_sinv_sq) << ','
              << fmt17(ratio(traces.tr_sinv_seta_sq, pred.tr_seta_sinv_sq)) << ','
              << fmt17(traces.tr_sinv_ds3_sq) << ',' << fmt17(pred.tr_sinv_ds3_sq) << ','
              << fmt17(ratio(traces.tr_sinv_ds3_sq, pred.tr_sinv_ds3_sq)) << "\n";
  }
  return 0;
}

struct OracleArgs {
  std::size_t n = 256;
  int trials = 20;
  std::uint64_t seed = 1;
};

int cmd_oracle_check(const OracleArgs& a) {
  echo_config(
      json{{"subcommand", "oracle-check"}, {"n", a.n}, {"trials", a.trials}, {"seed", a.seed}});
  if (a.n > dense_cap()) {
    throw std::invalid_argument("--n exceeds the dense comparison cap (" +
                                std::to_string(dense_cap()) + ", override: MIXDOM_DENSE_CAP)");
  }

  std::vector<ThetaParams> thetas;
  Rng rng(a.seed);
  const auto draw = [&rng] { return 0.1 + 9.9 * rng.next_unit(); };
  for (int t = 0; t < a.trials; ++t) thetas.push_back(ThetaParams{draw(), draw(), draw()});
  for (double t1 : {0.1, 10.0})
    for (double t2 : {0.1, 10.0})
      for (double t3 : {0.1, 10.0}) thetas.push_back(ThetaParams{t1, t2, t3});

  double max_logdet = 0.0, max_quad = 0.0, max_whiten = 0.0;
  for (double delta : {0.0, 0.5, 0.9}) {
    const MixedDomainGrid grid = make_grid(a.n, delta);
    for (const ThetaParams& theta : thetas) {
      const TridiagFactor factor = build_factor(theta, grid);
      const auto sigma = dense_sigma(theta, grid);
      const double ld_fast = logdet_sigma(factor);
      const double ld_dense = dense_logdet(sigma);
      max_logdet = std::max(max_logdet, std::abs(ld_fast - ld_dense) / std::abs(ld_dense));

      std::vector<double> v(a.n);
      for (double& x : v) x = rng.next_normal();
      const double q_fast = quad_form(factor, v, v);
      Eigen::Map<const Eigen::VectorXd> vm(v.data(), static_cast<Eigen::Index>(a.n));
      const double q_dense = vm.dot(sigma.llt().solve(vm));
      max_quad = std::max(max_quad, std::abs(q_fast - q_dense) / std::abs(q_dense));

      const auto g = dense_g(theta, grid);
      const auto seta = dense_sigma_eta(theta, grid);
      Eigen::MatrixXd resid = g * seta * g.transpose();
      for (std::size_t i = 0; i < a.n; ++i) {
        resid(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) -=
            (i == 0 ? factor.d_first : factor.d_rest);
      }
      max_whiten = std::max(max_whiten, resid.cwiseAbs().maxCoeff());
    }
  }

  const bool pass = max_logdet <= 1e-8 && max_quad <= 1e-8 && max_whiten <= 1e-10;
  std::cout << "logdet max rel err:   " << fmt17(max_logdet) << "\n"
            << "quad_form max rel err: " << fmt17(max_quad) << "\n"
            << "whitening max abs err: " << fmt17(max_whiten) << "\n"
            << (pass ? "PASS" : "FAIL") << "\n";
  return pass ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact ML for an Ornstein-Uhlenbeck process with nugget on mixed-domain grids"};
  app.require_subcommand(1);

  SimulateArgs sim;
  CLI::App* s = app.add_subcommand("simulate", "Draw one dataset; writes CSV plus truth sidecar");
  s->add_option("--scenario", sim.scenario, "correct | scaled-linear | gp")->required();
  s->add_option("--theta0", sim.theta0, "true parameters a,b,c")
      ->delimiter(',')
      ->expected(3)
      ->required();
  s->add_option("--n", sim.n, "number of sites")->required();
  s->add_option("--delta", sim.delta, "domain growth exponent in [0, 1)")->required();
  s->add_option("--seed", sim.seed, "RNG seed")->required();
  s->add_option("--out", sim.out, "output CSV path")->required();
  s->add_option("--beta", sim.beta, "trend coefficients b0,b1,...")->delimiter(',');
  s->add_option("--gp-params", sim.gp_params, "covariate path parameters t12,t13")
      ->delimiter(',')
      ->expected(2);
  s->add_option("--p", sim.p, "fitted polynomial degree (correct trend only)");

  FitArgs fit;
  CLI::App* f = app.add_subcommand("fit", "Maximum-likelihood fit; prints JSON to stdout");
  f->add_option("--data", fit.data, "dataset CSV path")->required();
  f->add_option("--box", fit.box, "search box: lo,hi or lo1,lo2,lo3,hi1,hi2,hi3")->delimiter(',');
  f->add_option("--starts", fit.starts, "number of optimizer starts (1-4)");

  McArgs mc;
  CLI::App* m = app.add_subcommand("mc", "Replicated experiment from a JSON config");
  m->add_option("--config", mc.config, "experiment config JSON path")->required();
  m->add_option("--jobs", mc.jobs, "worker threads (0 = available parallelism)");
  m->add_option("--out-dir", mc.out_dir, "write replicates.csv and summary.csv here");

  DiagArgs diag;
  CLI::App* d = app.add_subcommand("diag", "Exact trace/log-det functionals vs predictions");
  d->add_option("--theta", diag.theta, "evaluation parameters a,b,c")
      ->delimiter(',')
      ->expected(3)
      ->required();
  d->add_option("--theta0", diag.theta0, "generating parameters a,b,c")
      ->delimiter(',')
      ->expected(3)
      ->required();
  d->add_option("--delta", diag.delta, "domain growth exponent in [0, 1)")->required();
  d->add_option("--n-ladder", diag.n_ladder, "comma-separated sizes")->delimiter(',')->required();

  OracleArgs oracle;
  CLI::App* o = app.add_subcommand("oracle-check", "Fast factorization vs dense linear algebra");
  o->add_option("--n", oracle.n, "matrix size (must not exceed the dense cap)");
  o->add_option("--trials", oracle.trials, "random parameter draws");
  o->add_option("--seed", oracle.seed, "RNG seed");

  CLI11_PARSE(app, argc, argv);

  try {
    if (s->parsed()) return cmd_simulate(sim);
    if (f->parsed()) return cmd_fit(fit);
    if (m->parsed()) return cmd_mc(mc);
    if (d->parsed()) return cmd_diag(diag);
    if (o->parsed()) return cmd_oracle_check(oracle);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
