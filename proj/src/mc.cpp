#include "mixdom/mc.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <thread>

#include <json.hpp>

#include "mixdom/asymptotics.hpp"
#include "mixdom/simulate.hpp"
#include "mixdom/util.hpp"

namespace mixdom {

namespace {

using nlohmann::json;

void reject_unknown_keys(const json& obj, std::initializer_list<const char*> allowed,
                         const std::string& where) {
  for (const auto& item : obj.items()) {
    bool ok = false;
    for (const char* key : allowed) ok = ok || item.key() == key;
    if (!ok) throw std::invalid_argument("unknown config key '" + item.key() + "' in " + where);
  }
}

ThetaParams theta_from_json(const json& arr, const std::string& where) {
  if (!arr.is_array() || arr.size() != 3) {
    throw std::invalid_argument(where + " must be an array of 3 numbers");
  }
  return ThetaParams{arr[0].get<double>(), arr[1].get<double>(), arr[2].get<double>()};
}

}  // namespace

void validate(const ExperimentConfig& config) {
  validate(config.scenario);
  validate(config.theta0);
  validate(config.box);
  if (!(config.delta >= 0.0 && config.delta < 1.0)) {
    throw std::invalid_argument("ExperimentConfig: delta must lie in [0, 1)");
  }
  if (config.n_ladder.empty()) {
    throw std::invalid_argument("ExperimentConfig: n_ladder must be nonempty");
  }
  for (std::size_t i = 0; i + 1 < config.n_ladder.size(); ++i) {
    if (!(config.n_ladder[i] < config.n_ladder[i + 1])) {
      throw std::invalid_argument("ExperimentConfig: n_ladder must be strictly increasing");
    }
  }
  if (config.replicates < 1) {
    throw std::invalid_argument("ExperimentConfig: replicates must be >= 1");
  }
}

ExperimentConfig parse_experiment_config(const std::string& json_text) {
  const json j = json::parse(json_text);
  reject_unknown_keys(j,
                      {"scenario", "theta0", "delta", "n_ladder", "replicates", "rng", "box",
                       "optimizer", "outputs"},
                      "top level");

  ExperimentConfig c;

  const json& js = j.at("scenario");
  reject_unknown_keys(js, {"kind", "beta", "gp_params", "p"}, "scenario");
  ScenarioSpec s;
  s.kind = scenario_kind_from_string(js.at("kind").get<std::string>());
  if (js.contains("beta")) s.beta = js.at("beta").get<std::vector<double>>();
  if (js.contains("gp_params")) {
    const auto v = js.at("gp_params").get<std::vector<double>>();
    if (v.size() != 2) throw std::invalid_argument("scenario.gp_params must have 2 entries");
    s.gp_params = std::make_pair(v[0], v[1]);
  }
  s.p = js.value("p", s.kind == ScenarioKind::CorrectTrend ? 1 : 0);
  c.scenario = s;

  c.theta0 = theta_from_json(j.at("theta0"), "theta0");
  c.delta = j.at("delta").get<double>();
  c.n_ladder = j.at("n_ladder").get<std::vector<std::size_t>>();
  c.replicates = j.at("replicates").get<int>();

  if (j.contains("rng")) {
    reject_unknown_keys(j.at("rng"), {"base_seed"}, "rng");
    c.rng.base_seed = j.at("rng").value("base_seed", std::uint64_t{1});
  }
  c.box = default_box();
  if (j.contains("box")) {
    const json& jb = j.at("box");
    reject_unknown_keys(jb, {"lower", "upper"}, "box");
    c.box.lower = theta_from_json(jb.at("lower"), "box.lower");
    c.box.upper = theta_from_json(jb.at("upper"), "box.upper");
  }
  if (j.contains("optimizer")) {
    const json& jo = j.at("optimizer");
    reject_unknown_keys(jo, {"max_evals", "tol", "starts"}, "optimizer");
    c.optimizer.max_evals = jo.value("max_evals", c.optimizer.max_evals);
    c.optimizer.tol = jo.value("tol", c.optimizer.tol);
    c.optimizer.starts = jo.value("starts", c.optimizer.starts);
  }
  if (j.contains("outputs")) {
    const json& jo = j.at("outputs");
    reject_unknown_keys(jo, {"replicates_csv", "summary_csv"}, "outputs");
    c.outputs.replicates_csv = jo.value("replicates_csv", std::string{});
    c.outputs.summary_csv = jo.value("summary_csv", std::string{});
  }
  validate(c);
  return c;
}

ExperimentConfig load_experiment_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_experiment_config(buf.str());
}

std::string to_json(const ExperimentConfig& config) {
  json js{{"kind", to_string(config.scenario.kind)},
          {"beta", config.scenario.beta},
          {"p", config.scenario.p}};
  if (config.scenario.gp_params.has_value()) {
    js["gp_params"] = {config.scenario.gp_params->first, config.scenario.gp_params->second};
  }
  json j{{"scenario", js},
         {"theta0", config.theta0.as_array()},
         {"delta", config.delta},
         {"n_ladder", config.n_ladder},
         {"replicates", config.replicates},
         {"rng", {{"base_seed", config.rng.base_seed}}},
         {"box", {{"lower", config.box.lower.as_array()}, {"upper", config.box.upper.as_array()}}},
         {"optimizer",
          {{"max_evals", config.optimizer.max_evals},
           {"tol", config.optimizer.tol},
           {"starts", config.optimizer.starts}}},
         {"outputs",
          {{"replicates_csv", config.outputs.replicates_csv},
           {"summary_csv", config.outputs.summary_csv}}}};
  return j.dump();
}

double estimate_rate(const std::map<std::size_t, std::vector<double>>& errors_by_n) {
  if (errors_by_n.size() < 2) {
    throw std::invalid_argument("estimate_rate: need at least two ladder points");
  }
  std::vector<double> lx, ly;
  for (const auto& [n, errors] : errors_by_n) {
    if (errors.empty()) {
      throw std::invalid_argument("estimate_rate: empty error list at n = " + std::to_string(n));
    }
    KahanSum ss;
    for (double e : errors) ss.add(e * e);
    const double rmse = std::sqrt(ss.value() / static_cast<double>(errors.size()));
    lx.push_back(std::log(static_cast<double>(n)));
    ly.push_back(std::log(rmse));
  }
  const double k = static_cast<double>(lx.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    mx += lx[i];
    my += ly[i];
  }
  mx /= k;
  my /= k;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < lx.size(); ++i) {
    sxx += (lx[i] - mx) * (lx[i] - mx);
    sxy += (lx[i] - mx) * (ly[i] - my);
  }
  return sxy / sxx;
}

double ks_statistic(std::vector<double> samples, double variance) {
  if (samples.size() < 20) throw std::invalid_argument("ks_statistic: need at least 20 samples");
  if (!(variance > 0.0)) throw std::invalid_argument("ks_statistic: variance must be positive");
  std::sort(samples.begin(), samples.end());
  const double sd = std::sqrt(variance);
  const double n = static_cast<double>(samples.size());
  double d = 0.0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const double cdf = 0.5 * std::erfc(-samples[i] / (sd * std::sqrt(2.0)));
    d = std::max(d, cdf - static_cast<double>(i) / n);
    d = std::max(d, static_cast<double>(i + 1) / n - cdf);
  }
  return d;
}

McSummary run_experiment(const ExperimentConfig& config) {
  validate(config);
  const int reps = config.replicates;
  const std::size_t ladder_size = config.n_ladder.size();
  const std::size_t total = ladder_size * static_cast<std::size_t>(reps);
  const std::string scenario_name = to_string(config.scenario.kind);

  std::vector<ReplicateRow> rows(total);
  std::atomic<std::size_t> next{0};

  const auto worker = [&] {
    for (std::size_t task = next.fetch_add(1); task < total; task = next.fetch_add(1)) {
      const std::size_t li = task / static_cast<std::size_t>(reps);
      const int rep = static_cast<int>(task % static_cast<std::size_t>(reps));
      const std::size_t n = config.n_ladder[li];
      const std::uint64_t seed =
          config.rng.replicate_seed(scenario_id(config.scenario.kind), rep);

      ReplicateRow& row = rows[task];
      row.scenario = scenario_name;
      row.n = n;
      row.delta = config.delta;
      row.rep = rep;
      row.seed = seed;
      try {
        Rng rng(seed);
        const Dataset dataset =
            sample_dataset(config.scenario, config.theta0, make_grid(n, config.delta), rng);
        const EstimationResult fit = fit_ml(dataset, config.box, config.optimizer);
        row.theta_hat = fit.theta_hat;
        row.loglik = fit.loglik;
        row.converged = fit.converged;
        row.at_boundary =
            fit.at_boundary[0] || fit.at_boundary[1] || fit.at_boundary[2];
      } catch (const std::exception&) {
        const double nan = std::numeric_limits<double>::quiet_NaN();
        row.theta_hat = ThetaParams{nan, nan, nan};
        row.loglik = nan;
        row.failed = true;
      }
    }
  };

  unsigned jobs = config.jobs > 0 ? static_cast<unsigned>(config.jobs)
                                  : std::max(1u, std::thread::hardware_concurrency());
  jobs = std::min<std::size_t>(jobs, total);
  if (jobs <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(jobs);
    for (unsigned t = 0; t < jobs; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }

  // Rows are already in (n, rep) order by construction; keep the contract
  // explicit anyway.
  std::stable_sort(rows.begin(), rows.end(), [](const ReplicateRow& a, const ReplicateRow& b) {
    return a.n != b.n ? a.n < b.n : a.rep < b.rep;
  });

  McSummary out;
  out.rows = std::move(rows);

  const double xi = risk_order(config.scenario, config.delta);
  for (int param = 1; param <= 3; ++param) {
    const RatePrediction region = rate_region(config.delta, xi, param);
    std::optional<double> pred_var;
    if (region.mode == RateMode::CLT) {
      pred_var = clt_prediction(config.theta0, param, config.delta).limit_variance;
    }

    // Raw errors per ladder point over usable replicates.
    std::map<std::size_t, std::vector<double>> errors_by_n;
    std::map<std::size_t, std::pair<int, int>> excluded_by_n;  // (boundary, failed)
    for (const ReplicateRow& row : out.rows) {
      auto& excluded = excluded_by_n[row.n];
      if (row.failed) {
        excluded.second += 1;
        continue;
      }
      if (row.at_boundary) {
        excluded.first += 1;
        continue;
      }
      errors_by_n[row.n].push_back(row.theta_hat[param - 1] - config.theta0[param - 1]);
    }

    std::optional<double> rate_slope;
    if (config.n_ladder.size() >= 2) {
      bool all_nonempty = true;
      for (std::size_t n : config.n_ladder) {
        all_nonempty = all_nonempty && !errors_by_n[n].empty();
      }
      if (all_nonempty) rate_slope = estimate_rate(errors_by_n);
    }

    for (std::size_t n : config.n_ladder) {
      SummaryCell cell;
      cell.scenario = scenario_name;
      cell.n = n;
      cell.param = param;
      const auto& errors = errors_by_n[n];
      const auto& excluded = excluded_by_n[n];
      cell.boundary_hits = excluded.first;
      cell.failures = excluded.second;
      cell.rate_slope = rate_slope;
      if (!errors.empty()) {
        KahanSum mean;
        for (double e : errors) mean.add(e);
        cell.mean_error = mean.value() / static_cast<double>(errors.size());
      }
      if (region.mode != RateMode::NoGuarantee && errors.size() >= 2) {
        const double scale = std::pow(static_cast<double>(n), region.exponent);
        KahanSum m, m2;
        for (double e : errors) m.add(scale * e);
        const double mu = m.value() / static_cast<double>(errors.size());
        for (double e : errors) m2.add((scale * e - mu) * (scale * e - mu));
        cell.emp_var_scaled = m2.value() / static_cast<double>(errors.size() - 1);

        cell.pred_var = pred_var;
        if (pred_var.has_value() && errors.size() >= 20) {
          std::vector<double> scaled;
          scaled.reserve(errors.size());
          for (double e : errors) scaled.push_back(scale * e);
          cell.ks = ks_statistic(std::move(scaled), *pred_var);
        }
      } else if (region.mode == RateMode::CLT) {
        cell.pred_var = pred_var;
      }
      out.cells.push_back(cell);
    }
  }

  // Order cells by (n, param) for the summary file.
  std::stable_sort(out.cells.begin(), out.cells.end(),
                   [](const SummaryCell& a, const SummaryCell& b) {
                     return a.n != b.n ? a.n < b.n : a.param < b.param;
                   });

  if (!config.outputs.replicates_csv.empty()) {
    std::ofstream f(config.outputs.replicates_csv);
    if (!f) {
      throw std::runtime_error("cannot open " + config.outputs.replicates_csv + " for writing");
    }
    f << replicates_csv_text(out.rows);
  }
  if (!config.outputs.summary_csv.empty()) {
    std::ofstream f(config.outputs.summary_csv);
    if (!f) throw std::runtime_error("cannot open " + config.outputs.summary_csv + " for writing");
    f << summary_csv_text(out.cells);
  }
  return out;
}

std::string replicates_csv_text(const std::vector<ReplicateRow>& rows) {
  std::ostringstream out;
  out << "scenario,n,delta,rep,seed,theta1_hat,theta2_hat,theta3_hat,loglik,converged,"
         "at_boundary\n";
  for (const ReplicateRow& r : rows) {
    out << r.scenario << ',' << r.n << ',' << fmt17(r.delta) << ',' << r.rep << ',' << r.seed
        << ',' << fmt17(r.theta_hat.theta1) << ',' << fmt17(r.theta_hat.theta2) << ','
        << fmt17(r.theta_hat.theta3) << ',' << fmt17(r.loglik) << ',' << (r.converged ? 1 : 0)
        << ',' << (r.at_boundary ? 1 : 0) << "\n";
  }
  return out.str();
}

std::string summary_csv_text(const std::vector<SummaryCell>& cells) {
  const auto opt = [](const std::optional<double>& v) {
    return v.has_value() ? fmt17(*v) : std::string{};
  };
  std::ostringstream out;
  out << "scenario,n,param,mean_error,emp_var_scaled,pred_var,ks,rate_slope,boundary_hits,"
         "failures\n";
  for (const SummaryCell& c : cells) {
    out << c.scenario << ',' << c.n << ',' << c.param << ',' << opt(c.mean_error) << ','
        << opt(c.emp_var_scaled) << ',' << opt(c.pred_var) << ',' << opt(c.ks) << ','
        << opt(c.rate_slope) << ',' << c.boundary_hits << ',' << c.failures << "\n";
  }
  return out.str();
}

}  // namespace mixdom
