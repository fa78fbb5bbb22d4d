#include "mixdom/dataset.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "mixdom/util.hpp"

namespace mixdom {

std::string to_string(ScenarioKind kind) {
  switch (kind) {
    case ScenarioKind::CorrectTrend: return "CorrectTrend";
    case ScenarioKind::ScaledLinearTrend: return "ScaledLinearTrend";
    case ScenarioKind::GpTrend: return "GpTrend";
  }
  throw std::logic_error("to_string: unknown ScenarioKind");
}

ScenarioKind scenario_kind_from_string(const std::string& name) {
  std::string s = name;
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
  std::replace(s.begin(), s.end(), '-', '_');
  if (s == "correcttrend" || s == "correct" || s == "correct_trend") {
    return ScenarioKind::CorrectTrend;
  }
  if (s == "scaledlineartrend" || s == "scaled_linear" || s == "scaled_linear_trend") {
    return ScenarioKind::ScaledLinearTrend;
  }
  if (s == "gptrend" || s == "gp" || s == "gp_trend") return ScenarioKind::GpTrend;
  throw std::invalid_argument("unknown scenario kind: " + name +
                              " (expected correct, scaled-linear, or gp)");
}

void validate(const ScenarioSpec& scenario) {
  if (scenario.p < 0) throw std::invalid_argument("ScenarioSpec: p must be nonnegative");
  if (scenario.kind != ScenarioKind::CorrectTrend && scenario.p != 0) {
    throw std::invalid_argument(
        "ScenarioSpec: misspecified-trend scenarios are fitted intercept-only (p = 0)");
  }
  if (scenario.kind == ScenarioKind::GpTrend) {
    if (!scenario.gp_params.has_value()) {
      throw std::invalid_argument("ScenarioSpec: GpTrend requires gp_params");
    }
    if (!(scenario.gp_params->first > 0.0 && scenario.gp_params->second > 0.0)) {
      throw std::invalid_argument("ScenarioSpec: gp_params must be positive");
    }
  }
  if (scenario.kind != ScenarioKind::CorrectTrend && scenario.beta.size() > 2) {
    throw std::invalid_argument(
        "ScenarioSpec: misspecified-trend scenarios use at most (beta0, beta1)");
  }
}

ScenarioSpec correct_trend(std::vector<double> beta, int p) {
  ScenarioSpec s;
  s.kind = ScenarioKind::CorrectTrend;
  s.beta = std::move(beta);
  s.p = p;
  validate(s);
  return s;
}

ScenarioSpec scaled_linear_trend(double beta0, double beta1) {
  ScenarioSpec s;
  s.kind = ScenarioKind::ScaledLinearTrend;
  s.beta = {beta0, beta1};
  s.p = 0;
  validate(s);
  return s;
}

ScenarioSpec gp_trend(double beta0, double beta1, double theta12, double theta13) {
  ScenarioSpec s;
  s.kind = ScenarioKind::GpTrend;
  s.beta = {beta0, beta1};
  s.gp_params = {theta12, theta13};
  s.p = 0;
  validate(s);
  return s;
}

Dataset make_dataset(MixedDomainGrid grid, std::vector<double> z,
                     std::vector<std::vector<double>> x,
                     std::optional<SimulationTruth> truth) {
  const std::size_t n = grid.n;
  if (z.size() != n) throw std::invalid_argument("make_dataset: z length != n");
  if (x.empty()) throw std::invalid_argument("make_dataset: design needs an intercept column");
  if (x.size() > n) throw std::invalid_argument("make_dataset: more coefficients than data");
  for (const auto& col : x) {
    if (col.size() != n) throw std::invalid_argument("make_dataset: design column length != n");
  }
  for (double v : x[0]) {
    if (v != 1.0) throw std::invalid_argument("make_dataset: first design column must be ones");
  }
  if (truth.has_value()) {
    if (truth->mu0.size() != n || truth->eta.size() != n || truth->eps.size() != n) {
      throw std::invalid_argument("make_dataset: truth vectors must have length n");
    }
  }

  // Full-column-rank check: smallest singular value at least 1e-10 of the
  // largest.
  const std::size_t k = x.size();
  Eigen::MatrixXd xm(n, k);
  for (std::size_t j = 0; j < k; ++j) {
    xm.col(j) = Eigen::Map<const Eigen::VectorXd>(x[j].data(), n);
  }
  Eigen::BDCSVD<Eigen::MatrixXd> svd(xm);
  const auto& sv = svd.singularValues();
  if (sv.size() == 0 || !(sv(sv.size() - 1) >= 1e-10 * sv(0))) {
    throw std::invalid_argument("make_dataset: design matrix is numerically rank deficient");
  }

  Dataset d;
  d.grid = grid;
  d.z = std::move(z);
  d.x = std::move(x);
  d.truth = std::move(truth);
  return d;
}

void write_dataset_csv(const std::string& path, const Dataset& dataset) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("write_dataset_csv: cannot open " + path);
  out << "s,z";
  for (std::size_t j = 1; j < dataset.x.size(); ++j) out << ",x" << j;
  out << "\n";
  for (std::size_t i = 0; i < dataset.n(); ++i) {
    out << fmt17(dataset.grid.site(i + 1)) << ',' << fmt17(dataset.z[i]);
    for (std::size_t j = 1; j < dataset.x.size(); ++j) out << ',' << fmt17(dataset.x[j][i]);
    out << "\n";
  }
  if (!out) throw std::runtime_error("write_dataset_csv: write failed for " + path);
}

namespace {

std::vector<double> parse_csv_row(const std::string& line, std::size_t expected,
                                  const std::string& path) {
  std::vector<double> row;
  row.reserve(expected);
  std::size_t pos = 0;
  while (pos <= line.size()) {
    const std::size_t comma = line.find(',', pos);
    const std::string cell =
        line.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
    try {
      std::size_t used = 0;
      row.push_back(std::stod(cell, &used));
      if (used != cell.size()) throw std::invalid_argument(cell);
    } catch (const std::exception&) {
      throw std::runtime_error("malformed CSV cell '" + cell + "' in " + path);
    }
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  if (row.size() != expected) {
    throw std::runtime_error("CSV row with " + std::to_string(row.size()) + " cells, expected " +
                             std::to_string(expected) + " in " + path);
  }
  return row;
}

}  // namespace

Dataset read_dataset_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("read_dataset_csv: cannot open " + path);
  std::string header;
  if (!std::getline(in, header)) throw std::runtime_error("read_dataset_csv: empty file " + path);
  if (!header.empty() && header.back() == '\r') header.pop_back();
  if (header.rfind("s,z", 0) != 0) {
    throw std::runtime_error("read_dataset_csv: expected header starting 's,z' in " + path);
  }
  const std::size_t n_cols = 1 + static_cast<std::size_t>(
                                     std::count(header.begin(), header.end(), ','));

  std::vector<double> sites, z;
  std::vector<std::vector<double>> extra(n_cols - 2);
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const std::vector<double> row = parse_csv_row(line, n_cols, path);
    sites.push_back(row[0]);
    z.push_back(row[1]);
    for (std::size_t j = 2; j < n_cols; ++j) extra[j - 2].push_back(row[j]);
  }
  const std::size_t n = sites.size();
  if (n == 0) throw std::runtime_error("read_dataset_csv: no data rows in " + path);

  // Recover (n, delta) from the spacing; the format stores sites, not delta.
  const double spacing = sites[0];
  if (!(spacing > 0.0)) throw std::runtime_error("read_dataset_csv: first site must be positive");
  double delta = 0.0;
  if (n > 1) {
    delta = 1.0 + std::log(spacing) / std::log(static_cast<double>(n));
    if (delta < 0.0 && delta > -1e-9) delta = 0.0;
  } else if (spacing != 1.0) {
    throw std::runtime_error("read_dataset_csv: single-row grid must have s = 1");
  }
  if (!(delta >= 0.0 && delta < 1.0)) {
    throw std::runtime_error("read_dataset_csv: sites are not a regular mixed-domain grid");
  }
  const double tol = 1e-12 * std::max(1.0, std::abs(sites[n - 1]));
  for (std::size_t i = 0; i < n; ++i) {
    if (std::abs(sites[i] - static_cast<double>(i + 1) * spacing) > tol) {
      throw std::runtime_error("read_dataset_csv: irregular site spacing in " + path);
    }
  }

  std::vector<std::vector<double>> x;
  x.emplace_back(n, 1.0);
  for (auto& col : extra) x.push_back(std::move(col));
  return make_dataset(make_grid(n, delta), std::move(z), std::move(x));
}

void write_truth_csv(const std::string& path, const SimulationTruth& truth) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("write_truth_csv: cannot open " + path);
  out << "s,mu0,eta,eps\n";
  for (std::size_t i = 0; i < truth.mu0.size(); ++i) {
    out << fmt17(truth.grid.site(i + 1)) << ',' << fmt17(truth.mu0[i]) << ','
        << fmt17(truth.eta[i]) << ',' << fmt17(truth.eps[i]) << "\n";
  }
  if (!out) throw std::runtime_error("write_truth_csv: write failed for " + path);
}

}  // namespace mixdom
