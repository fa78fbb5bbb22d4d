#include <doctest.h>

#include <cmath>
#include <vector>

#include "mixdom/rng.hpp"
#include "mixdom/simulate.hpp"

using namespace mixdom;

namespace {

struct Moments {
  double mean, var;
};

Moments moments(const std::vector<double>& v) {
  double s = 0.0;
  for (double x : v) s += x;
  const double mean = s / static_cast<double>(v.size());
  double ss = 0.0;
  for (double x : v) ss += (x - mean) * (x - mean);
  return {mean, ss / static_cast<double>(v.size() - 1)};
}

double correlation(const std::vector<double>& a, const std::vector<double>& b) {
  const auto ma = moments(a), mb = moments(b);
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] - ma.mean) * (b[i] - mb.mean);
  return s / (static_cast<double>(a.size() - 1) * std::sqrt(ma.var * mb.var));
}

}  // namespace

TEST_SUITE("simulation") {

TEST_CASE("stationary variance of the path start") {
  const ThetaParams theta0{1.0, 2.0, 0.5};  // marginal variance 4
  const auto grid = make_grid(1, 0.5);
  Rng rng(101);
  std::vector<double> first(100000);
  for (double& v : first) v = sample_ou(theta0, grid, rng)[0];
  const auto m = moments(first);
  CHECK(std::abs(m.mean) < 0.03);
  CHECK(m.var == doctest::Approx(4.0).epsilon(0.03));
}

TEST_CASE("lag-one autocorrelation matches the kernel") {
  const ThetaParams theta0{1.0, 1.0, 1.0};
  const auto grid = make_grid(2, 0.0);  // spacing 1/2
  Rng rng(202);
  std::vector<double> a(100000), b(100000);
  for (std::size_t r = 0; r < a.size(); ++r) {
    const auto eta = sample_ou(theta0, grid, rng);
    a[r] = eta[0];
    b[r] = eta[1];
  }
  CHECK(correlation(a, b) == doctest::Approx(std::exp(-0.5)).epsilon(0.02));
  // Both margins are stationary.
  CHECK(moments(a).var == doctest::Approx(1.0).epsilon(0.03));
  CHECK(moments(b).var == doctest::Approx(1.0).epsilon(0.03));
}

TEST_CASE("fast decay decorrelates neighboring sites") {
  const ThetaParams theta0{1.0, 16.0, 16.0};  // theta3 * spacing = 4
  const auto grid = make_grid(4, 0.0);
  Rng rng(303);
  std::vector<double> a(20000), b(20000);
  for (std::size_t r = 0; r < a.size(); ++r) {
    const auto eta = sample_ou(theta0, grid, rng);
    a[r] = eta[2];
    b[r] = eta[3];
  }
  CHECK(std::abs(correlation(a, b)) < 0.05);
}

TEST_CASE("observation is exactly trend plus path plus noise") {
  Rng rng(7);
  const Dataset ds = sample_dataset(scaled_linear_trend(1.0, 2.0), ThetaParams{0.5, 1.0, 1.5},
                                    make_grid(257, 0.3), rng);
  REQUIRE(ds.truth.has_value());
  for (std::size_t i = 0; i < ds.n(); ++i) {
    CHECK(ds.z[i] == ds.truth->mu0[i] + ds.truth->eta[i] + ds.truth->eps[i]);
  }
}

TEST_CASE("same seed reproduces the draw bitwise") {
  const auto scenario = gp_trend(0.5, 1.0, 1.0, 2.0);
  const ThetaParams theta0{1.0, 1.0, 1.0};
  const auto grid = make_grid(128, 0.5);
  Rng r1(55), r2(55);
  const Dataset a = sample_dataset(scenario, theta0, grid, r1);
  const Dataset b = sample_dataset(scenario, theta0, grid, r2);
  for (std::size_t i = 0; i < a.n(); ++i) {
    CHECK(a.z[i] == b.z[i]);
    CHECK(a.truth->mu0[i] == b.truth->mu0[i]);
  }
}

TEST_CASE("seeds separate replicates") {
  const ThetaParams theta0{1.0, 1.0, 1.0};
  const auto grid = make_grid(16, 0.5);
  Rng r1(1), r2(2);
  const Dataset a = sample_dataset(correct_trend({0.0, 1.0}, 1), theta0, grid, r1);
  const Dataset b = sample_dataset(correct_trend({0.0, 1.0}, 1), theta0, grid, r2);
  bool all_equal = true;
  for (std::size_t i = 0; i < a.n(); ++i) all_equal = all_equal && a.z[i] == b.z[i];
  CHECK_FALSE(all_equal);
}

TEST_CASE("random covariate path has the configured variance") {
  // Trend path is an independent OU draw with parameters (theta12, theta13);
  // with beta = (0, 1) the stored mean equals the path itself.
  const auto scenario = gp_trend(0.0, 1.0, 3.0, 1.5);  // path variance 2
  const ThetaParams theta0{1.0, 1.0, 1.0};
  const auto grid = make_grid(1, 0.5);
  std::vector<double> path(100000);
  for (std::size_t r = 0; r < path.size(); ++r) {
    Rng rng(40000 + r);
    path[r] = sample_dataset(scenario, theta0, grid, rng).truth->mu0[0];
  }
  const auto m = moments(path);
  CHECK(m.var == doctest::Approx(2.0).epsilon(0.03));
  CHECK(std::abs(m.mean) < 0.02);
}

TEST_CASE("covariate path and noise draws are decoupled") {
  // The trend path must come from a derived stream: with the same seed, the
  // noise realization is identical whether or not a covariate path was drawn.
  const ThetaParams theta0{1.0, 1.0, 1.0};
  const auto grid = make_grid(64, 0.5);
  Rng r1(9), r2(9);
  const Dataset with_path = sample_dataset(gp_trend(0.0, 1.0, 1.0, 1.0), theta0, grid, r1);
  const Dataset without = sample_dataset(scaled_linear_trend(0.0, 1.0), theta0, grid, r2);
  for (std::size_t i = 0; i < grid.n; ++i) {
    CHECK(with_path.truth->eta[i] == without.truth->eta[i]);
    CHECK(with_path.truth->eps[i] == without.truth->eps[i]);
  }
}

TEST_CASE("scaled linear trend endpoints are exact") {
  Rng rng(1);
  const Dataset ds = sample_dataset(scaled_linear_trend(2.0, 3.0), ThetaParams{1, 1, 1},
                                    make_grid(16, 0.5), rng);
  // Sites are i * 16^-1/2; the scaled regressor at the last site is exactly 1.
  CHECK(ds.truth->mu0[15] == 5.0);
  CHECK(ds.truth->mu0[0] == 2.0 + 3.0 * 0.25 * 0.25);
}

TEST_CASE("correct trend uses scaled monomials in the design") {
  Rng rng(2);
  const Dataset ds = sample_dataset(correct_trend({1.0, 2.0, -1.0}, 2), ThetaParams{1, 1, 1},
                                    make_grid(16, 0.5), rng);
  REQUIRE(ds.n_coef() == 3);
  // Columns are ((n^-delta s)^j); at the last site the scaled coordinate is 1.
  CHECK(ds.x[1][15] == 1.0);
  CHECK(ds.x[2][15] == 1.0);
  CHECK(ds.x[1][7] == doctest::Approx(0.5));
  CHECK(ds.x[2][7] == doctest::Approx(0.25));
  CHECK(ds.truth->mu0[15] == doctest::Approx(1.0 + 2.0 - 1.0));
}

TEST_CASE("noiseless limit reproduces the trend") {
  Rng rng(3);
  const Dataset ds = sample_dataset(scaled_linear_trend(0.5, 1.0),
                                    ThetaParams{1e-12, 1e-12, 1.0}, make_grid(128, 0.5), rng);
  for (std::size_t i = 0; i < ds.n(); ++i) {
    CHECK(std::abs(ds.z[i] - ds.truth->mu0[i]) < 1e-4);
  }
}

TEST_CASE("adjacent replicate streams look independent") {
  // Path means from consecutive derived seeds should be uncorrelated.
  RngSpec spec;
  spec.base_seed = 77;
  const ThetaParams theta0{1.0, 1.0, 1.0};
  const auto grid = make_grid(256, 0.5);
  const int reps = 1000;
  std::vector<double> stat(reps);
  for (int r = 0; r < reps; ++r) {
    Rng rng(spec.replicate_seed(0, r));
    const auto eta = sample_ou(theta0, grid, rng);
    double s = 0.0;
    for (double v : eta) s += v;
    stat[r] = s / static_cast<double>(grid.n);
  }
  std::vector<double> lead(stat.begin(), stat.end() - 1);
  std::vector<double> lag(stat.begin() + 1, stat.end());
  CHECK(std::abs(correlation(lead, lag)) < 4.0 / std::sqrt(static_cast<double>(reps)));
}

TEST_CASE("gp scenario requires covariate parameters") {
  ScenarioSpec bad;
  bad.kind = ScenarioKind::GpTrend;
  bad.p = 0;
  Rng rng(1);
  CHECK_THROWS_AS(sample_dataset(bad, ThetaParams{1, 1, 1}, make_grid(8, 0.5), rng),
                  std::invalid_argument);
}

}  // TEST_SUITE
