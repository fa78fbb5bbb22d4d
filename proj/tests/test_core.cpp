#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <stdexcept>

#include "mixdom/dataset.hpp"
#include "mixdom/grid.hpp"
#include "mixdom/params.hpp"
#include "mixdom/rng.hpp"
#include "mixdom/simulate.hpp"

using namespace mixdom;

TEST_SUITE("core") {

TEST_CASE("grid geometry at the two domain extremes") {
  // delta = 0: unit domain, spacing 1/n.
  const auto g0 = make_grid(4, 0.0);
  CHECK(g0.spacing() == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(g0.site(1) == doctest::Approx(0.25));
  CHECK(g0.site(4) == doctest::Approx(1.0));
  CHECK(g0.domain_length() == doctest::Approx(1.0));

  // delta = 0.5: domain sqrt(n), spacing n^-1/2.
  const auto g1 = make_grid(16, 0.5);
  CHECK(g1.spacing() == doctest::Approx(0.25));
  CHECK(g1.site(16) == doctest::Approx(4.0));
  CHECK(g1.domain_length() == doctest::Approx(4.0));

  // n = 1 is a single site at spacing distance from the origin.
  const auto g2 = make_grid(1, 0.9);
  CHECK(g2.spacing() == doctest::Approx(1.0));
  CHECK(g2.site(1) == doctest::Approx(1.0));
}

TEST_CASE("grid spacing shrinks and domain grows along a ladder") {
  double prev_spacing = 1e9, prev_len = 0.0;
  for (std::size_t n : {16, 64, 256, 1024}) {
    const auto g = make_grid(n, 0.4);
    CHECK(g.spacing() < prev_spacing);
    CHECK(g.domain_length() > prev_len);
    prev_spacing = g.spacing();
    prev_len = g.domain_length();
  }
}

TEST_CASE("grid validation") {
  CHECK_THROWS_AS(make_grid(0, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(make_grid(8, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(make_grid(8, -0.1), std::invalid_argument);
  CHECK_NOTHROW(make_grid(8, 0.0));
  CHECK_NOTHROW(make_grid(8, 0.999));
}

TEST_CASE("parameter validation rejects nonpositive and nonfinite values") {
  CHECK_NOTHROW(validate(ThetaParams{1e-3, 1.0, 1e3}));
  CHECK_THROWS_AS(validate(ThetaParams{0.0, 1.0, 1.0}), std::invalid_argument);
  CHECK_THROWS_AS(validate(ThetaParams{1.0, -2.0, 1.0}), std::invalid_argument);
  CHECK_THROWS_AS(validate(ThetaParams{1.0, 1.0, std::nan("")}), std::invalid_argument);
  CHECK_THROWS_AS(validate(ThetaParams{1.0, HUGE_VAL, 1.0}), std::invalid_argument);
}

TEST_CASE("theta indexing and array view") {
  const ThetaParams t{0.5, 2.0, 3.0};
  CHECK(t[0] == 0.5);
  CHECK(t[1] == 2.0);
  CHECK(t[2] == 3.0);
  CHECK_THROWS_AS(t[3], std::out_of_range);
  const auto a = t.as_array();
  CHECK(a[0] == 0.5);
  CHECK(a[2] == 3.0);
  CHECK(t.ou_variance() == doctest::Approx(2.0 / 3.0));
}

TEST_CASE("box validation") {
  CHECK_NOTHROW(validate(default_box()));
  ParamBox bad{{1.0, 1.0, 1.0}, {2.0, 0.5, 2.0}};
  CHECK_THROWS_AS(validate(bad), std::invalid_argument);
  ParamBox nonpos{{0.0, 1.0, 1.0}, {2.0, 2.0, 2.0}};
  CHECK_THROWS_AS(validate(nonpos), std::invalid_argument);
}

TEST_CASE("scenario names round-trip and accept aliases") {
  for (auto kind : {ScenarioKind::CorrectTrend, ScenarioKind::ScaledLinearTrend,
                    ScenarioKind::GpTrend}) {
    CHECK(scenario_kind_from_string(to_string(kind)) == kind);
  }
  CHECK(scenario_kind_from_string("correct") == ScenarioKind::CorrectTrend);
  CHECK(scenario_kind_from_string("scaled-linear") == ScenarioKind::ScaledLinearTrend);
  CHECK(scenario_kind_from_string("gp") == ScenarioKind::GpTrend);
  CHECK_THROWS_AS(scenario_kind_from_string("fourier"), std::invalid_argument);
}

TEST_CASE("scenario invariants") {
  CHECK_NOTHROW(validate(correct_trend({0.0, 1.0}, 1)));
  CHECK_NOTHROW(validate(scaled_linear_trend(0.0, 1.0)));
  CHECK_NOTHROW(validate(gp_trend(0.0, 1.0, 1.0, 1.0)));

  // Misspecified scenarios are fitted intercept-only.
  ScenarioSpec s = scaled_linear_trend(0.0, 1.0);
  s.p = 1;
  CHECK_THROWS_AS(validate(s), std::invalid_argument);

  ScenarioSpec g = gp_trend(0.0, 1.0, 1.0, 1.0);
  g.gp_params.reset();
  CHECK_THROWS_AS(validate(g), std::invalid_argument);
}

TEST_CASE("dataset construction rejects rank-deficient designs") {
  const auto grid = make_grid(8, 0.0);
  std::vector<double> z(8, 0.0);
  std::vector<std::vector<double>> x;
  x.emplace_back(8, 1.0);
  x.emplace_back(8, 2.0);  // collinear with the intercept
  CHECK_THROWS_AS(make_dataset(grid, z, x), std::invalid_argument);

  std::vector<std::vector<double>> ok;
  ok.emplace_back(8, 1.0);
  std::vector<double> ramp(8);
  for (int i = 0; i < 8; ++i) ramp[i] = i;
  ok.push_back(ramp);
  CHECK_NOTHROW(make_dataset(grid, z, ok));
}

TEST_CASE("dataset CSV round-trip preserves values and grid geometry") {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "mixdom_core_test";
  fs::create_directories(dir);
  const std::string path = (dir / "roundtrip.csv").string();

  Rng rng(99);
  const auto grid = make_grid(64, 0.5);
  const Dataset ds =
      sample_dataset(correct_trend({0.5, -1.25}, 1), ThetaParams{0.7, 1.3, 0.9}, grid, rng);
  write_dataset_csv(path, ds);

  const Dataset back = read_dataset_csv(path);
  REQUIRE(back.n() == ds.n());
  REQUIRE(back.n_coef() == ds.n_coef());
  CHECK(back.grid.n == 64);
  CHECK(back.grid.delta == doctest::Approx(0.5).epsilon(1e-12));
  for (std::size_t i = 0; i < ds.n(); ++i) {
    CHECK(back.z[i] == ds.z[i]);  // 17 significant digits round-trip exactly
    CHECK(back.x[1][i] == ds.x[1][i]);
  }
  for (std::size_t i = 0; i < back.n(); ++i) CHECK(back.x[0][i] == 1.0);
  fs::remove(path);
}

TEST_CASE("truth sidecar holds the exact z decomposition") {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "mixdom_core_test";
  fs::create_directories(dir);
  const std::string path = (dir / "truth.csv").string();

  Rng rng(3);
  const Dataset ds = sample_dataset(scaled_linear_trend(1.0, 2.0), ThetaParams{1.0, 1.0, 1.0},
                                    make_grid(32, 0.25), rng);
  REQUIRE(ds.truth.has_value());
  for (std::size_t i = 0; i < ds.n(); ++i) {
    CHECK(ds.z[i] == ds.truth->mu0[i] + ds.truth->eta[i] + ds.truth->eps[i]);
  }
  CHECK_NOTHROW(write_truth_csv(path, *ds.truth));
  // Header + one row per site.
  std::FILE* f = std::fopen(path.c_str(), "r");
  REQUIRE(f != nullptr);
  int lines = 0, c;
  while ((c = std::fgetc(f)) != EOF) lines += (c == '\n');
  std::fclose(f);
  CHECK(lines == 33);
  fs::remove(path);
}

TEST_CASE("csv reader rejects irregular grids") {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "mixdom_core_test";
  fs::create_directories(dir);
  const std::string path = (dir / "irregular.csv").string();
  std::FILE* f = std::fopen(path.c_str(), "w");
  REQUIRE(f != nullptr);
  std::fputs("s,z\n0.5,1.0\n1.0,2.0\n1.7,3.0\n", f);
  std::fclose(f);
  CHECK_THROWS_AS(read_dataset_csv(path), std::runtime_error);
  fs::remove(path);
}

TEST_CASE("rng streams are reproducible and key-separated") {
  Rng a(42), b(42), c(43);
  CHECK(a.next_u64() == b.next_u64());
  CHECK(a.next_normal() == b.next_normal());
  CHECK(a.next_u64() != c.next_u64());

  Rng base(7);
  Rng d1 = base.derive(1), d2 = base.derive(2);
  CHECK(d1.next_u64() != d2.next_u64());

  // Unit draws live in [0, 1).
  Rng u(5);
  for (int i = 0; i < 1000; ++i) {
    const double x = u.next_unit();
    CHECK(x >= 0.0);
    CHECK(x < 1.0);
  }
}

TEST_CASE("replicate seeds separate scenarios and replicates") {
  RngSpec spec;
  spec.base_seed = 11;
  CHECK(spec.replicate_seed(0, 0) != spec.replicate_seed(0, 1));
  CHECK(spec.replicate_seed(0, 0) != spec.replicate_seed(1, 0));
  RngSpec other;
  other.base_seed = 12;
  CHECK(spec.replicate_seed(0, 0) != other.replicate_seed(0, 0));
  // Same inputs, same seed.
  CHECK(spec.replicate_seed(2, 5) == spec.replicate_seed(2, 5));
}

}  // TEST_SUITE
