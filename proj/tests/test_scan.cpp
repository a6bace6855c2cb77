#include <doctest.h>

#include <atomic>
#include <cmath>
#include <cstdlib>
#include <stdexcept>

#include "ratdyn/errors.hpp"
#include "ratdyn/parallel.hpp"
#include "ratdyn/random.hpp"
#include "ratdyn/reference_data.hpp"
#include "ratdyn/scan.hpp"

using namespace ratdyn;

TEST_CASE("parallel_for visits each index once") {
  for (unsigned workers : {1u, 2u, 4u, 7u}) {
    std::vector<std::atomic<int>> hits(1000);
    parallel_for(hits.size(), [&](std::size_t i) { hits[i]++; }, workers);
    for (auto& h : hits) CHECK(h.load() == 1);
  }
  CHECK_THROWS_AS(parallel_for(10, [](std::size_t i) {
                    if (i == 3) throw std::runtime_error("boom");
                  }, 3),
                  std::runtime_error);
}

TEST_CASE("RATDYN_THREADS caps the worker count") {
  setenv("RATDYN_THREADS", "1", 1);
  CHECK(worker_count() == 1u);
  setenv("RATDYN_THREADS", "not-a-number", 1);
  CHECK(worker_count() >= 1u);
  unsetenv("RATDYN_THREADS");
}

TEST_CASE("seeded streams") {
  Rng a(42), b(42);
  for (int i = 0; i < 100; ++i) CHECK(uniform01(a) == uniform01(b));
  Rng r(1);
  for (int i = 0; i < 1000; ++i) {
    CHECK(std::abs(uniform_disk(r, 2.0)) < 2.0);
    Complex z = uniform_box(r, 0.5);
    CHECK(std::abs(z.real()) <= 0.5);
    CHECK(std::abs(z.imag()) <= 0.5);
  }
}

TEST_CASE("grid geometry") {
  ScanGrid g{{1, -1}, 2.0, 5, GridTarget::alpha_plane};
  CHECK(g.cell(0, 0) == Complex{-1, 1});
  CHECK(g.cell(4, 4) == Complex{3, -3});
  CHECK(g.cell(2, 2) == Complex{1, -1});
  ScanGrid bad = g;
  bad.resolution = 1;
  CHECK_THROWS_AS(bad.validate(), InvalidArgument);
  bad = g;
  bad.half_width = 0;
  CHECK_THROWS_AS(bad.validate(), InvalidArgument);
}

TEST_CASE("basin raster") {
  Params p{{0.78287, 0.69378}, {0.019604, 2.5296}};
  ScanGrid g{{0.5, 0}, 0.3, 6, GridTarget::initial_conditions};
  ToleranceConfig cfg;
  cfg.max_iters = 4000;
  BasinRaster r = basin_raster(p, g, cfg, {});
  REQUIRE(r.labels.size() == 36u);
  CHECK(std::count(r.labels.begin(), r.labels.end(), OrbitLabel::known_two_cycle) > 0);

  BasinRaster again = basin_raster(p, g, cfg, {});
  CHECK(again.labels == r.labels);

  SUBCASE("parameter plane") {
    ScanGrid pg{{0.78287, 0.69378}, 0.01, 3, GridTarget::alpha_plane};
    BasinRaster pr = basin_raster(p, pg, cfg, {});
    CHECK(pr.labels.size() == 9u);
  }
}

TEST_CASE("objective values and names") {
  Params p{{-0.82781, 0.224354}, {0.492467, -0.333602}};
  CHECK(evaluate_objective(Objective::stability_margin_z1, p) == doctest::Approx(1.66614).epsilon(1e-4));
  CHECK(objective_name(Objective::saddle_margin) == "saddle_margin");
}

TEST_CASE("extremum search is seeded and stays in the domain") {
  SearchDomain d{1.0, 1.0};
  ExtremumResult a = find_extremum(Objective::stability_margin_z1, d, 2000, 5);
  ExtremumResult b = find_extremum(Objective::stability_margin_z1, d, 2000, 5);
  CHECK(a.best_value == b.best_value);
  CHECK(a.best_params == b.best_params);
  CHECK(std::abs(a.best_params.alpha) < 1.0);
  CHECK(std::abs(a.best_params.beta) < 1.0);
  CHECK(a.evaluations <= 2000);
  CHECK(a.best_value <= a.best_random_start);
  CHECK(evaluate_objective(Objective::stability_margin_z1, a.best_params) == a.best_value);

  ExtremumResult s = find_extremum(Objective::saddle_margin, {10.0, 10.0}, 2000, 5);
  CHECK(s.best_value >= s.best_random_start);

  CHECK_THROWS_AS(find_extremum(Objective::saddle_margin, d, 99, 0), InvalidArgument);
  CHECK_THROWS_AS(find_extremum(Objective::saddle_margin, {0.0, 1.0}, 1000, 0), InvalidArgument);
}

TEST_CASE("condition check") {
  ConditionCheck c = condition_check({{0.530797553008973, 0.779167230102011}, {4.670053421145915, 1.299062084737301}});
  CHECK(c.beta_gt);
  CHECK(std::abs(c.one_plus_4alpha_modulus - 4.412249115813187) < 1e-9);
  CHECK(std::abs(c.beta_modulus - 4.847366424808288) < 1e-9);
}

TEST_CASE("period harness") {
  ToleranceConfig cfg;
  cfg.max_iters = 3000;
  PeriodHarnessReport a = conjecture_p3_harness(40, 2.0, cfg, 3);
  PeriodHarnessReport b = conjecture_p3_harness(40, 2.0, cfg, 3);
  long total = 0;
  for (const auto& [name, n] : a.outcome_counts) total += n;
  CHECK(total == 40);
  CHECK(a.outcome_counts == b.outcome_counts);
  CHECK(a.period_counts == b.period_counts);
  for (const auto& s : a.offending) CHECK(s.period >= 3);
  CHECK_THROWS_AS(conjecture_p3_harness(0, 2.0, cfg, 3), InvalidArgument);
}

TEST_CASE("chaos harness bookkeeping") {
  std::vector<Params> rows;
  for (const auto& row : chaotic_table()) rows.push_back(row.params);
  rows.resize(3);
  ChaosHarnessReport r = conjecture_chaos_harness(rows, {}, 1, 2000);
  CHECK(r.samples.size() == 3u);
  long cells = r.table[0][0] + r.table[0][1] + r.table[1][0] + r.table[1][1];
  CHECK(cells + r.died == 3);
  for (const auto& s : r.violations) {
    CHECK(s.chaotic);
    CHECK_FALSE(s.condition.beta_modulus < s.condition.one_plus_4alpha_modulus);
  }
}
