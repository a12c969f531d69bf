#include <doctest.h>

#include <cmath>
#include <sstream>

#include "symspace/experiments.hpp"
#include "symspace/matfun.hpp"

using namespace symspace;

TEST_CASE("second-difference stencil annihilates constants exactly") {
  Grid g{16, 1.0};
  State ones(16 * 16, 1.0);
  State out = d2_apply(g, 0, ones);
  for (double v : out) CHECK(v == 0.0);
  out = d2_apply(g, 1, ones);
  for (double v : out) CHECK(v == 0.0);
}

TEST_CASE("discrete operators intertwine with grid transposition exactly") {
  Grid g{12, 1.0};
  State u = gaussian_field(g, 3.0);
  u[5 * 12 + 2] += 0.37;  // break the symmetry so the check is non-trivial
  State lhs = transpose_field(12, d2_apply(g, 0, u));
  State rhs = d2_apply(g, 1, transpose_field(12, u));
  CHECK(inf_dist(lhs, rhs) == 0.0);
  lhs = transpose_field(12, d1_apply(g, 0, u));
  rhs = d1_apply(g, 1, transpose_field(12, u));
  CHECK(inf_dist(lhs, rhs) == 0.0);
}

TEST_CASE("symmetric data evolved by the full unsplit operator stays symmetric") {
  Grid g{16, 5.0};
  State u = gaussian_field(g, 1.0);
  // forward Euler on the full field D_x u + D_y u + f(u): transpose-invariant
  for (int step = 0; step < 50; ++step) {
    State dx = d1_apply(g, 0, u);
    State dy = d1_apply(g, 1, u);
    for (size_t i = 0; i < u.size(); ++i) u[i] += 0.01 * (dx[i] + dy[i] + 2e-3 * u[i] * u[i]);
  }
  CHECK(transpose_defect(16, u) < 1e-12);
}

TEST_CASE("one alternating pair breaks the symmetry at second order") {
  Grid g{16, 5.0};
  State u0 = gaussian_field(g, 1.0);
  Flow pair = advection_pair_fe(g, 2e-3);
  auto defect_after_one_step = [&](double h) {
    return transpose_defect(16, pair.step(h, u0));
  };
  double d1 = defect_after_one_step(0.02);
  double d2 = defect_after_one_step(0.01);
  CHECK(d2 > 0.0);
  CHECK(std::log2(d1 / d2) == doctest::Approx(2.0).epsilon(0.15));
}

TEST_CASE("stiff base step is selfadjoint: h then -h returns the field") {
  Grid g{10, 1.0};  // delta = 0.2 keeps the test fast
  State u = gaussian_field(g, 9.0);
  Flow base = stiff_base_flow(g);
  State fwd = base.step(0.05, u);
  State back = base.step(-0.05, fwd);
  CHECK(inf_dist(back, u) < 1e-10);
}

TEST_CASE("stiff base step blow-up raises the diverged signal") {
  Grid g{10, 1.0};
  State u = gaussian_field(g, 9.0);
  Flow base = stiff_base_flow(g);
  CHECK_THROWS_AS(
      {
        State v = u;
        for (int i = 0; i < 40; ++i) v = base.step(4.0, v);
      },
      diverged_error);
}

TEST_CASE("altdir experiment: row counts, symmetry decay across levels") {
  ExperimentConfig cfg;
  cfg.grid_n = 16;
  cfg.h = 0.02;
  cfg.levels = 2;
  cfg.rungs = 1;
  cfg.t_end = 0.96;
  auto rows = run_altdir_experiment(cfg);
  REQUIRE(rows.size() == 3);  // levels 0..2, one rung
  for (const auto& r : rows) CHECK_FALSE(r.diverged);
  CHECK(rows[0].symmetry_error > rows[1].symmetry_error);
  CHECK(rows[1].symmetry_error > rows[2].symmetry_error);
}

TEST_CASE("altdir experiment rejects an end time off the macro grid") {
  ExperimentConfig cfg;
  cfg.grid_n = 16;
  cfg.h = 0.02;
  cfg.levels = 3;
  cfg.rungs = 1;
  cfg.t_end = 0.9;  // 45 steps, not divisible by 8
  CHECK_THROWS_AS(run_altdir_experiment(cfg), error);
}

TEST_CASE("reference convergence guard: halving the reference step moves errors < 1%") {
  ExperimentConfig cfg;
  cfg.grid_n = 16;
  cfg.h = 0.06;
  cfg.levels = 1;
  cfg.rungs = 2;
  cfg.t_end = 0.96;
  cfg.reference_refine = 64;
  auto rows64 = run_altdir_experiment(cfg);
  cfg.reference_refine = 128;
  auto rows128 = run_altdir_experiment(cfg);
  REQUIRE(rows64.size() == rows128.size());
  for (size_t i = 0; i < rows64.size(); ++i) {
    double rel = std::fabs(rows64[i].global_error - rows128[i].global_error) /
                 rows64[i].global_error;
    CHECK(rel < 0.01);
  }
}

TEST_CASE("experiment CSV: header, 17-digit floats, diverged sentinel rows") {
  std::vector<ResultRow> rows;
  rows.push_back({"base", 0, 0.1, 0.25, 1e-9, false});
  rows.push_back({"yoshida", 1, 0.1, 0.0, 0.0, true});
  std::ostringstream os;
  write_experiment_csv(os, rows);
  std::string text = os.str();
  CHECK(text.find("scheme,level,h,global_error,symmetry_error,status\n") == 0);
  CHECK(text.find("base,0,0.10000000000000001,0.25,1.0000000000000001e-09,ok\n") !=
        std::string::npos);
  CHECK(text.find("yoshida,1,0.10000000000000001,,,diverged\n") != std::string::npos);
}

TEST_CASE("experiment CSV output is byte-stable across identical runs") {
  ExperimentConfig cfg;
  cfg.grid_n = 16;
  cfg.h = 0.02;
  cfg.levels = 1;
  cfg.rungs = 1;
  cfg.t_end = 0.96;
  std::ostringstream a, b;
  write_experiment_csv(a, run_altdir_experiment(cfg));
  write_experiment_csv(b, run_altdir_experiment(cfg));
  CHECK(a.str() == b.str());
}

TEST_CASE("compose runner emits the pinned header and row grid") {
  ComposeConfig cfg;
  cfg.scheme = "tm";
  cfg.problem = "linear-sym";
  cfg.levels = 2;
  cfg.hmax = 0.05;
  cfg.rungs = 4;
  auto rows = run_compose(cfg);
  REQUIRE(rows.size() == 3u * 4u);
  std::ostringstream os;
  write_compose_csv(os, rows);
  CHECK(os.str().find("scheme,level,h,global_error,symmetry_error,reversing_error,steps\n") == 0);
  CHECK_THROWS_AS(run_compose(ComposeConfig{"nonsense", "harmonic", 1, 0.05, 4}), error);
  CHECK_THROWS_AS(run_compose(ComposeConfig{"tm", "nonsense", 1, 0.05, 4}), error);
}

TEST_CASE("stiff reference guard: halving the reference step moves errors < 1%") {
  ExperimentConfig cfg;
  cfg.delta = 0.2;
  cfg.rungs = 3;
  cfg.t_end = 0.5;
  cfg.reference_refine = 64;  // the default refinement must satisfy the guard
  auto rows64 = run_stiff_experiment(cfg);
  cfg.reference_refine = 128;
  auto rows128 = run_stiff_experiment(cfg);
  REQUIRE(rows64.size() == rows128.size());
  for (size_t i = 0; i < rows64.size(); ++i) {
    if (rows64[i].diverged) continue;
    double rel = std::fabs(rows64[i].global_error - rows128[i].global_error) /
                 rows64[i].global_error;
    CHECK(rel < 0.01);
  }
}

TEST_CASE("stiff experiment on a coarse grid: schemes, statuses, row count") {
  ExperimentConfig cfg;
  cfg.delta = 0.2;  // 10x10 grid keeps this a unit test
  cfg.rungs = 4;
  cfg.t_end = 0.5;
  cfg.reference_refine = 16;
  auto rows = run_stiff_experiment(cfg);
  REQUIRE(rows.size() == 3u * 4u);
  int diverged_selfadjoint = 0;
  for (const auto& r : rows) {
    if (r.scheme == "selfadjoint" && r.diverged) ++diverged_selfadjoint;
  }
  CHECK(diverged_selfadjoint == 0);
  // ladder is geometric with ratio 1/2
  for (int i = 1; i < 4; ++i)
    CHECK(rows[i - 1].h == doctest::Approx(2.0 * rows[i].h).epsilon(1e-12));
}
