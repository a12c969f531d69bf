#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "symspace/grid.hpp"

namespace symspace {

// Shared configuration for the two PDE experiments. Ladders are geometric
// with ratio 1/2 and the end time must be an exact multiple of every
// macro-step in play; configurations violating that are rejected.
struct ExperimentConfig {
  int grid_n = 64;        // altdir resolution
  double grid_length = 5.0;
  double delta = 0.1;     // stiff spacing on [-1,1]
  double nonlin = 2e-3;   // altdir quadratic coefficient
  double h = 1e-2;        // fixed step (altdir) / ladder top (both)
  int rungs = 1;          // 1 = fixed-step altdir mode
  int levels = 3;         // Thue-Morse levels 0..levels
  double t_end = 0.0;     // 0 = per-experiment default
  int reference_refine = 64;  // h_ref = h_min / reference_refine
};

struct ResultRow {
  std::string scheme;
  int level = 0;
  double h = 0.0;
  double global_error = 0.0;
  double symmetry_error = 0.0;
  bool diverged = false;
};

// u_t = u_x + u_y + nonlin u^2 with alternating directions driven by the
// Thue-Morse pattern. rungs == 1: fixed-step forward-Euler pairs at cfg.h,
// one row per level. rungs > 1: Heun-based symmetric pairs on the ladder
// h, h/2, ..., one row per (level, rung).
std::vector<ResultRow> run_altdir_experiment(const ExperimentConfig& cfg);

// u_t = Laplacian u - u(u-1)^2: base method, Yoshida(p=1) and the
// positive-step symmetrization(p=1) on the ladder 3*h0 * [1, 1/2, ..,
// 1/2^{rungs-1}], h0 the bisected stability edge of the base method.
std::vector<ResultRow> run_stiff_experiment(const ExperimentConfig& cfg);

// Largest stable step of the base method on [0, t_end], located by bisection
// on the divergence predicate (field blow-up past 1e6, non-finite values, or
// a failed implicit solve).
double find_stable_h0(const Grid& g, double t_end);

void write_experiment_csv(std::ostream& os, const std::vector<ResultRow>& rows);

// ---- composition experiments on small ODE problems ----------------------

struct ComposeConfig {
  std::string scheme;   // scovel | tm | yoshida | selfadjoint
  std::string problem;  // harmonic | linear-sym | so3
  int levels = 3;
  double hmax = 0.05;
  int rungs = 6;
};

struct ComposeRow {
  std::string scheme;
  int level = 0;
  double h = 0.0;
  double global_error = 0.0;
  double symmetry_error = 0.0;
  double reversing_error = 0.0;
  long steps = 0;
};

std::vector<ComposeRow> run_compose(const ComposeConfig& cfg);

void write_compose_csv(std::ostream& os, const std::vector<ComposeRow>& rows);

}  // namespace symspace
