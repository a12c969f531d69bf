#include "symspace/experiments.hpp"

#include <cmath>
#include <numeric>
#include <ostream>

#include "symspace/matfun.hpp"

namespace symspace {

namespace {

long checked_steps(double t_end, double h, const char* who) {
  double raw = t_end / h;
  long n = std::lround(raw);
  if (n <= 0 || std::fabs(raw - static_cast<double>(n)) > 1e-9 * std::max(1.0, raw))
    throw error(std::string(who) + ": end time is not an exact multiple of the step size");
  return n;
}

// Advances time_units * h of model time; time_units must land on a
// macro-step boundary.
State evolve(const Flow& flow, double h, long time_units, const State& u0, const char* who) {
  if (time_units % flow.h_units_per_call != 0)
    throw error(std::string(who) + ": end time is not a multiple of the macro-step");
  State u = u0;
  long calls = time_units / flow.h_units_per_call;
  for (long i = 0; i < calls; ++i) u = flow.step(h, u);
  return u;
}

}  // namespace

std::vector<ResultRow> run_altdir_experiment(const ExperimentConfig& cfg) {
  if (cfg.levels < 0 || cfg.levels > 12) throw error("run_altdir_experiment: bad level count");
  Grid g{cfg.grid_n, cfg.grid_length};
  const double t_end = cfg.t_end > 0.0 ? cfg.t_end : 0.96;
  const bool ladder_mode = cfg.rungs > 1;
  const long steps0 = checked_steps(t_end, cfg.h, "run_altdir_experiment");
  if (steps0 % (1L << cfg.levels) != 0)
    throw error(
        "run_altdir_experiment: step count at the top rung must be divisible by 2^levels");

  const State u0 = gaussian_field(g, 1.0);
  const InvolutiveStateMap tmap = transpose_map(g.n);
  const Flow base = ladder_mode ? advection_pair_heun(g, cfg.nonlin)
                                : advection_pair_fe(g, cfg.nonlin);

  const int rungs = ladder_mode ? cfg.rungs : 1;
  const double h_min = cfg.h / std::ldexp(1.0, rungs - 1);
  const double h_ref = h_min / cfg.reference_refine;
  const State u_ref =
      evolve(base, h_ref, checked_steps(t_end, h_ref, "run_altdir_experiment[ref]"), u0,
             "run_altdir_experiment[ref]");

  std::vector<ResultRow> rows;
  for (int level = 0; level <= cfg.levels; ++level) {
    Flow composed = thue_morse(base, tmap, level);
    for (int r = 0; r < rungs; ++r) {
      double h = cfg.h / std::ldexp(1.0, r);
      long steps = steps0 << r;
      ResultRow row{"tm", level, h, 0.0, 0.0, false};
      try {
        State u = evolve(composed, h, steps, u0, "run_altdir_experiment");
        row.global_error = inf_dist(u, u_ref);
        row.symmetry_error = transpose_defect(g.n, u);
      } catch (const diverged_error&) {
        row.diverged = true;
      } catch (const convergence_error&) {
        row.diverged = true;
      }
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

double find_stable_h0(const Grid& g, double t_end) {
  Flow base = stiff_base_flow(g);
  const State u0 = gaussian_field(g, 9.0);
  auto stable = [&](double h) {
    long n = static_cast<long>(std::ceil(t_end / h - 1e-12));
    State u = u0;
    try {
      for (long i = 0; i < n; ++i) u = base.step(h, u);
    } catch (const diverged_error&) {
      return false;
    } catch (const convergence_error&) {
      return false;
    }
    return true;
  };
  double lo = 1e-3;
  int guard = 0;
  while (!stable(lo)) {
    lo *= 0.5;
    if (++guard > 24) throw error("find_stable_h0: no stable step size found");
  }
  double hi = 2.0 * lo;
  guard = 0;
  while (stable(hi)) {
    lo = hi;
    hi *= 2.0;
    if (++guard > 40) throw error("find_stable_h0: base method never diverged in the bracket");
  }
  while (hi / lo > 1.01) {
    double mid = std::sqrt(lo * hi);
    if (stable(mid))
      lo = mid;
    else
      hi = mid;
  }
  return lo;
}

std::vector<ResultRow> run_stiff_experiment(const ExperimentConfig& cfg) {
  const int n = static_cast<int>(std::lround(2.0 / cfg.delta));
  if (std::fabs(n * cfg.delta - 2.0) > 1e-9)
    throw error("run_stiff_experiment: delta must divide the domain [-1,1] exactly");
  Grid g{n, 1.0};
  const double t_end = cfg.t_end > 0.0 ? cfg.t_end : 1.0;
  const int rungs = cfg.rungs > 1 ? cfg.rungs : 7;

  const State u0 = gaussian_field(g, 9.0);
  const InvolutiveStateMap tmap = transpose_map(g.n);
  const Flow base = stiff_base_flow(g);

  const double h0 = find_stable_h0(g, t_end);
  // snap the ladder top to an exact divisor of t_end at or below 3 h0
  const long m0 = static_cast<long>(std::ceil(t_end / (3.0 * h0) - 1e-12));
  const double h_top = t_end / static_cast<double>(m0);

  const double h_min = h_top / std::ldexp(1.0, rungs - 1);
  const double h_ref = h_min / cfg.reference_refine;
  const long ref_steps = (m0 << (rungs - 1)) * cfg.reference_refine;
  const State u_ref = evolve(base, h_ref, ref_steps, u0, "run_stiff_experiment[ref]");

  struct SchemeEntry {
    std::string name;
    int level;
    Flow flow;
  };
  std::vector<SchemeEntry> schemes;
  schemes.push_back({"base", 0, base});
  schemes.push_back({"yoshida", 1, yoshida(base, 1)});
  schemes.push_back({"selfadjoint", 1, symmetrize_selfadjoint(base, tmap, 1, 1)});

  std::vector<ResultRow> rows;
  for (const auto& sc : schemes) {
    for (int r = 0; r < rungs; ++r) {
      double h = h_top / std::ldexp(1.0, r);
      long calls = m0 << r;
      ResultRow row{sc.name, sc.level, h, 0.0, 0.0, false};
      try {
        State u = evolve(sc.flow, h, calls, u0, "run_stiff_experiment");
        row.global_error = inf_dist(u, u_ref);
        row.symmetry_error = transpose_defect(g.n, u);
      } catch (const diverged_error&) {
        row.diverged = true;
      } catch (const convergence_error&) {
        row.diverged = true;
      } catch (const domain_error&) {
        row.diverged = true;  // singular implicit operator at a resonant step
      }
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

void write_experiment_csv(std::ostream& os, const std::vector<ResultRow>& rows) {
  os << "scheme,level,h,global_error,symmetry_error,status\n";
  for (const auto& r : rows) {
    os << r.scheme << "," << r.level << "," << format_sig17(r.h) << ",";
    if (r.diverged) {
      os << ",,diverged\n";
    } else {
      os << format_sig17(r.global_error) << "," << format_sig17(r.symmetry_error) << ",ok\n";
    }
  }
}

// ---- composition experiments ---------------------------------------------

namespace {

struct OdeProblem {
  State y0;
  Flow base_p1;       // order-1 base with an analytic inverse
  Flow base_selfadj;  // order-2 selfadjoint base
  InvolutiveStateMap sym;
  InvolutiveStateMap rev;
  std::function<State(double)> exact;
};

State mat_to_state(const Mat& m) { return m.data(); }

Mat state_to_mat(const State& s, int n) {
  Mat m(n, n);
  m.data() = s;
  return m;
}

OdeProblem make_harmonic() {
  const Mat a = Mat::from_rows({{0.0, -1.0}, {1.0, 0.0}});
  OdeProblem p;
  p.y0 = {1.0, 0.4};
  p.base_p1.declared_order = 1;
  p.base_p1.step = [](double h, const State& y) {
    return State{y[0] - h * y[1], y[1] + h * y[0]};
  };
  p.base_p1.inversion = AnalyticInverse{[](double h, const State& y) {
    double det = 1.0 + h * h;
    return State{(y[0] + h * y[1]) / det, (y[1] - h * y[0]) / det};
  }};
  // Cayley / midpoint step (selfadjoint, order 2)
  auto cayley = [a](double h, const State& y) {
    Mat rhs(2, 1);
    rhs(0, 0) = y[0] - 0.5 * h * y[1];
    rhs(1, 0) = y[1] + 0.5 * h * y[0];
    Mat lhs = Mat::identity(2) - (0.5 * h) * a;
    Mat sol = solve(lhs, rhs);
    return State{sol(0, 0), sol(1, 0)};
  };
  p.base_selfadj.declared_order = 2;
  p.base_selfadj.step = cayley;
  p.base_selfadj.inversion =
      AnalyticInverse{[cayley](double h, const State& y) { return cayley(-h, y); }};
  p.sym = InvolutiveStateMap{[](const State& y) { return State{-y[0], -y[1]}; }, "negate"};
  p.rev = InvolutiveStateMap{[](const State& y) { return State{y[0], -y[1]}; }, "reflect-y"};
  State y0 = p.y0;
  p.exact = [y0](double t) {
    double c = std::cos(t), s = std::sin(t);
    return State{c * y0[0] - s * y0[1], s * y0[0] + c * y0[1]};
  };
  return p;
}

OdeProblem make_linear_sym() {
  const Mat a1 = Mat::from_rows({{-1.0, 0.3}, {0.0, 0.0}});
  const Mat a2 = Mat::from_rows({{0.0, 0.0}, {0.3, -1.0}});
  const Mat a = a1 + a2;
  auto apply = [](const Mat& m, const State& y) {
    return State{m(0, 0) * y[0] + m(0, 1) * y[1], m(1, 0) * y[0] + m(1, 1) * y[1]};
  };
  OdeProblem p;
  p.y0 = {1.0, 0.7};
  p.base_p1.declared_order = 1;
  p.base_p1.step = [a1, a2, apply](double h, const State& y) {
    return apply(expm(h * a2), apply(expm(h * a1), y));
  };
  p.base_p1.inversion = AnalyticInverse{[a1, a2, apply](double h, const State& y) {
    return apply(expm(-h * a1), apply(expm(-h * a2), y));
  }};
  p.base_selfadj.declared_order = 2;
  p.base_selfadj.step = [a1, a2, apply](double h, const State& y) {
    Mat half = expm(0.5 * h * a1);
    return apply(half, apply(expm(h * a2), apply(half, y)));
  };
  p.base_selfadj.inversion = AnalyticInverse{[a1, a2, apply](double h, const State& y) {
    Mat half = expm(-0.5 * h * a1);
    return apply(half, apply(expm(-h * a2), apply(half, y)));
  }};
  p.sym = InvolutiveStateMap{[](const State& y) { return State{y[1], y[0]}; }, "swap"};
  p.rev = p.sym;
  State y0 = p.y0;
  p.exact = [a, apply, y0](double t) { return apply(expm(t * a), y0); };
  return p;
}

OdeProblem make_so3() {
  const Mat xa = Mat::from_rows({{0.0, -0.3, -0.2}, {0.3, 0.0, -0.5}, {0.2, 0.5, 0.0}});
  const Mat r = Mat::diag({-1.0, 1.0, 1.0});
  const Mat xb = r * xa * r;
  const Mat x = xa + xb;
  OdeProblem p;
  p.y0 = mat_to_state(Mat::identity(3));
  p.base_p1.declared_order = 1;
  p.base_p1.step = [xa, xb](double h, const State& y) {
    return mat_to_state(expm(h * xb) * (expm(h * xa) * state_to_mat(y, 3)));
  };
  p.base_p1.inversion = AnalyticInverse{[xa, xb](double h, const State& y) {
    return mat_to_state(expm(-h * xa) * (expm(-h * xb) * state_to_mat(y, 3)));
  }};
  p.base_selfadj.declared_order = 2;
  p.base_selfadj.step = [xa, xb](double h, const State& y) {
    Mat half = expm(0.5 * h * xa);
    return mat_to_state(half * (expm(h * xb) * (half * state_to_mat(y, 3))));
  };
  p.base_selfadj.inversion = AnalyticInverse{[xa, xb](double h, const State& y) {
    Mat half = expm(-0.5 * h * xa);
    return mat_to_state(half * (expm(-h * xb) * (half * state_to_mat(y, 3))));
  }};
  p.sym = InvolutiveStateMap{
      [r](const State& y) { return mat_to_state(r * state_to_mat(y, 3) * r); }, "inner-r"};
  p.rev = p.sym;
  p.exact = [x](double t) { return mat_to_state(expm(t * x)); };
  return p;
}

OdeProblem make_problem(const std::string& id) {
  if (id == "harmonic") return make_harmonic();
  if (id == "linear-sym") return make_linear_sym();
  if (id == "so3") return make_so3();
  throw error("unknown compose problem '" + id + "' (expected harmonic | linear-sym | so3)");
}

}  // namespace

std::vector<ComposeRow> run_compose(const ComposeConfig& cfg) {
  if (cfg.rungs < 1 || cfg.rungs > 24) throw error("run_compose: bad rung count");
  if (cfg.levels < 0 || cfg.levels > 12) throw error("run_compose: bad level count");
  if (!(cfg.hmax > 0.0)) throw error("run_compose: hmax must be positive");
  OdeProblem prob = make_problem(cfg.problem);

  struct Variant {
    int level;
    Flow flow;
  };
  std::vector<Variant> variants;
  if (cfg.scheme == "scovel") {
    variants.push_back({0, prob.base_p1});
    variants.push_back({1, scovel(prob.base_p1, prob.rev)});
  } else if (cfg.scheme == "tm") {
    for (int k = 0; k <= cfg.levels; ++k)
      variants.push_back({k, thue_morse(prob.base_p1, prob.sym, k)});
  } else if (cfg.scheme == "yoshida") {
    variants.push_back({0, prob.base_selfadj});
    variants.push_back({1, yoshida(prob.base_selfadj, 1)});
  } else if (cfg.scheme == "selfadjoint") {
    variants.push_back({0, prob.base_selfadj});
    for (int k = 1; k <= std::max(1, cfg.levels); ++k)
      variants.push_back({k, symmetrize_selfadjoint(prob.base_selfadj, prob.sym, 1, k)});
  } else {
    throw error("unknown compose scheme '" + cfg.scheme +
                "' (expected scovel | tm | yoshida | selfadjoint)");
  }

  // time units at the top rung: every variant's macro-step must divide the
  // end time and the base-evaluation grid
  long n0 = 1;
  for (const auto& v : variants) {
    n0 = std::lcm(n0, v.flow.period_steps);
    n0 = std::lcm(n0, v.flow.h_units_per_call);
  }
  while (n0 < 8) n0 *= 2;
  const double t_end = static_cast<double>(n0) * cfg.hmax;

  std::vector<ComposeRow> rows;
  for (const auto& v : variants) {
    for (int r = 0; r < cfg.rungs; ++r) {
      double h = cfg.hmax / std::ldexp(1.0, r);
      long time_units = n0 << r;
      long calls = time_units / v.flow.h_units_per_call;
      State y = prob.y0;
      for (long i = 0; i < calls; ++i) y = v.flow.step(h, y);
      ComposeRow row;
      row.scheme = cfg.scheme;
      row.level = v.level;
      row.h = h;
      row.steps = calls * v.flow.period_steps;  // total base evaluations
      row.global_error = inf_dist(y, prob.exact(t_end));
      row.symmetry_error =
          symmetry_defect(v.flow, prob.sym, prob.y0, h, row.steps, DefectMode::Symmetry);
      row.reversing_error =
          symmetry_defect(v.flow, prob.rev, prob.y0, h, row.steps, DefectMode::Reversing);
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

void write_compose_csv(std::ostream& os, const std::vector<ComposeRow>& rows) {
  os << "scheme,level,h,global_error,symmetry_error,reversing_error,steps\n";
  for (const auto& r : rows) {
    os << r.scheme << "," << r.level << "," << format_sig17(r.h) << ","
       << format_sig17(r.global_error) << "," << format_sig17(r.symmetry_error) << ","
       << format_sig17(r.reversing_error) << "," << r.steps << "\n";
  }
}

}  // namespace symspace
