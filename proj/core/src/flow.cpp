#include "symspace/flow.hpp"

#include <algorithm>
#include <cmath>

#include "symspace/mat.hpp"

namespace symspace {

double inf_norm(const State& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::fabs(x));
  return m;
}

double inf_dist(const State& a, const State& b) {
  if (a.size() != b.size()) throw shape_error("inf_dist: state sizes differ");
  double m = 0.0;
  for (size_t i = 0; i < a.size(); ++i) m = std::max(m, std::fabs(a[i] - b[i]));
  return m;
}

namespace {

State newton_invert(const Flow& flow, double h, const State& y1, double tol, int max_iter) {
  const int n = static_cast<int>(y1.size());
  State y = y1;  // predictor: the step is O(h) away from identity
  double res = 0.0;
  for (int it = 0; it < max_iter; ++it) {
    State f = flow.step(h, y);
    State r(n);
    for (int i = 0; i < n; ++i) r[i] = f[i] - y1[i];
    res = inf_norm(r);
    if (res <= tol) return y;

    // finite-difference Jacobian of step(h, .) at y
    Mat jac(n, n);
    State yp = y;
    for (int j = 0; j < n; ++j) {
      double eps = 1e-7 * std::max(1.0, std::fabs(y[j]));
      yp[j] = y[j] + eps;
      State fp = flow.step(h, yp);
      yp[j] = y[j];
      for (int i = 0; i < n; ++i) jac(i, j) = (fp[i] - f[i]) / eps;
    }
    Mat rhs(n, 1);
    for (int i = 0; i < n; ++i) rhs(i, 0) = r[i];
    Mat d(n, 1);
    try {
      d = solve(jac, rhs);
    } catch (const domain_error&) {
      throw convergence_error("invert_step: Newton hit a singular Jacobian", res);
    }

    // damped update: back off while the residual grows
    double lambda = 1.0;
    for (int back = 0; back < 20; ++back) {
      State yn(n);
      for (int i = 0; i < n; ++i) yn[i] = y[i] - lambda * d(i, 0);
      State fn = flow.step(h, yn);
      double rn = 0.0;
      for (int i = 0; i < n; ++i) rn = std::max(rn, std::fabs(fn[i] - y1[i]));
      if (rn < res || back == 19) {
        y = std::move(yn);
        break;
      }
      lambda *= 0.5;
    }
  }
  throw convergence_error("invert_step: Newton inversion did not converge", res);
}

}  // namespace

State invert_step(const Flow& flow, double h, const State& y1) {
  if (std::holds_alternative<AnalyticInverse>(flow.inversion))
    return std::get<AnalyticInverse>(flow.inversion).inverse(h, y1);
  if (std::holds_alternative<AnalyticAdjoint>(flow.inversion))
    return std::get<AnalyticAdjoint>(flow.inversion).adjoint(-h, y1);
  const auto& nw = std::get<NewtonInvert>(flow.inversion);
  return newton_invert(flow, h, y1, nw.tol, nw.max_iter);
}

Flow conjugate_flow(const Flow& flow, const InvolutiveStateMap& t) {
  Flow out;
  out.declared_order = flow.declared_order;
  out.period_steps = flow.period_steps;
  out.h_units_per_call = flow.h_units_per_call;
  StateFn tm = t.apply;
  out.step = [flow, tm](double h, const State& y) { return tm(flow.step(h, tm(y))); };
  out.inversion =
      AnalyticInverse{[flow, tm](double h, const State& y1) { return tm(invert_step(flow, h, tm(y1))); }};
  return out;
}

Flow transform_flow(const Flow& flow, const FlowInvolution& sigma) {
  if (sigma.kind == FlowInvolution::Kind::StateMap) return conjugate_flow(flow, sigma.map);
  // time reversal: m -> m(-h)
  Flow out;
  out.declared_order = flow.declared_order;
  out.period_steps = flow.period_steps;
  out.h_units_per_call = flow.h_units_per_call;
  out.step = [flow](double h, const State& y) { return flow.step(-h, y); };
  out.inversion =
      AnalyticInverse{[flow](double h, const State& y1) { return invert_step(flow, -h, y1); }};
  return out;
}

Flow scovel(const Flow& flow, const FlowInvolution& sigma) {
  Flow sig = transform_flow(flow, sigma);
  Flow out;
  out.declared_order = flow.declared_order;
  out.period_steps = 2 * flow.period_steps;
  out.h_units_per_call = flow.h_units_per_call;
  out.step = [flow, sig](double h, const State& y) {
    return flow.step(0.5 * h, invert_step(sig, 0.5 * h, y));
  };
  out.inversion = AnalyticInverse{[flow, sig](double h, const State& y1) {
    return sig.step(0.5 * h, invert_step(flow, 0.5 * h, y1));
  }};
  return out;
}

Flow scovel(const Flow& flow, const InvolutiveStateMap& t) {
  return scovel(flow, FlowInvolution::state_map(t));
}

std::string thue_morse_pattern(int k, bool conjugate) {
  if (k < 0) throw error("thue_morse_pattern: level must be non-negative");
  if (k > 24) throw error("thue_morse_pattern: level too large");
  std::string s = conjugate ? "1" : "0";
  for (int i = 0; i < k; ++i) {
    std::string c = s;
    for (char& ch : c) ch = (ch == '0') ? '1' : '0';
    s += c;
  }
  return s;
}

Flow thue_morse(const Flow& flow, const InvolutiveStateMap& t, int k, bool conjugate) {
  std::string pattern = thue_morse_pattern(k, conjugate);
  StateFn tm = t.apply;
  Flow out;
  out.declared_order = flow.declared_order;
  out.period_steps = static_cast<long>(pattern.size()) * flow.period_steps;
  out.h_units_per_call = static_cast<long>(pattern.size()) * flow.h_units_per_call;
  out.step = [flow, tm, pattern](double h, const State& y0) {
    State y = y0;
    for (char c : pattern) y = (c == '0') ? flow.step(h, y) : tm(flow.step(h, tm(y)));
    return y;
  };
  out.inversion = AnalyticInverse{[flow, tm, pattern](double h, const State& y1) {
    State y = y1;
    for (auto it = pattern.rbegin(); it != pattern.rend(); ++it)
      y = (*it == '0') ? invert_step(flow, h, y) : tm(invert_step(flow, h, tm(y)));
    return y;
  }};
  return out;
}

YoshidaCoefficients yoshida_coefficients(int p) {
  if (p < 1) throw error("yoshida_coefficients: p must be >= 1");
  long double alpha = 1.0L / (2.0L - std::pow(2.0L, 1.0L / (2.0L * p + 1.0L)));
  return YoshidaCoefficients{static_cast<double>(alpha), static_cast<double>(1.0L - 2.0L * alpha)};
}

SymmetrizeCoefficients symmetrize_coefficients(int p) {
  if (p < 1) throw error("symmetrize_coefficients: p must be >= 1");
  long double a = 1.0L / (2.0L + std::pow(2.0L, 1.0L / (2.0L * p + 1.0L)));
  return SymmetrizeCoefficients{static_cast<double>(a), static_cast<double>(1.0L - 2.0L * a)};
}

namespace {

// phi_{c0 h} o phi_{c1 h} o phi_{c2 h} with the middle factor optionally
// conjugated; shared by the two triple-jump compositions.
Flow triple_jump(const Flow& flow, double outer, double middle, const StateFn& conj_middle,
                 int declared_order) {
  Flow out;
  out.declared_order = declared_order;
  out.period_steps = 3 * flow.period_steps;
  out.h_units_per_call = flow.h_units_per_call;
  out.step = [flow, outer, middle, conj_middle](double h, const State& y0) {
    State y = flow.step(outer * h, y0);
    if (conj_middle) {
      y = conj_middle(flow.step(middle * h, conj_middle(y)));
    } else {
      y = flow.step(middle * h, y);
    }
    return flow.step(outer * h, y);
  };
  out.inversion = AnalyticInverse{[flow, outer, middle, conj_middle](double h, const State& y1) {
    State y = invert_step(flow, outer * h, y1);
    if (conj_middle) {
      y = conj_middle(invert_step(flow, middle * h, conj_middle(y)));
    } else {
      y = invert_step(flow, middle * h, y);
    }
    return invert_step(flow, outer * h, y);
  }};
  return out;
}

}  // namespace

Flow yoshida(const Flow& flow, int p) {
  YoshidaCoefficients c = yoshida_coefficients(p);
  return triple_jump(flow, c.alpha, c.beta, nullptr, 2 * p + 2);
}

Flow symmetrize_selfadjoint(const Flow& flow, const InvolutiveStateMap& t, int p, int iterations) {
  if (iterations < 1) throw error("symmetrize_selfadjoint: iterations must be >= 1");
  Flow cur = flow;
  for (int level = 0; level < iterations; ++level) {
    SymmetrizeCoefficients c = symmetrize_coefficients(p + level);
    cur = triple_jump(cur, c.a, c.b, t.apply, flow.declared_order);
  }
  return cur;
}

double symmetry_defect(const Flow& flow, const InvolutiveStateMap& t, const State& y0, double h,
                       long n_steps, DefectMode mode) {
  if (n_steps <= 0 || n_steps % flow.period_steps != 0)
    throw error("symmetry_defect: n_steps (" + std::to_string(n_steps) +
                ") must be a positive multiple of the macro-step period (" +
                std::to_string(flow.period_steps) + ")");
  const long calls = n_steps / flow.period_steps;
  auto run = [&](State y) {
    for (long i = 0; i < calls; ++i) y = flow.step(h, y);
    return y;
  };
  if (mode == DefectMode::Symmetry) {
    State a = t.apply(run(t.apply(y0)));
    State b = run(y0);
    return inf_dist(a, b);
  }
  State a = t.apply(run(t.apply(run(y0))));
  return inf_dist(a, y0);
}

double selfadjoint_defect(const Flow& flow, double h, const State& y0) {
  return inf_dist(flow.step(-h, flow.step(h, y0)), y0);
}

OrderEstimate estimate_order(std::vector<std::pair<double, double>> ladder) {
  std::sort(ladder.begin(), ladder.end(),
            [](const auto& a, const auto& b) { return a.first > b.first; });
  for (size_t i = 0; i + 1 < ladder.size(); ++i)
    if (!(ladder[i].first > ladder[i + 1].first))
      throw error("estimate_order: ladder h values must be strictly decreasing");

  std::vector<std::pair<double, double>> usable;
  for (const auto& [h, e] : ladder) {
    if (!(h > 0.0)) throw error("estimate_order: non-positive h");
    if (e > 1e-14) usable.push_back({h, e});
  }
  if (usable.size() < 4)
    throw error("estimate_order: fewer than 4 usable ladder points (above the 1e-14 floor)");

  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double n = static_cast<double>(usable.size());
  for (const auto& [h, e] : usable) {
    double x = std::log(h), y = std::log(e);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  OrderEstimate est;
  est.slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  est.intercept = (sy - est.slope * sx) / n;
  for (const auto& [h, e] : usable) {
    double dev = std::fabs(std::log(e) - (est.slope * std::log(h) + est.intercept));
    est.residual = std::max(est.residual, dev);
  }
  est.ladder = std::move(usable);
  return est;
}

}  // namespace symspace
