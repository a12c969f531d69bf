#include "symspace/grid.hpp"

#include <cmath>

#include "symspace/mat.hpp"

namespace symspace {

namespace {

constexpr double kBlowupThreshold = 1e6;

void check_field(const State& u, const char* who) {
  for (double v : u) {
    if (!std::isfinite(v)) throw diverged_error(std::string(who) + ": non-finite field value");
    if (std::fabs(v) > kBlowupThreshold)
      throw diverged_error(std::string(who) + ": field norm exceeded divergence threshold");
  }
}

double cubic_f(double u) { return -u * (u - 1.0) * (u - 1.0); }
double cubic_fp(double u) { return -(u - 1.0) * (3.0 * u - 1.0); }

}  // namespace

State gaussian_field(const Grid& g, double coeff) {
  State u(static_cast<size_t>(g.n) * g.n);
  for (int i = 0; i < g.n; ++i)
    for (int j = 0; j < g.n; ++j)
      u[static_cast<size_t>(i) * g.n + j] =
          std::exp(-coeff * (g.x(i) * g.x(i) + g.x(j) * g.x(j)));
  return u;
}

State transpose_field(int n, const State& u) {
  State v(u.size());
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      v[static_cast<size_t>(i) * n + j] = u[static_cast<size_t>(j) * n + i];
  return v;
}

InvolutiveStateMap transpose_map(int n) {
  return InvolutiveStateMap{[n](const State& u) { return transpose_field(n, u); },
                            "grid-transpose"};
}

double transpose_defect(int n, const State& u) {
  double m = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      m = std::max(m, std::fabs(u[static_cast<size_t>(i) * n + j] -
                                u[static_cast<size_t>(j) * n + i]));
  return m;
}

State d1_apply(const Grid& g, int dir, const State& u) {
  const int n = g.n;
  const double c = 1.0 / (2.0 * g.delta());
  State out(u.size());
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      size_t idx = static_cast<size_t>(i) * n + j;
      size_t up, dn;
      if (dir == 0) {
        up = static_cast<size_t>((i + 1) % n) * n + j;
        dn = static_cast<size_t>((i + n - 1) % n) * n + j;
      } else {
        up = static_cast<size_t>(i) * n + (j + 1) % n;
        dn = static_cast<size_t>(i) * n + (j + n - 1) % n;
      }
      out[idx] = c * (u[up] - u[dn]);
    }
  }
  return out;
}

State d2_apply(const Grid& g, int dir, const State& u) {
  const int n = g.n;
  const double c = 1.0 / (g.delta() * g.delta());
  State out(u.size());
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      size_t idx = static_cast<size_t>(i) * n + j;
      size_t up, dn;
      if (dir == 0) {
        up = static_cast<size_t>((i + 1) % n) * n + j;
        dn = static_cast<size_t>((i + n - 1) % n) * n + j;
      } else {
        up = static_cast<size_t>(i) * n + (j + 1) % n;
        dn = static_cast<size_t>(i) * n + (j + n - 1) % n;
      }
      out[idx] = c * (u[up] - 2.0 * u[idx] + u[dn]);
    }
  }
  return out;
}

namespace {

// A_d(u) = D1_d u + (nonlin/2) u^2
State advection_field(const Grid& g, int dir, double nonlin, const State& u) {
  State out = d1_apply(g, dir, u);
  for (size_t k = 0; k < u.size(); ++k) out[k] += 0.5 * nonlin * u[k] * u[k];
  return out;
}

State euler_substep(const Grid& g, int dir, double nonlin, double h, const State& u) {
  State f = advection_field(g, dir, nonlin, u);
  State v(u.size());
  for (size_t k = 0; k < u.size(); ++k) v[k] = u[k] + h * f[k];
  check_field(v, "advection_pair");
  return v;
}

State heun_substep(const Grid& g, int dir, double nonlin, double h, const State& u) {
  State k1 = advection_field(g, dir, nonlin, u);
  State mid(u.size());
  for (size_t k = 0; k < u.size(); ++k) mid[k] = u[k] + h * k1[k];
  State k2 = advection_field(g, dir, nonlin, mid);
  State v(u.size());
  for (size_t k = 0; k < u.size(); ++k) v[k] = u[k] + 0.5 * h * (k1[k] + k2[k]);
  check_field(v, "advection_pair");
  return v;
}

}  // namespace

Flow advection_pair_fe(const Grid& g, double nonlin) {
  Flow f;
  f.declared_order = 1;
  f.step = [g, nonlin](double h, const State& u) {
    return euler_substep(g, 1, nonlin, h, euler_substep(g, 0, nonlin, h, u));
  };
  return f;
}

Flow advection_pair_heun(const Grid& g, double nonlin) {
  Flow f;
  f.declared_order = 2;
  f.step = [g, nonlin](double h, const State& u) {
    State v = heun_substep(g, 0, nonlin, 0.5 * h, u);
    v = heun_substep(g, 1, nonlin, h, v);
    return heun_substep(g, 0, nonlin, 0.5 * h, v);
  };
  return f;
}

namespace {

// F_d(u) = D2_d u + f(u)/2 restricted to one grid line (periodic tridiagonal
// plus the pointwise nonlinearity); BE solves are per-line Newton iterations.

// Forward-Euler substep of F_d over step s.
State stiff_fe_substep(const Grid& g, int dir, double s, const State& u) {
  State d = d2_apply(g, dir, u);
  State v(u.size());
  for (size_t k = 0; k < u.size(); ++k) v[k] = u[k] + s * (d[k] + 0.5 * cubic_f(u[k]));
  check_field(v, "stiff_base_flow");
  return v;
}

// Backward-Euler substep: solve v = c + s (D2_line v + f(v)/2) line by line.
State stiff_be_substep(const Grid& g, int dir, double s, const State& c) {
  const int n = g.n;
  const double idel2 = 1.0 / (g.delta() * g.delta());
  State out(c.size());
  State pred = stiff_fe_substep(g, dir, s, c);  // warm start

  std::vector<double> w(n), rhs_line(n);
  for (int line = 0; line < n; ++line) {
    auto at = [&](int m) -> size_t {
      // dir 0: vary i along the line (fixed j = line); dir 1: vary j
      return dir == 0 ? static_cast<size_t>(m) * n + line
                      : static_cast<size_t>(line) * n + m;
    };
    for (int m = 0; m < n; ++m) {
      w[m] = pred[at(m)];
      rhs_line[m] = c[at(m)];
    }

    bool done = false;
    double res = 0.0;
    for (int it = 0; it < 50 && !done; ++it) {
      // residual G(w) = w - s(D2 w + f(w)/2) - c
      std::vector<double> gvec(n);
      res = 0.0;
      double wmax = 0.0;
      for (int m = 0; m < n; ++m) {
        double lap = idel2 * (w[(m + 1) % n] - 2.0 * w[m] + w[(m + n - 1) % n]);
        gvec[m] = w[m] - s * (lap + 0.5 * cubic_f(w[m])) - rhs_line[m];
        res = std::max(res, std::fabs(gvec[m]));
        wmax = std::max(wmax, std::fabs(w[m]));
        if (!std::isfinite(w[m]) || wmax > kBlowupThreshold)
          throw diverged_error("stiff_base_flow: implicit substep left the stable range");
      }
      if (res <= 1e-12 * std::max(1.0, wmax)) {
        done = true;
        break;
      }
      Mat jac(n, n);
      for (int m = 0; m < n; ++m) {
        jac(m, m) = 1.0 + 2.0 * s * idel2 - 0.5 * s * cubic_fp(w[m]);
        jac(m, (m + 1) % n) += -s * idel2;
        jac(m, (m + n - 1) % n) += -s * idel2;
      }
      Mat rhs(n, 1);
      for (int m = 0; m < n; ++m) rhs(m, 0) = gvec[m];
      Mat dw = solve(jac, rhs);
      for (int m = 0; m < n; ++m) w[m] -= dw(m, 0);
    }
    if (!done)
      throw convergence_error("stiff_base_flow: Newton did not converge in a BE substep", res);
    for (int m = 0; m < n; ++m) out[at(m)] = w[m];
  }
  check_field(out, "stiff_base_flow");
  return out;
}

}  // namespace

Flow stiff_base_flow(const Grid& g) {
  Flow f;
  f.declared_order = 2;
  f.step = [g](double h, const State& u) {
    State v = stiff_fe_substep(g, 0, 0.5 * h, u);   // FE on F1
    v = stiff_fe_substep(g, 1, 0.5 * h, v);         // FE on F2
    v = stiff_be_substep(g, 1, 0.5 * h, v);         // BE on F2
    return stiff_be_substep(g, 0, 0.5 * h, v);      // BE on F1
  };
  return f;
}

State stiff_rhs(const Grid& g, const State& u) {
  State out = d2_apply(g, 0, u);
  State dy = d2_apply(g, 1, u);
  for (size_t k = 0; k < u.size(); ++k) out[k] += dy[k] + cubic_f(u[k]);
  return out;
}

}  // namespace symspace
