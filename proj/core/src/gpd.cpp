#include "symspace/gpd.hpp"

#include <cmath>

#include "symspace/bernoulli.hpp"
#include "symspace/eig.hpp"
#include "symspace/matfun.hpp"
#include "symspace/series.hpp"

namespace symspace {

PolarFactors generalized_polar(const Mat& x, const Involution& inv, int order) {
  x.require_square("generalized_polar");
  if (order < 1 || order > 4)
    throw error("generalized_polar: order must lie in 1..4, got " + std::to_string(order));
  Mat lx = logm(x);
  Splitting sp = split(lx, inv);
  GpdSeries ser = gpd_series(sp.p, sp.k, order);
  PolarFactors f{expm(ser.s), expm(ser.q), 0.0, fro_norm(lx)};
  f.residual = fro_dist(f.p_factor * f.k_factor, x);
  return f;
}

PolarFactors classical_polar(const Mat& x, double tol, int max_iter) {
  x.require_square("classical_polar");
  Mat y = x;
  double step = 0.0;
  bool converged = false;
  for (int it = 0; it < max_iter; ++it) {
    Mat yn = 0.5 * (y + transpose(inverse(y)));
    step = fro_dist(yn, y);
    y = std::move(yn);
    if (step <= tol) {
      converged = true;
      break;
    }
  }
  if (!converged)
    throw convergence_error("classical_polar: Newton iteration did not reach tolerance", step);
  Mat s_raw = x * transpose(y);
  PolarFactors f{0.5 * (s_raw + transpose(s_raw)), y, 0.0, 0.0};
  f.residual = fro_dist(f.p_factor * f.k_factor, x);
  return f;
}

AnalyticFn analytic_fn_from_id(const std::string& id) {
  if (id == "exp") return AnalyticFn::Exp;
  if (id == "cos") return AnalyticFn::Cos;
  if (id == "sin") return AnalyticFn::Sin;
  if (id == "cayley") return AnalyticFn::CayleyResolvent;
  throw error("unknown analytic function id '" + id + "' (expected exp | cos | sin | cayley)");
}

double psi_scalar(AnalyticFn fn, PsiBranch branch, double s) {
  const bool near_zero = std::fabs(s) < 1e-6;
  switch (fn) {
    case AnalyticFn::Exp: {
      if (branch == PsiBranch::Psi1) {
        if (near_zero) return 1.0 + s / 6.0 + s * s / 120.0;
        if (s > 0.0) {
          double r = std::sqrt(s);
          return std::sinh(r) / r;
        }
        double r = std::sqrt(-s);
        return std::sin(r) / r;
      }
      if (near_zero) return 0.5 + s / 24.0 + s * s / 720.0;
      if (s > 0.0) return (std::cosh(std::sqrt(s)) - 1.0) / s;
      return (std::cos(std::sqrt(-s)) - 1.0) / s;
    }
    case AnalyticFn::Cos: {
      if (branch == PsiBranch::Psi1) return 0.0;  // even function
      if (near_zero) return -0.5 + s / 24.0 - s * s / 720.0;
      if (s > 0.0) return (std::cos(std::sqrt(s)) - 1.0) / s;
      return (std::cosh(std::sqrt(-s)) - 1.0) / s;
    }
    case AnalyticFn::Sin: {
      if (branch == PsiBranch::Psi2) return 0.0;  // odd function
      if (near_zero) return 1.0 - s / 6.0 + s * s / 120.0;
      if (s > 0.0) {
        double r = std::sqrt(s);
        return std::sin(r) / r;
      }
      double r = std::sqrt(-s);
      return std::sinh(r) / r;
    }
    case AnalyticFn::CayleyResolvent: {
      // psi(x) = (1 - x/2)^{-1}; pole of the psi_i at s = 4
      if (std::fabs(4.0 - s) < 1e-12)
        throw domain_error("psi_scalar: cayley resolvent pole at s = 4");
      return branch == PsiBranch::Psi1 ? 2.0 / (4.0 - s) : 1.0 / (4.0 - s);
    }
  }
  throw error("psi_scalar: unreachable");
}

namespace {

double psi_zero(AnalyticFn fn) {
  switch (fn) {
    case AnalyticFn::Exp:
    case AnalyticFn::Cos:
    case AnalyticFn::CayleyResolvent:
      return 1.0;
    case AnalyticFn::Sin:
      return 0.0;
  }
  return 0.0;
}

// Block-restricted psi_i(Theta): a0 Pi^- + sum_{k>=1} a_k Theta^k, where the
// a_k follow the ratio recurrence a_k = ratio(k) * a_{k-1}. Theta commutes
// with Pi^-, so the plus block never enters past the a0 term.
Mat psi_series_block(const Mat& theta, const Mat& pi_minus, double a0,
                     const std::function<double(int)>& ratio) {
  Mat acc = a0 * pi_minus;
  Mat pw = theta;
  double ak = a0;
  for (int k = 1; k <= 90; ++k) {
    ak *= ratio(k);
    if (ak != 0.0) acc += ak * pw;
    double tail = std::fabs(ak) * max_abs(pw);
    if (k > 4 && tail < 1e-18 * std::max(1.0, max_abs(acc))) return acc;
    pw = pw * theta;
    if (!pw.all_finite()) throw diverged_error("analytic_fn_2cyclic: series overflow");
  }
  throw convergence_error("analytic_fn_2cyclic: psi series did not settle", 0.0);
}

}  // namespace

Mat analytic_fn_2cyclic(const Mat& p, const Mat& s, AnalyticFn fn) {
  p.require_square("analytic_fn_2cyclic");
  if (s.rows() != p.rows() || s.cols() != p.cols())
    throw shape_error("analytic_fn_2cyclic: S and P must have the same shape");
  if (max_abs(s * s - Mat::identity(s.rows())) > 1e-12)
    throw domain_error("analytic_fn_2cyclic: S is not involutive");
  if (max_abs(s * p * s + p) > 1e-12)
    throw domain_error("analytic_fn_2cyclic: P is not 2-cyclic for S (SPS != -P)");

  ProjectorPair proj = projectors(s);
  Mat theta = (p * p) * proj.minus;
  const int n = p.rows();
  const Mat eye = Mat::identity(n);

  Mat psi1_m(n, n), psi2_m(n, n);
  switch (fn) {
    case AnalyticFn::Exp:
      // psi1 = sinh(sqrt s)/sqrt s, psi2 = (cosh(sqrt s)-1)/s
      psi1_m = psi_series_block(theta, proj.minus, 1.0,
                                [](int k) { return 1.0 / ((2.0 * k) * (2.0 * k + 1.0)); });
      psi2_m = psi_series_block(theta, proj.minus, 0.5,
                                [](int k) { return 1.0 / ((2.0 * k + 1.0) * (2.0 * k + 2.0)); });
      break;
    case AnalyticFn::Cos:
      psi2_m = psi_series_block(theta, proj.minus, -0.5,
                                [](int k) { return -1.0 / ((2.0 * k + 1.0) * (2.0 * k + 2.0)); });
      break;
    case AnalyticFn::Sin:
      psi1_m = psi_series_block(theta, proj.minus, 1.0,
                                [](int k) { return -1.0 / ((2.0 * k) * (2.0 * k + 1.0)); });
      break;
    case AnalyticFn::CayleyResolvent: {
      auto eigs = eigenvalues(theta);
      for (const auto& l : eigs) {
        if (std::abs(l - std::complex<double>(4.0, 0.0)) < 1e-9)
          throw domain_error("analytic_fn_2cyclic: resolvent pole meets the spectrum of Theta");
      }
      Mat y = solve(4.0 * eye - theta, proj.minus);  // (4I - Theta)^{-1} Pi^-
      psi1_m = 2.0 * (proj.minus * y);
      psi2_m = proj.minus * y;
      break;
    }
  }

  return psi_zero(fn) * eye + psi1_m * p + p * psi1_m + p * psi2_m * p + psi2_m * theta;
}

std::vector<PolarCoordsState> polar_coords_integrate(const std::function<Mat(double)>& xfun,
                                                     const Involution& inv, double t_end, double h,
                                                     int trunc) {
  if (h <= 0.0) throw error("polar_coords_integrate: step size must be positive");
  if (trunc < 1 || trunc > 12)
    throw error("polar_coords_integrate: trunc must lie in 1..12, got " + std::to_string(trunc));
  const int j_max = trunc / 2;
  const auto& bern = BernoulliTable::standard();

  Mat x0 = xfun(0.0);
  x0.require_square("polar_coords_integrate");
  const int n = x0.rows();

  struct Pair {
    Mat p, k;
  };
  auto deriv = [&](double t, const Pair& st) -> Pair {
    Mat x = xfun(t);
    Splitting sp = split(x, inv);  // p-part = Pi^- X, k-part = Pi^+ X
    Mat pdot = sp.p - commutator(st.p, sp.k);
    Mat karg = sp.k;
    Mat ad = sp.p;
    for (int j = 1; j <= j_max; ++j) {
      ad = commutator(st.p, ad);  // ad_P^{2j-1} Pi^- X
      double c2j = bern.value(2 * j) / std::tgamma(2.0 * j + 1.0);
      double two_pow = std::ldexp(1.0, 2 * j);  // 2^{2j}
      karg -= 2.0 * (two_pow - 1.0) * c2j * ad;
      ad = commutator(st.p, ad);  // ad_P^{2j} Pi^- X
      pdot += two_pow * c2j * ad;
    }
    return Pair{std::move(pdot), dexpinv_apply(st.k, karg, 8)};
  };

  Pair st{Mat(n, n), Mat(n, n)};
  std::vector<PolarCoordsState> out;
  long n_steps = std::lround(std::floor(t_end / h + 1e-12));
  double rem = t_end - static_cast<double>(n_steps) * h;
  out.push_back({0.0, st.p, st.k});
  double t = 0.0;
  auto rk4_step = [&](double dt) {
    Pair k1 = deriv(t, st);
    Pair k2 = deriv(t + 0.5 * dt, Pair{st.p + 0.5 * dt * k1.p, st.k + 0.5 * dt * k1.k});
    Pair k3 = deriv(t + 0.5 * dt, Pair{st.p + 0.5 * dt * k2.p, st.k + 0.5 * dt * k2.k});
    Pair k4 = deriv(t + dt, Pair{st.p + dt * k3.p, st.k + dt * k3.k});
    st.p += (dt / 6.0) * (k1.p + 2.0 * k2.p + 2.0 * k3.p + k4.p);
    st.k += (dt / 6.0) * (k1.k + 2.0 * k2.k + 2.0 * k3.k + k4.k);
    t += dt;
  };
  for (long i = 0; i < n_steps; ++i) {
    rk4_step(h);
    out.push_back({t, st.p, st.k});
  }
  if (rem > 1e-12 * std::max(1.0, t_end)) {
    rk4_step(rem);
    out.push_back({t, st.p, st.k});
  }
  return out;
}

}  // namespace symspace
