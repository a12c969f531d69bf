#include "symspace/matfun.hpp"

#include <cmath>

#include "symspace/eig.hpp"

namespace symspace {

Mat expm(const Mat& a) {
  a.require_square("expm");
  if (!a.all_finite()) throw diverged_error("expm: non-finite input");
  const int n = a.rows();
  const Mat eye = Mat::identity(n);

  double nrm = fro_norm(a);
  int s = 0;
  while (std::ldexp(nrm, -s) > 0.5) ++s;
  if (s > 200) throw diverged_error("expm: input norm too large to scale");

  Mat x = a * std::ldexp(1.0, -s);
  // diagonal [6/6] Pade of exp; exact to double precision for norm <= 0.5
  static const double c[7] = {1.0,         1.0 / 2.0,     5.0 / 44.0, 1.0 / 66.0,
                              1.0 / 792.0, 1.0 / 15840.0, 1.0 / 665280.0};
  Mat x2 = x * x;
  Mat x4 = x2 * x2;
  Mat u = x * (c[1] * eye + c[3] * x2 + c[5] * x4);
  Mat v = c[0] * eye + c[2] * x2 + c[4] * x4 + c[6] * (x4 * x2);
  Mat r = solve(v - u, v + u);
  for (int i = 0; i < s; ++i) {
    r = r * r;
    if (!r.all_finite()) throw diverged_error("expm: overflow during squaring");
  }
  return r;
}

Mat sqrtm(const Mat& a) {
  a.require_square("sqrtm");
  require_spectrum_off_negative_axis(a, "sqrtm");
  const int n = a.rows();
  Mat y = a;
  Mat z = Mat::identity(n);
  double prev = 0.0;
  for (int it = 0; it < 80; ++it) {
    Mat yi = inverse(y);
    Mat zi = inverse(z);
    Mat yn = 0.5 * (y + zi);
    Mat zn = 0.5 * (z + yi);
    double delta = fro_dist(yn, y) / std::max(1.0, fro_norm(yn));
    y = yn;
    z = zn;
    if (delta < 1e-15) return y;
    // quadratic convergence means the step sizes collapse fast; a stall of two
    // equal tiny steps is also accepted
    if (it > 3 && delta < 1e-13 && std::fabs(delta - prev) < 1e-16) return y;
    prev = delta;
  }
  throw convergence_error("sqrtm: Denman-Beavers iteration stalled",
                          fro_dist(y * y, a));
}

Mat logm(const Mat& a) {
  a.require_square("logm");
  require_spectrum_off_negative_axis(a, "logm");
  const int n = a.rows();
  const Mat eye = Mat::identity(n);

  Mat t = a;
  int k = 0;
  while (fro_norm(t - eye) > 0.25) {
    if (k >= 50) throw convergence_error("logm: square-root phase stalled", fro_norm(t - eye));
    t = sqrtm(t);
    ++k;
  }
  Mat e = t - eye;
  // 8-point Gauss-Legendre on log(I+E) = int_0^1 E (I + sE)^{-1} ds,
  // equivalent to the diagonal [8/8] Pade approximant.
  static const double node[8] = {
      0.5 * (1.0 - 0.96028985649753623168), 0.5 * (1.0 - 0.79666647741362673959),
      0.5 * (1.0 - 0.52553240991632898582), 0.5 * (1.0 - 0.18343464249564980494),
      0.5 * (1.0 + 0.18343464249564980494), 0.5 * (1.0 + 0.52553240991632898582),
      0.5 * (1.0 + 0.79666647741362673959), 0.5 * (1.0 + 0.96028985649753623168)};
  static const double weight[8] = {
      0.5 * 0.10122853629037625915, 0.5 * 0.22238103445337447054,
      0.5 * 0.31370664587788728734, 0.5 * 0.36268378337836198297,
      0.5 * 0.36268378337836198297, 0.5 * 0.31370664587788728734,
      0.5 * 0.22238103445337447054, 0.5 * 0.10122853629037625915};
  Mat acc(n, n);
  for (int i = 0; i < 8; ++i) acc += weight[i] * solve(eye + node[i] * e, e);
  return std::ldexp(1.0, k) * acc;
}

Mat ad_power(const Mat& a, const Mat& v, int j) {
  a.require_square("ad_power");
  if (a.rows() != v.rows() || a.cols() != v.cols())
    throw shape_error("ad_power: shapes of A and V must match");
  if (j < 0) throw shape_error("ad_power: negative power");
  Mat r = v;
  for (int i = 0; i < j; ++i) r = a * r - r * a;
  return r;
}

SvdPolarResult svd_polar(const Mat& a) {
  a.require_square("svd_polar");
  const int n = a.rows();
  Mat u = a;
  Mat v = Mat::identity(n);

  const double tol = 1e-15;
  bool converged = false;
  for (int sweep = 0; sweep < 80 && !converged; ++sweep) {
    converged = true;
    for (int p = 0; p < n - 1; ++p) {
      for (int q = p + 1; q < n; ++q) {
        double app = 0.0, aqq = 0.0, apq = 0.0;
        for (int i = 0; i < n; ++i) {
          app += u(i, p) * u(i, p);
          aqq += u(i, q) * u(i, q);
          apq += u(i, p) * u(i, q);
        }
        if (std::fabs(apq) <= tol * std::sqrt(app * aqq)) continue;
        converged = false;
        double zeta = (aqq - app) / (2.0 * apq);
        double t = (zeta >= 0.0 ? 1.0 : -1.0) / (std::fabs(zeta) + std::sqrt(1.0 + zeta * zeta));
        double c = 1.0 / std::sqrt(1.0 + t * t);
        double s = c * t;
        for (int i = 0; i < n; ++i) {
          double up = u(i, p), uq = u(i, q);
          u(i, p) = c * up - s * uq;
          u(i, q) = s * up + c * uq;
          double vp = v(i, p), vq = v(i, q);
          v(i, p) = c * vp - s * vq;
          v(i, q) = s * vp + c * vq;
        }
      }
    }
  }
  if (!converged) throw convergence_error("svd_polar: Jacobi sweeps did not converge", 0.0);

  double smax = 0.0, smin = 0.0;
  std::vector<double> sigma(n);
  for (int j = 0; j < n; ++j) {
    double nrm = 0.0;
    for (int i = 0; i < n; ++i) nrm += u(i, j) * u(i, j);
    sigma[j] = std::sqrt(nrm);
    smax = std::max(smax, sigma[j]);
  }
  smin = smax;
  for (int j = 0; j < n; ++j) smin = std::min(smin, sigma[j]);
  if (!(smin > 1e-13 * smax) || smax == 0.0)
    throw domain_error("svd_polar: singular input matrix");

  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) u(i, j) /= sigma[j];

  SvdPolarResult res{Mat(n, n), u * transpose(v)};
  Mat s_raw = a * transpose(res.q);
  res.s = 0.5 * (s_raw + transpose(s_raw));
  return res;
}

}  // namespace symspace
