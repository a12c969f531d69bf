#include "symspace/rng.hpp"

#include <cmath>

namespace symspace {

double Rng::gauss() {
  if (have_spare_) {
    have_spare_ = false;
    return spare_;
  }
  double u1 = 0.0;
  do {
    u1 = uniform();
  } while (u1 <= 0.0);
  double u2 = uniform();
  double r = std::sqrt(-2.0 * std::log(u1));
  double a = 2.0 * M_PI * u2;
  spare_ = r * std::sin(a);
  have_spare_ = true;
  return r * std::cos(a);
}

Mat random_mat(Rng& rng, int rows, int cols) {
  Mat m(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) m(i, j) = rng.gauss();
  return m;
}

Mat random_symmetric(Rng& rng, int n) {
  Mat a = random_mat(rng, n, n);
  return 0.5 * (a + transpose(a));
}

Mat random_skew(Rng& rng, int n) {
  Mat a = random_mat(rng, n, n);
  return 0.5 * (a - transpose(a));
}

Mat random_orthogonal(Rng& rng, int n) { return qr_orthogonal_factor(random_mat(rng, n, n)); }

namespace {

std::vector<double> log_spaced(Rng& rng, int n, double cond) {
  std::vector<double> d(n);
  if (n == 1) {
    d[0] = 1.0;
    return d;
  }
  d[0] = 1.0;
  d[n - 1] = 1.0 / cond;
  for (int i = 1; i + 1 < n; ++i) {
    double t = rng.uniform();
    d[i] = std::exp(-t * std::log(cond));
  }
  return d;
}

}  // namespace

Mat random_spd(Rng& rng, int n, double cond) {
  Mat q = random_orthogonal(rng, n);
  Mat d = Mat::diag(log_spaced(rng, n, cond));
  return q * d * transpose(q);
}

Mat random_with_condition(Rng& rng, int n, double cond) {
  Mat q1 = random_orthogonal(rng, n);
  Mat q2 = random_orthogonal(rng, n);
  Mat d = Mat::diag(log_spaced(rng, n, cond));
  return q1 * d * transpose(q2);
}

}  // namespace symspace
