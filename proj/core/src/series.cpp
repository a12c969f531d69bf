#include "symspace/series.hpp"

#include "symspace/bernoulli.hpp"
#include "symspace/matfun.hpp"

namespace symspace {

Mat sym_bch(const Mat& x, const Mat& y, int order) {
  if (x.rows() != y.rows() || x.cols() != y.cols())
    throw shape_error("sym_bch: X and Y must have the same shape");
  x.require_square("sym_bch");
  if (order != 1 && order != 3)
    throw error("sym_bch: unsupported truncation order " + std::to_string(order) +
                " (supported: 1, 3)");
  Mat z = 2.0 * x + y;
  if (order >= 3) {
    z += (1.0 / 6.0) * ad_power(y, x, 2);
    z -= (1.0 / 6.0) * ad_power(x, y, 2);
  }
  return z;
}

GpdSeries gpd_series(const Mat& p, const Mat& k, int order) {
  if (p.rows() != k.rows() || p.cols() != k.cols())
    throw shape_error("gpd_series: P and K must have the same shape");
  p.require_square("gpd_series");
  if (order < 1 || order > 4)
    throw error("gpd_series: truncation order must lie in 1..4, got " + std::to_string(order));

  Mat s = p;
  Mat q = k;
  if (order >= 2) {
    Mat pk = commutator(p, k);
    s -= 0.5 * pk;
    if (order >= 3) {
      s -= (1.0 / 6.0) * commutator(k, pk);
      q -= (1.0 / 12.0) * commutator(p, pk);
    }
    if (order >= 4) {
      s += (1.0 / 24.0) * commutator(p, commutator(p, pk));
      s -= (1.0 / 24.0) * commutator(k, commutator(k, pk));
    }
  }
  return GpdSeries{std::move(s), std::move(q)};
}

Mat dexpinv_apply(const Mat& a, const Mat& v, int order) {
  if (a.rows() != v.rows() || a.cols() != v.cols())
    throw shape_error("dexpinv_apply: shapes of A and V must match");
  a.require_square("dexpinv_apply");
  if (order < 1 || order > 8)
    throw error("dexpinv_apply: order must lie in 1..8, got " + std::to_string(order));

  const auto& bern = BernoulliTable::standard();
  Mat acc = v;  // j = 0, B_0 = 1
  Mat ad = v;
  double factorial = 1.0;
  for (int j = 1; j <= order; ++j) {
    ad = commutator(a, ad);
    factorial *= j;
    double bj = bern.value(j);
    if (bj != 0.0) acc += (bj / factorial) * ad;
  }
  return acc;
}

}  // namespace symspace
