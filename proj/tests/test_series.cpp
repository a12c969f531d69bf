#include <doctest.h>

#include <cmath>

#include "symspace/flow.hpp"
#include "symspace/involution.hpp"
#include "symspace/matfun.hpp"
#include "symspace/rng.hpp"
#include "symspace/series.hpp"

using namespace symspace;

namespace {

// forward series dexp_A(V) = sum_j ad_A^j(V)/(j+1)!, the test-side inverse of
// dexpinv; truncated far past the orders under test
Mat dexp_forward(const Mat& a, const Mat& v, int terms = 14) {
  Mat acc = v;
  Mat ad = v;
  double fact = 1.0;
  for (int j = 1; j <= terms; ++j) {
    ad = commutator(a, ad);
    fact *= (j + 1);
    acc += (1.0 / fact) * ad;
  }
  return acc;
}

}  // namespace

TEST_CASE("sym_bch trivial cases") {
  Rng rng(41);
  Mat x = random_mat(rng, 3, 3);
  Mat zero(3, 3);
  CHECK(fro_dist(sym_bch(x, zero, 3), 2.0 * x) < 1e-15);

  Mat dx = Mat::diag({0.3, -0.7, 1.1});
  Mat dy = Mat::diag({-0.2, 0.5, 0.9});
  CHECK(fro_dist(sym_bch(dx, dy, 3), 2.0 * dx + dy) < 1e-15);
}

TEST_CASE("sym_bch rejects unsupported truncation orders") {
  Mat x(3, 3);
  CHECK_THROWS_AS(sym_bch(x, x, 2), error);
  CHECK_THROWS_AS(sym_bch(x, x, 5), error);
}

TEST_CASE("sym_bch order-3 error decays at fifth order (logm-of-product oracle)") {
  Rng rng(42);
  Mat x = random_mat(rng, 3, 3);
  Mat y = random_mat(rng, 3, 3);
  x *= 1.0 / fro_norm(x);
  y *= 1.0 / fro_norm(y);
  std::vector<std::pair<double, double>> ladder;
  for (double eps : {1e-1, 1e-1 / 1.77827941, 1e-1 / 3.16227766, 1e-1 / 5.62341325, 1e-2}) {
    Mat truth = logm(expm(eps * x) * expm(eps * y) * expm(eps * x));
    double err = fro_dist(truth, sym_bch(eps * x, eps * y, 3));
    ladder.push_back({eps, err});
  }
  OrderEstimate est = estimate_order(ladder);
  CHECK(est.slope >= 4.7);
}

TEST_CASE("gpd_series forced truncation structure") {
  Rng rng(43);
  Mat p = random_mat(rng, 4, 4);
  Mat zero(4, 4);
  GpdSeries a = gpd_series(p, zero, 4);
  CHECK(fro_dist(a.s, p) == 0.0);
  CHECK(fro_norm(a.q) == 0.0);

  Mat k = random_mat(rng, 4, 4);
  GpdSeries b = gpd_series(zero, k, 4);
  CHECK(fro_norm(b.s) == 0.0);
  CHECK(fro_dist(b.q, k) == 0.0);

  CHECK_THROWS_AS(gpd_series(p, k, 5), error);
  CHECK_THROWS_AS(gpd_series(p, k, 0), error);
}

TEST_CASE("gpd_series order-4 factorization against exp and svd-polar oracles") {
  Rng rng(44);
  Involution inv = Involution::transpose_inverse();
  Mat dir = random_mat(rng, 4, 4);
  dir *= 1.0 / fro_norm(dir);

  double prev_prod = 0.0, prev_logs = 0.0;
  for (int i = 0; i < 2; ++i) {
    double nrm = (i == 0) ? 0.1 : 0.05;
    Mat x = nrm * dir;
    Splitting sp = split(x, inv);
    GpdSeries g = gpd_series(sp.p, sp.k, 4);
    double err_prod = fro_dist(expm(g.s) * expm(g.q), expm(x));

    // under transpose-inverse the exact S is logm of the spd polar factor
    SvdPolarResult pol = svd_polar(expm(x));
    double err_logs = fro_dist(g.s, logm(pol.s));

    if (i == 0) {
      prev_prod = err_prod;
      prev_logs = err_logs;
    } else {
      // halving ||X|| must shrink both fifth-order residuals by about 2^5
      CHECK(prev_prod / err_prod > std::pow(2.0, 4.5));
      CHECK(prev_prod / err_prod < std::pow(2.0, 5.5));
      CHECK(prev_logs / err_logs > std::pow(2.0, 4.5));
      CHECK(prev_logs / err_logs < std::pow(2.0, 5.5));
    }
  }
}

TEST_CASE("dexpinv trivial and order-1 forms") {
  Rng rng(45);
  Mat a = Mat::diag({1.0, 2.0, 3.0});
  Mat v = Mat::diag({-0.3, 0.8, 0.1});  // commutes with a
  CHECK(fro_dist(dexpinv_apply(a, v, 8), v) < 1e-15);

  Mat b = random_mat(rng, 3, 3), w = random_mat(rng, 3, 3);
  CHECK(fro_dist(dexpinv_apply(b, w, 1), w - 0.5 * commutator(b, w)) < 1e-14);
  CHECK_THROWS_AS(dexpinv_apply(b, w, 9), error);
  CHECK_THROWS_AS(dexpinv_apply(b, w, 0), error);
}

TEST_CASE("dexpinv inverts the forward series to truncation order") {
  Rng rng(46);
  Mat a = random_mat(rng, 3, 3);
  a *= 0.4 / fro_norm(a);
  Mat v = random_mat(rng, 3, 3);
  for (int order : {1, 2, 4}) {
    double e1 = fro_dist(dexp_forward(a, dexpinv_apply(a, v, order)), v);
    double e2 = fro_dist(dexp_forward(0.5 * a, dexpinv_apply(0.5 * a, v, order)), v);
    double slope = std::log2(e1 / e2);
    CHECK(e1 > 1e-12);  // measurable, not floored
    CHECK(slope > order + 0.5);  // error is O(||A||^{order+1})
  }
  // at order 8 and ||A|| = 0.1 the truncation error sits below roundoff
  Mat small = a * (0.1 / 0.4);
  CHECK(fro_dist(dexp_forward(small, dexpinv_apply(small, v, 8)), v) < 1e-13);
}

TEST_CASE("degree-5 diagnostic: fit of the recurrence tail coefficients") {
  // The order-4 surface is trusted; the degree-5 tail of the S-series is not
  // shipped because one printed term lacks a coefficient. This fit
  // establishes what a future extension would have to match: it regresses
  //   S_true - S_4  ~  c1 [K,[P,[P,[P,K]]]] + c2 [K,[K,[K,[P,K]]]]
  //                  + c3 [[P,K],[P,[P,K]]] + c4 [P,[P,[P,[P,K]]]]
  // (all degree-5 brackets spanning the gap in generic position).
  Rng rng(47);
  Involution inv = Involution::transpose_inverse();

  const int n = 4;
  const int samples = 6;
  const double t = 0.05;
  std::vector<std::vector<double>> rows;  // regression matrix, one row per entry
  std::vector<double> rhs;
  for (int s = 0; s < samples; ++s) {
    Splitting sp = split(random_mat(rng, n, n), inv);
    Mat p = t * sp.p, k = t * sp.k;
    GpdSeries g4 = gpd_series(p, k, 4);
    Mat s_true = logm(svd_polar(expm(p + k)).s);
    Mat resid = s_true - g4.s;

    Mat pk = commutator(p, k);
    Mat b1 = commutator(k, commutator(p, commutator(p, pk)));
    Mat b2 = commutator(k, commutator(k, commutator(k, pk)));
    Mat b3 = commutator(pk, commutator(p, pk));
    Mat b4 = commutator(p, commutator(p, commutator(p, pk)));
    for (int e = 0; e < n * n; ++e) {
      rows.push_back({b1.data()[e], b2.data()[e], b3.data()[e], b4.data()[e]});
      rhs.push_back(resid.data()[e]);
    }
  }
  // normal equations, 4x4
  Mat ata(4, 4), atb(4, 1);
  for (size_t r = 0; r < rows.size(); ++r) {
    for (int i = 0; i < 4; ++i) {
      for (int j = 0; j < 4; ++j) ata(i, j) += rows[r][i] * rows[r][j];
      atb(i, 0) += rows[r][i] * rhs[r];
    }
  }
  Mat coef = solve(ata, atb);
  // known published values for two of the brackets
  CHECK(coef(1, 0) == doctest::Approx(-1.0 / 120.0).epsilon(5e-2));
  CHECK(coef(2, 0) == doctest::Approx(-1.0 / 180.0).epsilon(5e-2));
  // the uncoefficiented bracket: report the fit; a sane magnitude is all we
  // assert (the printed bare coefficient 1 is clearly out of family)
  double c1 = coef(0, 0);
  MESSAGE("fitted [K,[P,[P,[P,K]]]] coefficient: ", c1, ", [P,[P,[P,[P,K]]]]: ", coef(3, 0));
  CHECK(std::fabs(c1) < 0.1);
}
