#include <doctest.h>

#include <cmath>

#include "symspace/bernoulli.hpp"
#include "symspace/gpd.hpp"
#include "symspace/matfun.hpp"
#include "symspace/rng.hpp"

using namespace symspace;

namespace {

// dense Taylor evaluation of cos(P) / sin(P), good for moderate norms
Mat dense_cos(const Mat& p) {
  const int n = p.rows();
  Mat acc = Mat::identity(n);
  Mat term = Mat::identity(n);
  Mat p2 = p * p;
  for (int k = 1; k <= 40; ++k) {
    term = term * p2;
    term *= -1.0 / ((2.0 * k - 1.0) * (2.0 * k));
    acc += term;
    if (max_abs(term) < 1e-18) break;
  }
  return acc;
}

Mat dense_sin(const Mat& p) {
  const int n = p.rows();
  Mat acc = p;
  Mat term = p;
  Mat p2 = p * p;
  for (int k = 1; k <= 40; ++k) {
    term = term * p2;
    term *= -1.0 / ((2.0 * k) * (2.0 * k + 1.0));
    acc += term;
    if (max_abs(term) < 1e-18) break;
  }
  return acc;
}

Mat random_2cyclic(Rng& rng, int minus_dim, int plus_dim, double scale, Mat& s_out) {
  int n = minus_dim + plus_dim;
  std::vector<double> d(n, 1.0);
  for (int i = 0; i < minus_dim; ++i) d[i] = -1.0;
  s_out = Mat::diag(d);
  Mat p(n, n);
  for (int i = 0; i < minus_dim; ++i)
    for (int j = minus_dim; j < n; ++j) {
      p(i, j) = scale * rng.gauss();
      p(j, i) = scale * rng.gauss();
    }
  return p;
}

}  // namespace

TEST_CASE("classical_polar closed forms") {
  Rng rng(61);
  Mat q = random_orthogonal(rng, 4);
  PolarFactors f = classical_polar(q);
  CHECK(fro_dist(f.k_factor, q) < 1e-13);
  CHECK(fro_dist(f.p_factor, Mat::identity(4)) < 1e-13);

  Mat d = Mat::diag({2.0, 0.5});
  PolarFactors g = classical_polar(d);
  CHECK(fro_dist(g.p_factor, d) < 1e-13);
  CHECK(fro_dist(g.k_factor, Mat::identity(2)) < 1e-13);
}

TEST_CASE("classical_polar agrees with the svd oracle") {
  Rng rng(62);
  for (int t = 0; t < 10; ++t) {
    Mat a = random_with_condition(rng, 5, 1e3);
    PolarFactors f = classical_polar(a);
    SvdPolarResult s = svd_polar(a);
    CHECK(fro_dist(f.k_factor, s.q) < 1e-11);
    CHECK(f.residual < 1e-12);
  }
}

TEST_CASE("classical_polar reports non-convergence with the last residual") {
  Rng rng(63);
  Mat a = random_with_condition(rng, 4, 100.0);
  try {
    classical_polar(a, 1e-13, 1);
    FAIL("expected convergence_error");
  } catch (const convergence_error& e) {
    CHECK(e.last_residual > 0.0);
  }
}

TEST_CASE("generalized_polar closed forms under transpose-inverse") {
  Rng rng(64);
  Mat q = expm(0.2 * random_skew(rng, 4));  // orthogonal near I
  PolarFactors f = generalized_polar(q, Involution::transpose_inverse(), 4);
  CHECK(fro_dist(f.p_factor, Mat::identity(4)) < 1e-10);
  CHECK(fro_dist(f.k_factor, q) < 1e-10);

  Mat spd = expm(0.2 * random_symmetric(rng, 4));
  PolarFactors g = generalized_polar(spd, Involution::transpose_inverse(), 4);
  CHECK(fro_dist(g.p_factor, spd) < 1e-10);
  CHECK(fro_dist(g.k_factor, Mat::identity(4)) < 1e-10);
}

TEST_CASE("generalized_polar on SO(3) under inner(diag(-1,1,1)): k fixes e1") {
  Rng rng(65);
  Mat x = expm(0.25 * random_skew(rng, 3));
  PolarFactors f = generalized_polar(x, Involution::inner(Mat::diag({-1.0, 1.0, 1.0})), 4);
  // k-factor has the block form [[1, 0],[0, q2]] with q2 in SO(2)
  CHECK(std::fabs(f.k_factor(0, 0) - 1.0) < 1e-9);
  CHECK(std::fabs(f.k_factor(0, 1)) < 1e-9);
  CHECK(std::fabs(f.k_factor(0, 2)) < 1e-9);
  CHECK(std::fabs(f.k_factor(1, 0)) < 1e-9);
  CHECK(std::fabs(f.k_factor(2, 0)) < 1e-9);
  double det2 = f.k_factor(1, 1) * f.k_factor(2, 2) - f.k_factor(1, 2) * f.k_factor(2, 1);
  CHECK(det2 == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(f.log_norm > 0.0);
}

TEST_CASE("generalized_polar rejects bad orders and propagates logm domain errors") {
  Mat x = Mat::identity(3);
  CHECK_THROWS_AS(generalized_polar(x, Involution::transpose_inverse(), 5), error);
  CHECK_THROWS_AS(generalized_polar(Mat::diag({-1.0, 1.0, 1.0}),
                                    Involution::transpose_inverse(), 3),
                  domain_error);
}

TEST_CASE("psi_scalar closed forms") {
  CHECK(psi_scalar(AnalyticFn::Exp, PsiBranch::Psi1, 0.0) == doctest::Approx(1.0));
  CHECK(psi_scalar(AnalyticFn::Exp, PsiBranch::Psi2, 0.0) == doctest::Approx(0.5));
  CHECK(psi_scalar(AnalyticFn::Exp, PsiBranch::Psi1, 1.0) == doctest::Approx(std::sinh(1.0)));
  CHECK(psi_scalar(AnalyticFn::Exp, PsiBranch::Psi2, 1.0) ==
        doctest::Approx(std::cosh(1.0) - 1.0));
  CHECK(psi_scalar(AnalyticFn::Cos, PsiBranch::Psi1, 4.0) == 0.0);
  CHECK(psi_scalar(AnalyticFn::Cos, PsiBranch::Psi2, 4.0) ==
        doctest::Approx((std::cos(2.0) - 1.0) / 4.0));
  // negative s crosses to the trigonometric/hyperbolic side
  CHECK(psi_scalar(AnalyticFn::Exp, PsiBranch::Psi1, -1.0) == doctest::Approx(std::sin(1.0)));
  CHECK(psi_scalar(AnalyticFn::Sin, PsiBranch::Psi1, -4.0) ==
        doctest::Approx(std::sinh(2.0) / 2.0));
  // across the Taylor switch the two evaluations agree to the closed form's
  // cancellation level (~eps/s)
  double left = psi_scalar(AnalyticFn::Exp, PsiBranch::Psi2, 9.9e-7);
  double right = psi_scalar(AnalyticFn::Exp, PsiBranch::Psi2, 1.01e-6);
  CHECK(std::fabs(left - right) < 2e-9);
  CHECK_THROWS_AS(psi_scalar(AnalyticFn::CayleyResolvent, PsiBranch::Psi1, 4.0), domain_error);
}

TEST_CASE("2-cyclic exp reproduces the cosh/sinh closed form") {
  Mat p = Mat::from_rows({{0.0, 1.0}, {1.0, 0.0}});
  Mat s = Mat::diag({-1.0, 1.0});
  Mat got = analytic_fn_2cyclic(p, s, AnalyticFn::Exp);
  Mat want = Mat::from_rows({{std::cosh(1.0), std::sinh(1.0)}, {std::sinh(1.0), std::cosh(1.0)}});
  CHECK(fro_dist(got, want) < 1e-13);
}

TEST_CASE("2-cyclic evaluation equals dense oracles for exp, cos, sin, cayley") {
  Rng rng(66);
  for (int t = 0; t < 12; ++t) {
    Mat s;
    int m = 2 + static_cast<int>(rng.next_u64() % 2);   // minus block 2..3
    int pl = 2 + static_cast<int>(rng.next_u64() % 2);  // plus block 2..3
    Mat p = random_2cyclic(rng, m, pl, 0.6, s);
    CHECK(fro_dist(analytic_fn_2cyclic(p, s, AnalyticFn::Exp), expm(p)) < 1e-10);
    CHECK(fro_dist(analytic_fn_2cyclic(p, s, AnalyticFn::Cos), dense_cos(p)) < 1e-10);
    CHECK(fro_dist(analytic_fn_2cyclic(p, s, AnalyticFn::Sin), dense_sin(p)) < 1e-10);
    Mat cay = solve(Mat::identity(p.rows()) - 0.5 * p, Mat::identity(p.rows()));
    CHECK(fro_dist(analytic_fn_2cyclic(p, s, AnalyticFn::CayleyResolvent), cay) < 1e-10);
  }
}

TEST_CASE("2-cyclic rejects inputs that are not 2-cyclic") {
  Mat s = Mat::diag({-1.0, 1.0});
  Mat p = Mat::from_rows({{0.5, 1.0}, {1.0, 0.0}});  // diagonal entry breaks SPS = -P
  CHECK_THROWS_AS(analytic_fn_2cyclic(p, s, AnalyticFn::Exp), domain_error);
  Mat not_inv = Mat::diag({-2.0, 1.0});
  CHECK_THROWS_AS(analytic_fn_2cyclic(Mat(2, 2), not_inv, AnalyticFn::Exp), domain_error);
}

TEST_CASE("polar coordinates: k-only field stays in k") {
  Involution inv = Involution::inner(Mat::diag({-1.0, 1.0, 1.0}));
  // Pi^- X = 0 for this X: lower-right so(2) block only
  Mat x = Mat::from_rows({{0.0, 0.0, 0.0}, {0.0, 0.0, -0.7}, {0.0, 0.7, 0.0}});
  auto traj = polar_coords_integrate([&](double) { return x; }, inv, 1.0, 0.05, 6);
  const auto& last = traj.back();
  CHECK(last.t == doctest::Approx(1.0));
  CHECK(fro_norm(last.p) < 1e-14);
  CHECK(fro_dist(last.k, x) < 1e-12);  // K(t) = t X at t = 1
}

TEST_CASE("polar coordinates coefficient law: 2^2 c_2 = 1/3") {
  const auto& bt = BernoulliTable::standard();
  double c2 = bt.value(2) / 2.0;  // B_2/(2!)
  CHECK(4.0 * c2 == doctest::Approx(1.0 / 3.0));
}

TEST_CASE("polar coordinates factorization against the exact flow") {
  Rng rng(67);
  Involution inv = Involution::inner(Mat::diag({-1.0, 1.0, 1.0}));
  Mat x = random_skew(rng, 3);
  x *= 0.5 / fro_norm(x);
  auto traj = polar_coords_integrate([&](double) { return x; }, inv, 1.0, 1e-2, 6);
  const auto& last = traj.back();
  CHECK(fro_dist(expm(last.p) * expm(last.k), expm(x)) < 1e-7);
}

TEST_CASE("polar coordinates validates its arguments") {
  Involution inv = Involution::transpose_inverse();
  auto xfun = [](double) { return Mat::identity(3); };
  CHECK_THROWS_AS(polar_coords_integrate(xfun, inv, 1.0, -0.1, 6), error);
  CHECK_THROWS_AS(polar_coords_integrate(xfun, inv, 1.0, 0.1, 13), error);
}
