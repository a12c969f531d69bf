#include <doctest.h>

#include <cmath>

#include "symspace/eig.hpp"
#include "symspace/matfun.hpp"
#include "symspace/rng.hpp"

using namespace symspace;

TEST_CASE("expm closed forms") {
  CHECK(fro_dist(expm(Mat(3, 3)), Mat::identity(3)) == 0.0);

  Mat d = Mat::diag({std::log(2.0), 0.0});
  CHECK(fro_dist(expm(d), Mat::diag({2.0, 1.0})) < 1e-15);

  Mat a = Mat::from_rows({{0.0, -0.5}, {0.5, 0.0}});
  Mat expect = Mat::from_rows({{std::cos(0.5), -std::sin(0.5)}, {std::sin(0.5), std::cos(0.5)}});
  CHECK(fro_dist(expm(a), expect) < 1e-15);
}

TEST_CASE("expm inverse identity for norms up to 5") {
  Rng rng(101);
  for (int t = 0; t < 10; ++t) {
    Mat a = random_mat(rng, 4, 4);
    a *= 5.0 / fro_norm(a);
    CHECK(fro_dist(expm(a) * expm(-a), Mat::identity(4)) < 1e-11);
  }
}

TEST_CASE("expm overflow becomes a diverged signal") {
  Mat a = Mat::diag({800.0, -800.0});
  CHECK_THROWS_AS(expm(a), diverged_error);
}

TEST_CASE("logm closed forms and round trip") {
  CHECK(fro_norm(logm(Mat::identity(3))) < 1e-15);
  CHECK(fro_dist(logm(Mat::diag({2.0, 1.0})), Mat::diag({std::log(2.0), 0.0})) < 1e-14);

  Rng rng(102);
  for (int t = 0; t < 8; ++t) {
    Mat a = random_mat(rng, 4, 4);
    a *= 1.0 / fro_norm(a);
    CHECK(fro_dist(logm(expm(a)), a) < 1e-10);
    Mat x = expm(a);
    CHECK(fro_dist(expm(logm(x)), x) < 1e-11);
  }
}

TEST_CASE("logm of spd by eigendecomposition oracle") {
  // A = Q^T D Q with known D: log A = Q^T log(D) Q
  Rng rng(103);
  Mat q = random_orthogonal(rng, 2);
  Mat a = transpose(q) * Mat::diag({1.2, 3.4}) * q;
  Mat expect = transpose(q) * Mat::diag({std::log(1.2), std::log(3.4)}) * q;
  CHECK(fro_dist(logm(a), expect) < 1e-13);
}

TEST_CASE("logm rejects spectrum on the cut, naming the eigenvalue") {
  Mat neg = Mat::diag({-1.0, 2.0});
  CHECK_THROWS_WITH_AS(logm(neg), doctest::Contains("-1"), domain_error);
  Mat sing = Mat::from_rows({{1.0, 1.0}, {1.0, 1.0}});
  CHECK_THROWS_AS(logm(sing), domain_error);
}

TEST_CASE("sqrtm closed forms and residual oracle") {
  CHECK(fro_dist(sqrtm(Mat::identity(3)), Mat::identity(3)) < 1e-15);
  CHECK(fro_dist(sqrtm(Mat::diag({4.0, 9.0})), Mat::diag({2.0, 3.0})) < 1e-14);

  Rng rng(104);
  for (int t = 0; t < 8; ++t) {
    Mat a = random_spd(rng, 5, 1e3);
    Mat r = sqrtm(a);
    CHECK(fro_dist(r * r, a) < 1e-11);
  }
}

TEST_CASE("sqrtm rejects negative real eigenvalues") {
  CHECK_THROWS_AS(sqrtm(Mat::diag({-4.0, 1.0})), domain_error);
}

TEST_CASE("ad_power") {
  Mat a = Mat::diag({1.0, 2.0});
  Mat v = Mat::from_rows({{0.0, 1.0}, {0.0, 0.0}});
  CHECK(fro_dist(ad_power(a, v, 0), v) == 0.0);
  CHECK(fro_dist(ad_power(a, v, 1), Mat::from_rows({{0.0, -1.0}, {0.0, 0.0}})) < 1e-15);

  Rng rng(105);
  Mat x = random_mat(rng, 4, 4), w = random_mat(rng, 4, 4);
  CHECK(fro_dist(ad_power(x, w, 2), commutator(x, commutator(x, w))) < 1e-13);
  CHECK_THROWS_AS(ad_power(Mat(3, 3), Mat(4, 4), 1), shape_error);
}

TEST_CASE("svd_polar factors and residuals") {
  Rng rng(106);
  Mat q0 = random_orthogonal(rng, 4);
  SvdPolarResult on_orth = svd_polar(q0);
  CHECK(fro_dist(on_orth.s, Mat::identity(4)) < 1e-13);
  CHECK(fro_dist(on_orth.q, q0) < 1e-13);

  Mat spd = random_spd(rng, 4, 10.0);
  SvdPolarResult on_spd = svd_polar(spd);
  CHECK(fro_dist(on_spd.s, spd) < 1e-13);
  CHECK(fro_dist(on_spd.q, Mat::identity(4)) < 1e-13);

  for (int t = 0; t < 10; ++t) {
    Mat a = random_with_condition(rng, 5, 1e3);
    SvdPolarResult r = svd_polar(a);
    CHECK(fro_dist(r.s * r.q, a) < 1e-12);
    CHECK(fro_dist(transpose(r.q) * r.q, Mat::identity(5)) < 1e-13);
    CHECK(fro_dist(r.s, transpose(r.s)) < 1e-13);
    auto eigs = eigenvalues(r.s);
    for (const auto& l : eigs) CHECK(l.real() > 0.0);
  }
}

TEST_CASE("svd_polar rejects singular input") {
  Mat a = Mat::from_rows({{1.0, 2.0}, {2.0, 4.0}});
  CHECK_THROWS_AS(svd_polar(a), domain_error);
}

TEST_CASE("eigenvalues on constructed spectra") {
  Rng rng(107);
  // distinct real spectrum through a similarity
  Mat t = random_with_condition(rng, 4, 10.0);
  Mat a = t * Mat::diag({1.0, -2.0, 3.5, 0.25}) * inverse(t);
  auto eigs = eigenvalues(a);
  std::vector<double> got;
  for (auto& l : eigs) {
    CHECK(std::fabs(l.imag()) < 1e-8);
    got.push_back(l.real());
  }
  std::sort(got.begin(), got.end());
  std::vector<double> want{-2.0, 0.25, 1.0, 3.5};
  for (int i = 0; i < 4; ++i) CHECK(got[i] == doctest::Approx(want[i]).epsilon(1e-8));

  // complex pair from a rotation block
  Mat r = Mat::from_rows({{0.3, -1.1}, {1.1, 0.3}});
  auto ce = eigenvalues(r);
  CHECK(std::fabs(ce[0].real() - 0.3) < 1e-12);
  CHECK(std::fabs(std::fabs(ce[0].imag()) - 1.1) < 1e-12);
}
