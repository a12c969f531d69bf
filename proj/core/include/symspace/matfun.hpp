#pragma once

#include "symspace/mat.hpp"

namespace symspace {

// Principal matrix exponential: scaling and squaring with a diagonal [6/6]
// Pade approximant; the norm is scaled below 0.5 before the approximant.
// Overflow surfaces as diverged_error, never a crash.
Mat expm(const Mat& a);

// Principal logarithm by inverse scaling and squaring: repeated principal
// square roots until close to I, then a Gauss-Legendre (diagonal Pade)
// evaluation of log(I+E). Requires spectrum off the closed negative axis.
Mat logm(const Mat& a);

// Principal square root via the Denman-Beavers iteration.
Mat sqrtm(const Mat& a);

// ad_A^j(V) where ad_A(V) = AV - VA; j = 0 returns V.
Mat ad_power(const Mat& a, const Mat& v, int j);

struct SvdPolarResult {
  Mat s;  // symmetric positive definite factor
  Mat q;  // orthogonal factor
};

// Polar decomposition A = s q computed from a one-sided Jacobi SVD.
// Independent of the Newton iteration in the gpd module; serves as its oracle.
SvdPolarResult svd_polar(const Mat& a);

}  // namespace symspace
