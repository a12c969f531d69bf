#pragma once

#include <functional>
#include <string>
#include <vector>

#include "symspace/involution.hpp"
#include "symspace/mat.hpp"

namespace symspace {

// Group factorization x = p k with sigma(p) = p^{-1}, sigma(k) = k.
struct PolarFactors {
  Mat p_factor;     // element of G_sigma
  Mat k_factor;     // element of G^sigma
  double residual;  // ||p k - x||_F
  double log_norm;  // ||log x||_F where applicable (0 for classical_polar)
};

// Series route: X = log x, split, commutator recurrence, exponentials.
// Residual scales as ||log x||^{order+1}. Callers should treat log_norm above
// 0.5 as outside the series' useful range.
PolarFactors generalized_polar(const Mat& x, const Involution& inv, int order);

// Classical polar decomposition by the Newton iteration y <- (y + y^{-T})/2.
// q is the orthogonal limit, s = x q^T.
PolarFactors classical_polar(const Mat& x, double tol = 1e-13, int max_iter = 50);

enum class AnalyticFn { Exp, Cos, Sin, CayleyResolvent };

AnalyticFn analytic_fn_from_id(const std::string& id);

enum class PsiBranch { Psi1, Psi2 };

// psi1(s) = (psi(sqrt s) - psi(-sqrt s)) / (2 sqrt s)
// psi2(s) = (psi(sqrt s) + psi(-sqrt s) - 2 psi(0)) / (2 s)
// Near s = 0 the removable singularity is evaluated by the even/odd Taylor
// expansion of the underlying function.
double psi_scalar(AnalyticFn fn, PsiBranch branch, double s);

// Evaluates psi(P) for a 2-cyclic P (S P S = -P, S involutive) through
//   psi(P) = psi(0) I + Psi1 P + P Psi1 + P Psi2 P + Psi2 Theta,
// Theta = P^2 Pi^-_S. The psi_i(Theta) factors are block-restricted to the
// minus block (zero on the plus block); the literal functional calculus would
// put psi_i(0) I there and already fails for psi(s) = s.
Mat analytic_fn_2cyclic(const Mat& p, const Mat& s, AnalyticFn fn);

// One state of the factored solution x(t) = exp(P(t)) exp(K(t)).
struct PolarCoordsState {
  double t;
  Mat p;
  Mat k;
};

// Integrates the coupled factor equations for x' = X(t) x, x(0) = I:
//   P' = Pi^- X - [P, Pi^+ X] + sum_{j=1}^{J} 2^{2j} c_{2j} ad_P^{2j} Pi^- X
//   K' = dexpinv_K( Pi^+ X - 2 sum_{j=1}^{J} (2^{2j}-1) c_{2j} ad_P^{2j-1} Pi^- X )
// with c_{2j} = B_{2j}/(2j)!, J = trunc/2, using a classical fixed-step RK4
// whose own error sits far below the series truncation being measured.
std::vector<PolarCoordsState> polar_coords_integrate(const std::function<Mat(double)>& xfun,
                                                     const Involution& inv, double t_end, double h,
                                                     int trunc);

}  // namespace symspace
