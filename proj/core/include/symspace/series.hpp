#pragma once

#include "symspace/mat.hpp"

namespace symspace {

// Truncated symmetric BCH: Z with exp(Z) ~ exp(X) exp(Y) exp(X).
//   order 1:  Z = 2X + Y
//   order 3:  adds (1/6) ad_Y^2(X) - (1/6) ad_X^2(Y)
// Only orders 1 and 3 are supported; the degree-5 tail is not fully known to
// this library and is deliberately not shipped.
Mat sym_bch(const Mat& x, const Mat& y, int order);

// Commutator recurrence for the factor logs of exp(X) = exp(S) exp(Q),
// (P,K) the canonical split of X. Terms of total degree <= order, 1..4:
//   S = P - 1/2 [P,K] - 1/6 [K,[P,K]] + 1/24 [P,[P,[P,K]]] - 1/24 [K,[K,[P,K]]]
//   Q = K - 1/12 [P,[P,K]]
// Degree-5 terms are excluded (coefficient defect in the source recurrence);
// orders above 4 are rejected.
struct GpdSeries {
  Mat s;  // lies in p for split inputs
  Mat q;  // lies in k for split inputs
};

GpdSeries gpd_series(const Mat& p, const Mat& k, int order);

// dexpinv_A(V) truncated at `order`: sum_{j=0}^{order} B_j/j! ad_A^j(V).
// Accepts order in 1..8.
Mat dexpinv_apply(const Mat& a, const Mat& v, int order);

}  // namespace symspace
