#pragma once

#include "symspace/flow.hpp"

namespace symspace {

// Uniform isotropic periodic grid on [-L, L)^2, n points per dimension.
// Fields are stored row-major: u[i*n + j] = u(x_i, y_j). The grid must be
// square and isotropic so that transposition is an exact discrete symmetry.
struct Grid {
  int n;
  double length;
  double delta() const { return 2.0 * length / n; }
  double x(int i) const { return -length + i * delta(); }
};

State gaussian_field(const Grid& g, double coeff);  // exp(-coeff (x^2+y^2))

State transpose_field(int n, const State& u);
InvolutiveStateMap transpose_map(int n);
double transpose_defect(int n, const State& u);  // max |u(i,j) - u(j,i)|

// Circulant second-order central differences; dir 0 differentiates along x
// (the i index), dir 1 along y.
State d1_apply(const Grid& g, int dir, const State& u);  // [-1,0,1]/(2 delta)
State d2_apply(const Grid& g, int dir, const State& u);  // [1,-2,1]/delta^2

// Alternating-directions base flows for u_t = u_x + u_y + nonlin u^2, the
// nonlinearity split evenly between the two direction fields
// A_d = D1_d + nonlin/2 u^2. One call advances model time h.
//   fe:   forward-Euler solve of A_x for h, then A_y for h          (order 1)
//   heun: Heun half-step x, full step y, half-step x (symmetric)    (order 2)
Flow advection_pair_fe(const Grid& g, double nonlin);
Flow advection_pair_heun(const Grid& g, double nonlin);

// Selfadjoint base step for u_t = Laplacian u - u(u-1)^2 with the splitting
// F1 = D2_x + f/2, F2 = D2_y + f/2:
//   FE_{h/2,F1} ; FE_{h/2,F2} ; BE_{h/2,F2} ; BE_{h/2,F1}
// Implicit substeps decouple into per-line Newton solves (tol 1e-12,
// warm-started from the forward-Euler predictor). Field blow-up past 1e6 or a
// failed Newton solve raises diverged_error / convergence_error.
Flow stiff_base_flow(const Grid& g);

// Right-hand side of the semi-discrete stiff problem (for reference checks).
State stiff_rhs(const Grid& g, const State& u);

}  // namespace symspace
