#pragma once

#include <functional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "symspace/errors.hpp"

namespace symspace {

using State = std::vector<double>;
using StepFn = std::function<State(double, const State&)>;
using StateFn = std::function<State(const State&)>;

double inf_norm(const State& v);
double inf_dist(const State& a, const State& b);

// How a flow's one-step map is inverted.
struct AnalyticInverse {
  StepFn inverse;  // inverse(h, y1) = y0 with step(h, y0) = y1
};
struct AnalyticAdjoint {
  StepFn adjoint;  // the adjoint method; step(h,.)^{-1} = adjoint(-h, .)
};
struct NewtonInvert {
  double tol = 1e-12;
  int max_iter = 50;
};
using Inversion = std::variant<AnalyticInverse, AnalyticAdjoint, NewtonInvert>;

// A one-step numerical map y -> step(h, y). Steppers must be pure; composed
// flows are value-like and freely copyable.
struct Flow {
  StepFn step;
  int declared_order = 1;
  Inversion inversion = NewtonInvert{};
  // base-stepper evaluations consumed per call: 2^k for Thue-Morse level k,
  // 3^k for the selfadjoint symmetrization, 1 for plain methods
  long period_steps = 1;
  // model time advanced per call in units of h: a Thue-Morse macro runs its
  // whole pattern at base step h (2^k units), while triple jumps and the
  // Scovel projection split h into substeps (1 unit)
  long h_units_per_call = 1;
};

struct InvolutiveStateMap {
  StateFn apply;
  std::string name;
};

// y0 with step(h, y0) = y1, resolved per the flow's inversion strategy.
State invert_step(const Flow& flow, double h, const State& y1);

// T . step(h, T(.)). Order and period are preserved.
Flow conjugate_flow(const Flow& flow, const InvolutiveStateMap& t);

// Involutive automorphism acting on flows. State-space symmetries conjugate
// by an involutive map; time reversal sends a method m to m(-h) so that its
// symmetric elements sigma(m) = m^{-1} are exactly the selfadjoint methods.
struct FlowInvolution {
  enum class Kind { StateMap, TimeReversal };
  Kind kind = Kind::StateMap;
  InvolutiveStateMap map;  // StateMap only

  static FlowInvolution state_map(InvolutiveStateMap m) {
    return FlowInvolution{Kind::StateMap, std::move(m)};
  }
  static FlowInvolution time_reversal() {
    return FlowInvolution{Kind::TimeReversal, InvolutiveStateMap{nullptr, "time-reversal"}};
  }
};

// sigma(flow) as a method.
Flow transform_flow(const Flow& flow, const FlowInvolution& sigma);

// Scovel projection: psi_h = phi_{h/2} o sigma(phi_{h/2}^{-1}), each factor
// at h/2. The result satisfies sigma(psi) = psi^{-1} identically, up to the
// inversion tolerance.
Flow scovel(const Flow& flow, const FlowInvolution& sigma);
Flow scovel(const Flow& flow, const InvolutiveStateMap& t);

// Thue-Morse pattern of level k: "0", "01", "0110", "01101001", ...
// conjugate = true starts the recursion from sigma(phi), giving complements.
std::string thue_morse_pattern(int k, bool conjugate = false);

// Level-k Thue-Morse composition; one call runs the whole 2^k-symbol pattern
// with base step h ('0' = phi_h, '1' = T phi_h T). Symmetry is preserved to
// order p+k at macro-step boundaries only, hence defect sampling must stay on
// multiples of 2^k base steps.
Flow thue_morse(const Flow& flow, const InvolutiveStateMap& t, int k, bool conjugate = false);

struct YoshidaCoefficients {
  double alpha;
  double beta;  // 2 alpha + beta = 1, 2 alpha^{2p+1} + beta^{2p+1} = 0
};
YoshidaCoefficients yoshida_coefficients(int p);

// Triple jump phi_{alpha h} o phi_{beta h} o phi_{alpha h}; raises a
// selfadjoint order-2p method to order 2p+2. beta < 0 for every p.
Flow yoshida(const Flow& flow, int p);

struct SymmetrizeCoefficients {
  double a;
  double b;  // 2a + b = 1, 2 a^{2p+1} - b^{2p+1} = 0; both positive
};
SymmetrizeCoefficients symmetrize_coefficients(int p);

// Positive-step symmetrization phi_{a h} o sigma(phi_{b h}) o phi_{a h} for a
// selfadjoint order-2p base with symmetry candidate T. Each iteration raises
// the symmetry order by two (p -> p+1 when recomputing a, b) while the global
// order stays 2p.
Flow symmetrize_selfadjoint(const Flow& flow, const InvolutiveStateMap& t, int p, int iterations);

enum class DefectMode { Symmetry, Reversing };

// n_steps counts base-stepper evaluations and must be a multiple of the
// flow's macro-step period; mid-pattern sampling is an error.
// Symmetry:  || T(Phi(T(y0))) - Phi(y0) ||_inf
// Reversing: || T(Phi(T(Phi(y0)))) - y0 ||_inf
double symmetry_defect(const Flow& flow, const InvolutiveStateMap& t, const State& y0, double h,
                       long n_steps, DefectMode mode);

// || step(-h, step(h, y0)) - y0 ||_inf; vanishes exactly for selfadjoint
// methods, is O(h^2) e.g. for forward Euler.
double selfadjoint_defect(const Flow& flow, double h, const State& y0);

struct OrderEstimate {
  double slope = 0.0;
  double intercept = 0.0;
  double residual = 0.0;                         // max |log-error deviation|
  std::vector<std::pair<double, double>> ladder;  // (h, error), h decreasing
};

// Least-squares slope of log(error) against log(h). Points at or below the
// 1e-14 error floor are dropped; at least 4 usable points are required.
OrderEstimate estimate_order(std::vector<std::pair<double, double>> ladder);

}  // namespace symspace
