// Linearized operators L+ = -Delta + 1 - (1+4/d) Q^{4/d} and
// L- = -Delta + 1 - Q^{4/d} around the ground state, their constrained
// solves, and the coercivity constant of the quadratic form.
#pragma once

#include "core/groundstate.hpp"

namespace dpnls {

struct LinearizedPair {
  const GroundState* gs = nullptr;
  Banded Lp, Lm;
  RealField rho;        // L+ rho = |y|^2 Q, computed once and cached
  RealField LambdaQ;    // (d/2 + r d/dr) Q

  static LinearizedPair make(const GroundState& gs);
};

RealField apply_Lplus(const LinearizedPair& lp, const RealField& f);
RealField apply_Lminus(const LinearizedPair& lp, const RealField& f);

// direct solve; L+ has trivial kernel on radial decaying fields
RealField solve_Lplus(const LinearizedPair& lp, const RealField& g);

// L- f = g needs <g,Q> = 0; the Q kernel direction is deflated and the
// solution gauge-fixed so <f,Q> = 0
RealField solve_Lminus(const LinearizedPair& lp, const RealField& g);

// generalized Lambda = d/2 + r d/dr
RealField apply_Lambda(const RadialGrid& g, const RealField& f);
CplxField apply_Lambda(const RadialGrid& g, const CplxField& f);

struct CoercivityReport {
  double mu = 0.0;          // constrained minimum of the quadratic form / H1 norm
  double mu_plus = 0.0;     // L+ part (orthogonal to Q and |y|^2 Q)
  double mu_minus = 0.0;    // L- part (orthogonal to rho)
  double lambda_plus_min = 0.0;  // unconstrained bottom of L+ (negative)
};

// dense constrained generalized eigensolve on its own small grid
CoercivityReport coercivity_mu(int d, int N = 640, double Rmax = 20.0);

}  // namespace dpnls
