// Ground state Q of -Q'' + Q - Q^{1+4/d} = 0 (radial) and the small
// solitary waves Q_M of the double-power equation at prescribed mass.
#pragma once

#include "core/numcore.hpp"

namespace dpnls {

struct GroundState {
  RadialGrid grid;
  RealField Q;      // positive, decreasing
  double omega = 1.0;
  double mass = 0.0;    // ||Q||_2^2
  double grad2 = 0.0;   // ||grad Q||_2^2
  double yQ2 = 0.0;     // int |y|^2 Q^2
  double resid = 0.0;   // sup-norm equation residual

  double p_norm(double q) const;  // ||Q||_q^q
};

// critical ground state, omega = 1
GroundState solve_Q(int d, const RadialGrid& grid);

// exact d=1 profile 3^{1/4} sech^{1/2}(2r) for oracles
RealField exact_Q1d(const RadialGrid& grid);

// mass-constrained solitary wave for the double-power equation
//   Delta Q - omega Q + Q^{1+4/d} + Q^p = 0,  ||Q_M||_2 = M < ||Q||_2
GroundState solve_QM(double M, double p, int d, const RadialGrid& grid);

// E(u) = 1/2 ||grad u||^2 - int F(|u|) - eps * int G(|u|)
// with F(q) = q^{2+4/d} d/(2d+4), G(q) = q^{p+1}/(p+1).
double energy(const RadialGrid& g, const CplxField& u, double p, int eps);
double energy(const RadialGrid& g, const RealField& u, double p, int eps);

// E_crit(u) - 1/2 ||grad u||^2 [1 - (||u||_2/||Q||_2)^{4/d}]  (>= 0 by the
// sharp Gagliardo-Nirenberg inequality; 0 at u = Q)
double gn_defect(const RadialGrid& g, const CplxField& u, const GroundState& gs);

}  // namespace dpnls
