// Radial time-dependent solver for i u_t + Delta u + |u|^{4/d} u
// + eps |u|^{p-1} u = 0, eps in {-1, 0, +1}: Strang split-step with
// Crank-Nicolson linear steps (default) and a fully implicit midpoint
// scheme for conservation audits; plus the explicit critical blow-up
// solution S(t) used as a solver oracle.
#pragma once

#include "core/groundstate.hpp"

namespace dpnls {

enum class Scheme { SplitStep, ImplicitMidpoint };

struct FieldState {
  double t = 0.0;
  CplxField u;
};

class Evolver {
 public:
  Evolver(const RadialGrid& grid, double p, int eps,
          Scheme scheme = Scheme::SplitStep);

  void step(FieldState& st, double dt);

  const RadialGrid& grid() const { return grid_; }
  const Banded& lap() const { return lap_; }
  double p() const { return p_; }
  int eps() const { return eps_; }

 private:
  RadialGrid grid_;
  Banded lap_;  // weighted-symmetrized: exactly self-adjoint in the grid inner
                // product, so Crank-Nicolson / midpoint conserve mass
  double p_;
  int eps_;
  Scheme scheme_;
  double dt_cached_ = -1.0;
  CBandedLU lu_;

  void refactor(double dt);
  void nonlinear_phase(CplxField& u, double dt) const;
};

struct Monitor {
  double t = 0.0;
  double mass = 0.0, energy = 0.0, grad_norm = 0.0;
  double mass_drift = 0.0, energy_drift = 0.0;  // relative to initial
  bool blowup_triggered = false;
};

// steps with fixed dt from state.t to t_end, recording a monitor every
// `record_every` steps; stops early (flag, not throw) if ||grad u|| exceeds
// grad_factor times its initial value
std::vector<Monitor> evolve_interval(Evolver& ev, FieldState& st, double t_end,
                                     double dt, int record_every = 10,
                                     double grad_factor = 50.0);

// S(t,x) = |t|^{-d/2} Q(x/|t|) e^{-i|x|^2/(4|t|)} e^{i/|t|}, t < 0
CplxField exact_S(double t, const RadialGrid& xgrid, const GroundState& gs);

// cubic Hermite interpolation (4th-order slopes) of a radial field, with
// even reflection at the origin and zero beyond the last node
struct Interp {
  const RadialGrid* g = nullptr;
  CplxField f, df;
  Interp(const RadialGrid& grid, const CplxField& field);
  cplx operator()(double x) const;
};

}  // namespace dpnls
