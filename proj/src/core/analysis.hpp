// Modulation decomposition u = lambda^{-d/2} (P_b + eps)(x/lambda) e^{i gamma},
// Mod(s) residual diagnostics, the energy-Morawetz Lyapunov functionals
// H, J, S, and power-law rate fitting.
#pragma once

#include "core/evolve.hpp"
#include "core/profile.hpp"

namespace dpnls {

struct ModState {
  double s = 0.0, t = 0.0;
  double lambda = 1.0, b = 0.0, gamma = 0.0;
};

struct Decomposition {
  ModState mod;
  CplxField eps;            // on the profile grid (y frame)
  double ortho_resid[3] = {0, 0, 0};
  double eps_l2 = 0.0, eps_h1 = 0.0;
  double inner_eps_Q = 0.0;
};

// Newton solve of the three orthogonality conditions
//   <eps, i Lambda P_b> = <eps, |y|^2 P_b> = <eps, i rho_b> = 0
// with analytic parameter derivatives; guess must be in the closeness tube.
Decomposition decompose(const RadialGrid& xgrid, const CplxField& u,
                        const ProfileCoeffs& pc, const LinearizedPair& lp,
                        ModState guess);

// rebuild u on the x grid from a decomposition (for round-trip checks)
CplxField reconstruct(const RadialGrid& xgrid, const ProfileCoeffs& pc,
                      const ModState& mod, const CplxField& eps);

// Morawetz weight: phi''(r) pieces with phi(r) = r^2/2 (r<1), 3r+e^{-r}+c
// (r>2), bridged so that phi' is C^1 and monotone (the gradient is what the
// functional uses; the additive constant is immaterial).
double phi_prime(double r);
double phiA_prime(double r, double A);

struct LyapunovValues {
  double H = 0.0, J = 0.0, S = 0.0;
};

// H = 1/2 ||grad eps||^2 + 1/2 ||eps||^2
//     - int [F(Pb+eps) - F(Pb) - dF(Pb).eps]
//     - lambda^alpha int [G(Pb+eps) - G(Pb) - dG(Pb).eps]
// J = 1/2 Im int phiA' deps/dr conj(eps);  S = (H + b J)/lambda^4
LyapunovValues lyapunov(const ProfileCoeffs& pc, const Decomposition& dec,
                        double A = 10.0);

struct RateFit {
  double exponent = 0.0, amplitude = 0.0, r2 = 0.0;
  double Tstar = 0.0;  // fitted blow-up time (0 if not fitted)
  double window_lo = 0.0, window_hi = 0.0;
};

// least squares of log(q) against log(Tstar - t); if fit_Tstar, the blow-up
// time is optimized (golden section on the fit SSE), else Tstar = 0
RateFit fit_rate(const std::vector<double>& t, const std::vector<double>& q,
                 bool fit_Tstar);

// centered nonuniform finite differences of (lambda, b, gamma) in s;
// returns per-sample (b + lambda_s/lambda, b_s + b^2 - theta, 1 - gamma_s)
std::vector<std::array<double, 3>> mod_residuals(
    const std::vector<ModState>& traj, const ProfileCoeffs& pc);

}  // namespace dpnls
