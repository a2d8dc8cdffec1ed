// Full simulation driver: well-prepared initial data u(t1) =
// lambda1^{-d/2} P_{b1}(x/lambda1), split-step evolution with the time step
// slaved to the concentration scale (dt = ds * lambda^2), and periodic
// modulation decomposition along the way.
#pragma once

#include "core/analysis.hpp"
#include "core/reducedlaw.hpp"

namespace dpnls {

struct RunParams {
  int d = 1;
  double p = 3.0;
  int K = 2;
  double E0 = 0.0;
  double lambda0 = 0.1;   // reference scale entering the invariant
  double lambda1 = 0.02;  // initial concentration scale
  double stop_factor = 10.0;  // stop once lambda <= lambda1/stop_factor
  double eps_tube = 0.3;      // abort threshold on ||eps||_{H1}

  int Nx = 1 << 15;
  double Rmax_x = 4.0;
  int Ny = 2048;
  double Rmax_y = 30.0;

  double ds = 5e-4;         // rescaled-time step
  int decompose_every = 10; // PDE steps between decompositions
  double A_moraw = 10.0;
};

struct RunSample {
  double t = 0.0, s = 0.0;
  double lambda = 0.0, b = 0.0, gamma = 0.0;
  double grad_norm = 0.0, mass_drift = 0.0, energy_drift = 0.0;
  double eps_l2 = 0.0, eps_h1 = 0.0, inner_eps_Q = 0.0;
  double mod[3] = {0, 0, 0};  // filled post hoc (centered s-differences)
  double H = 0.0, J = 0.0, S = 0.0;
  double H_quad = 0.0;  // 1/2<L+ e1,e1> + 1/2<L- e2,e2> of the unwound eps
};

enum class StopReason { TargetScale, GridResolution, TubeExit, StepLimit };

struct RunResult {
  RunParams prm;
  LawConstants law;
  double s1 = 0.0, b1 = 0.0, mass0 = 0.0, energy0 = 0.0;
  std::vector<RunSample> samples;
  StopReason stop = StopReason::StepLimit;
};

RunResult run_minimal_mass(const RunParams& rp, const GroundState& gs,
                           const LinearizedPair& lp, const ProfileCoeffs& pc);

}  // namespace dpnls
