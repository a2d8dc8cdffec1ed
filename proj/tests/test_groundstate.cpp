#include "doctest.h"

#include "core/groundstate.hpp"

using namespace dpnls;

namespace {
const GroundState& q1d() {
  static GroundState gs = solve_Q(1, RadialGrid::make(1, 4096, 30.0));
  return gs;
}
}  // namespace

TEST_CASE("d=1 ground state matches the closed form") {
  const GroundState& gs = q1d();
  RealField ex = exact_Q1d(gs.grid);
  double sup = 0.0;
  for (int i = 0; i < gs.grid.N; ++i)
    sup = std::max(sup, std::abs(gs.Q[i] - ex[i]));
  CHECK(sup < 1e-7);
  double mref = M_PI * std::sqrt(3.0) / 2.0;  // ||Q||_2^2 for d=1
  CHECK(std::abs(gs.mass / mref - 1.0) < 1e-7);
  CHECK(std::abs(gs.Q[0] - std::pow(3.0, 0.25)) < 1e-7);
}

TEST_CASE("ground state central values in d=2,3") {
  // frozen from independent shooting solves of the radial ODE
  RadialGrid g2 = RadialGrid::make(2, 2048, 20.0);
  GroundState gs2 = solve_Q(2, g2);
  CHECK(gs2.Q[0] == doctest::Approx(2.2062).epsilon(5e-3));
  RadialGrid g3 = RadialGrid::make(3, 2048, 20.0);
  GroundState gs3 = solve_Q(3, g3);
  CHECK(gs3.Q[0] == doctest::Approx(4.1917).epsilon(5e-3));
}

TEST_CASE("critical energy of Q vanishes (Pohozaev)") {
  const GroundState& gs = q1d();
  double E = energy(gs.grid, gs.Q, 3.0, 0);
  CHECK(std::abs(E) < 1e-8 * gs.grad2);
  CHECK(std::abs(gn_defect(gs.grid, CplxField(gs.Q.begin(), gs.Q.end()),
                           gs)) < 5e-8);
}

TEST_CASE("gn_defect is nonnegative away from Q") {
  const GroundState& gs = q1d();
  CplxField u(gs.grid.N);
  for (int i = 0; i < gs.grid.N; ++i)
    u[i] = 1.3 * std::exp(-0.7 * gs.grid.r[i] * gs.grid.r[i]);
  CHECK(gn_defect(gs.grid, u, gs) > 0.0);
}

TEST_CASE("solve_QM enforces the subcritical-mass constraint") {
  RadialGrid g = RadialGrid::make(1, 1024, 40.0);
  GroundState gs = solve_Q(1, g);
  CHECK_THROWS(solve_QM(1.1 * std::sqrt(gs.mass), 3.0, 1, g));
}

TEST_CASE("solve_QM satisfies its equation and the mass constraint") {
  RadialGrid g = RadialGrid::make(1, 4096, 80.0);
  GroundState gs = solve_Q(1, RadialGrid::make(1, 1024, 30.0));
  double M = 0.6 * std::sqrt(gs.mass);
  GroundState qm = solve_QM(M, 3.0, 1, g);
  CHECK(qm.resid < 1e-10);
  CHECK(std::abs(qm.mass / (M * M) - 1.0) < 1e-10);
  CHECK(qm.omega > 0.0);
  CHECK(qm.Q[0] > 0.0);
}
