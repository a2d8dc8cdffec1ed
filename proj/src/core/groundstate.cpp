#include "core/groundstate.hpp"

#include <algorithm>

namespace dpnls {

double GroundState::p_norm(double q) const {
  double s = 0.0;
  for (int i = 0; i < grid.N; ++i) s += grid.w[i] * std::pow(std::abs(Q[i]), q);
  return s;
}

static void fill_scalars(GroundState& gs) {
  const RadialGrid& g = gs.grid;
  gs.mass = norm2sq(g, gs.Q);
  gs.grad2 = grad_norm2sq(g, gs.Q);
  double s = 0.0;
  for (int i = 0; i < g.N; ++i) s += g.w[i] * g.r[i] * g.r[i] * gs.Q[i] * gs.Q[i];
  gs.yQ2 = s;
}

RealField exact_Q1d(const RadialGrid& grid) {
  RealField q(grid.N);
  double c = std::pow(3.0, 0.25);
  for (int i = 0; i < grid.N; ++i) q[i] = c / std::sqrt(std::cosh(2.0 * grid.r[i]));
  return q;
}

GroundState solve_Q(int d, const RadialGrid& grid) {
  double pc = 4.0 / d;  // critical nonlinearity exponent minus one is pc
  Banded negDelta = laplacian_op(grid);
  negDelta.scale(-1.0);

  auto residual = [&](const RealField& u) {
    RealField res = apply_banded(negDelta, u);
    for (int i = 0; i < grid.N; ++i)
      res[i] += u[i] - std::pow(std::abs(u[i]), pc) * u[i];
    return res;
  };
  auto step = [&](const RealField& u, const RealField& res) {
    RealField c(grid.N);
    for (int i = 0; i < grid.N; ++i)
      c[i] = 1.0 - (1.0 + pc) * std::pow(std::abs(u[i]), pc);
    Banded J = schrodinger_op(grid, c);
    return solve_banded(J, res);
  };

  // rounding floor of the residual is eps * ||stencil|| ~ eps/h^2
  double tol = std::max(1e-12, 4e-15 / (grid.h * grid.h));

  // Newton can collapse to u=0; scan seed amplitudes until we land in the
  // nontrivial basin (Q(0) is ~1.3 / 2.2 / 4.3 for d=1/2/3)
  for (double c0 = 1.0; c0 <= 6.05; c0 += 0.25) {
    RealField seed(grid.N);
    for (int i = 0; i < grid.N; ++i) seed[i] = c0 * std::exp(-grid.r[i] * grid.r[i]);
    NewtonReport rep;
    RealField u = newton_solve(residual, step, seed, tol, 60, &rep);
    if (rep.converged && sup_norm(u) > 0.5 && u[0] > 0.0) {
      GroundState gs;
      gs.grid = grid;
      gs.Q = std::move(u);
      gs.omega = 1.0;
      gs.resid = rep.resid;
      fill_scalars(gs);
      return gs;
    }
  }
  throw std::runtime_error("solve_Q: no seed in the scan converged to a nontrivial state");
}

GroundState solve_QM(double M, double p, int d, const RadialGrid& grid) {
  double pc = 4.0 / d;
  if (p <= 1.0 || p >= 1.0 + pc)
    throw std::invalid_argument("solve_QM: need 1 < p < 1 + 4/d");
  const int N = grid.N;

  // reject M >= ||Q||_2
  {
    GroundState qs = solve_Q(d, grid);
    if (M >= std::sqrt(qs.mass))
      throw std::invalid_argument("solve_QM: mass must be below the critical threshold");
  }

  auto nonlin = [&](double q) {
    return std::pow(std::abs(q), pc) * q + std::pow(std::abs(q), p - 1.0) * q;
  };

  // normalized gradient flow (backward Euler on the Laplacian, project back
  // onto the mass sphere each step)
  double tau = 1.0;
  RealField ones(N, 1.0 / tau);
  Banded Aflow = schrodinger_op(grid, ones);  // -Delta + 1/tau
  RealField u(N);
  for (int i = 0; i < N; ++i) u[i] = std::exp(-grid.r[i] * grid.r[i] / 4.0);
  {
    double nm = std::sqrt(norm2sq(grid, u));
    for (auto& v : u) v *= M / nm;
  }
  double omega = 0.5;
  for (int it = 0; it < 800; ++it) {
    RealField rhs(N);
    for (int i = 0; i < N; ++i) rhs[i] = u[i] / tau + nonlin(u[i]);
    RealField un = solve_banded(Aflow, rhs);
    double nm = std::sqrt(norm2sq(grid, un));
    for (auto& v : un) v *= M / nm;
    double diff = 0.0;
    for (int i = 0; i < N; ++i) diff = std::max(diff, std::abs(un[i] - u[i]));
    u = std::move(un);
    if (diff / tau < 1e-9 && it > 20) break;
  }
  // Lagrange multiplier estimate from the stationarity relation
  {
    RealField lap = laplacian_radial(grid, u);
    double num = inner(grid, lap, u);
    for (int i = 0; i < N; ++i)
      num += grid.w[i] * (std::pow(std::abs(u[i]), pc + 2.0) +
                          std::pow(std::abs(u[i]), p + 1.0));
    omega = num / (M * M);
  }

  // bordered Newton polish on (u, omega) with the mass constraint
  Banded negDelta = laplacian_op(grid);
  negDelta.scale(-1.0);
  for (int it = 0; it < 40; ++it) {
    RealField res = apply_banded(negDelta, u);
    for (int i = 0; i < N; ++i) res[i] += omega * u[i] - nonlin(u[i]);
    double res2 = norm2sq(grid, u) - M * M;
    double rn = std::max(sup_norm(res), std::abs(res2));
    if (rn < std::max(1e-12, 4e-15 / (grid.h * grid.h))) break;
    RealField c(N);
    for (int i = 0; i < N; ++i)
      c[i] = omega - (1.0 + pc) * std::pow(std::abs(u[i]), pc) -
             p * std::pow(std::abs(u[i]), p - 1.0);
    Banded J = schrodinger_op(grid, c);
    RealField a = solve_banded(J, res);
    RealField b = solve_banded(J, u);
    double domega = (2.0 * inner(grid, u, a) - res2) / (2.0 * inner(grid, u, b));
    for (int i = 0; i < N; ++i) u[i] -= a[i] - domega * b[i];
    omega -= domega;
  }

  GroundState gs;
  gs.grid = grid;
  gs.Q = std::move(u);
  gs.omega = omega;
  {
    RealField res = apply_banded(negDelta, gs.Q);
    for (int i = 0; i < N; ++i) res[i] += omega * gs.Q[i] - nonlin(gs.Q[i]);
    gs.resid = sup_norm(res);
  }
  fill_scalars(gs);
  return gs;
}

double energy(const RadialGrid& g, const CplxField& u, double p, int eps) {
  int d = g.d;
  double cF = d / (2.0 * d + 4.0), eF = 2.0 + 4.0 / d;
  double E = 0.5 * grad_norm2sq(g, u);
  for (int i = 0; i < g.N; ++i) {
    double a = std::abs(u[i]);
    E -= g.w[i] * (cF * std::pow(a, eF) + eps * std::pow(a, p + 1.0) / (p + 1.0));
  }
  return E;
}

double energy(const RadialGrid& g, const RealField& u, double p, int eps) {
  CplxField v(u.begin(), u.end());
  return energy(g, v, p, eps);
}

double gn_defect(const RadialGrid& g, const CplxField& u, const GroundState& gs) {
  int d = g.d;
  double cF = d / (2.0 * d + 4.0), eF = 2.0 + 4.0 / d;
  double intF = 0.0;
  for (int i = 0; i < g.N; ++i) intF += g.w[i] * cF * std::pow(std::abs(u[i]), eF);
  double ratio = std::pow(norm2sq(g, u) / gs.mass, 2.0 / d);  // (||u||/||Q||)^{4/d}
  return 0.5 * grad_norm2sq(g, u) * ratio - intF;
}

}  // namespace dpnls
