// Radial grids, quadrature, banded finite-difference operators, Newton iteration.
#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace dpnls {

using cplx = std::complex<double>;
using RealField = std::vector<double>;
using CplxField = std::vector<cplx>;

// Uniform radial grid carrying the d-dimensional measure in its quadrature
// weights: sum_i w_i phi(r_i) ~ int_{R^d} phi(|x|) dx.
// d=1: nodes r_i = i*h (node at the origin, even reflection across 0),
//      trapezoid weights times |S^0| = 2; Dirichlet ghost at r = N*h.
// d>=2: staggered nodes r_i = (i+1/2)h (no division by zero at the origin),
//      midpoint weights times |S^{d-1}| r^{d-1}.
struct RadialGrid {
  int d = 1;
  int N = 0;
  double Rmax = 0.0;
  double h = 0.0;
  std::vector<double> r;
  std::vector<double> w;

  static RadialGrid make(int d, int N, double Rmax);
};

double surface_const(int d);  // |S^{d-1}|: 2, 2*pi, 4*pi

// Quadrature inner products. inner() is Re int u conj(v) dx.
double inner(const RadialGrid& g, const RealField& f, const RealField& v);
double inner(const RadialGrid& g, const CplxField& f, const CplxField& v);
double norm2sq(const RadialGrid& g, const RealField& f);
double norm2sq(const RadialGrid& g, const CplxField& f);

// Pentadiagonal operator, diag[k] holds the (i, i+k-2) entries.
// Out-of-range columns have been folded (origin reflection) or dropped
// (Dirichlet ghost beyond Rmax) by the builders below.
struct Banded {
  int N = 0;
  std::array<std::vector<double>, 5> diag;

  void init(int n) {
    N = n;
    for (auto& v : diag) v.assign(n, 0.0);
  }
  double& at(int i, int j) { return diag[j - i + 2][i]; }
  double get(int i, int j) const {
    int k = j - i + 2;
    if (k < 0 || k > 4 || j < 0 || j >= N) return 0.0;
    return diag[k][i];
  }
  void add_diag(const RealField& c) {
    for (int i = 0; i < N; ++i) diag[2][i] += c[i];
  }
  void scale(double s) {
    for (auto& v : diag)
      for (auto& x : v) x *= s;
  }
};

RealField apply_banded(const Banded& A, const RealField& x);
CplxField apply_banded(const Banded& A, const CplxField& x);

// Direct banded solves (LAPACK dgbsv/zgbsv under the hood).
RealField solve_banded(const Banded& A, const RealField& rhs);

// Complex pentadiagonal with cached factorization (time stepping reuses it).
struct CBandedLU {
  int N = 0;
  std::vector<cplx> ab;  // LAPACK band storage, factored
  std::vector<int> ipiv;
  void factor(const Banded& re, const Banded& im);  // A = re + i*im
  CplxField solve(const CplxField& rhs) const;
};

// 4th-order discrete Laplacian d^2/dr^2 + (d-1)/r d/dr with even reflection
// at the origin and zero Dirichlet ghosts beyond Rmax.
Banded laplacian_op(const RadialGrid& g);
// -Delta + diag(c)
Banded schrodinger_op(const RadialGrid& g, const RealField& c);

// 4th-order radial first derivative (even reflection / Dirichlet as above).
RealField deriv(const RadialGrid& g, const RealField& f);
CplxField deriv(const RadialGrid& g, const CplxField& f);

double grad_norm2sq(const RadialGrid& g, const RealField& f);  // int |f'|^2 dx
double grad_norm2sq(const RadialGrid& g, const CplxField& f);

// Laplacian as a plain function application (spec op laplacian_radial).
RealField laplacian_radial(const RadialGrid& g, const RealField& f);
CplxField laplacian_radial(const RadialGrid& g, const CplxField& f);

struct NewtonReport {
  int iters = 0;
  double resid = 0.0;
  bool converged = false;
};

// Damped Newton: step_fn returns delta with J delta = residual; we take
// x <- x - s*delta, halving s until the sup-norm residual decreases.
RealField newton_solve(const std::function<RealField(const RealField&)>& residual_fn,
                       const std::function<RealField(const RealField&, const RealField&)>& step_fn,
                       RealField x0, double tol, int max_iter, NewtonReport* rep = nullptr);

double sup_norm(const RealField& f);
double sup_norm(const CplxField& f);

}  // namespace dpnls
