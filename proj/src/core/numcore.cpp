#include "core/numcore.hpp"

#include <lapacke.h>

#include <algorithm>
#include <cstring>

namespace dpnls {

double surface_const(int d) {
  switch (d) {
    case 1: return 2.0;
    case 2: return 2.0 * M_PI;
    case 3: return 4.0 * M_PI;
  }
  throw std::invalid_argument("dimension must be 1, 2 or 3");
}

RadialGrid RadialGrid::make(int d, int N, double Rmax) {
  if (d < 1 || d > 3) throw std::invalid_argument("dimension must be 1, 2 or 3");
  if (N < 8) throw std::invalid_argument("grid needs N >= 8");
  RadialGrid g;
  g.d = d;
  g.N = N;
  g.Rmax = Rmax;
  g.h = Rmax / N;
  g.r.resize(N);
  g.w.resize(N);
  double S = surface_const(d);
  if (d == 1) {
    // node at the origin; trapezoid on [0, Rmax] with the Rmax endpoint a
    // Dirichlet ghost, doubled for the two half-lines
    for (int i = 0; i < N; ++i) {
      g.r[i] = i * g.h;
      g.w[i] = (i == 0) ? g.h : 2.0 * g.h;
    }
  } else {
    // staggered midpoints, measure S r^{d-1} dr
    for (int i = 0; i < N; ++i) {
      g.r[i] = (i + 0.5) * g.h;
      g.w[i] = S * std::pow(g.r[i], d - 1) * g.h;
    }
  }
  return g;
}

double inner(const RadialGrid& g, const RealField& f, const RealField& v) {
  double s = 0.0;
  for (int i = 0; i < g.N; ++i) s += g.w[i] * f[i] * v[i];
  return s;
}

double inner(const RadialGrid& g, const CplxField& f, const CplxField& v) {
  double s = 0.0;
  for (int i = 0; i < g.N; ++i)
    s += g.w[i] * (f[i].real() * v[i].real() + f[i].imag() * v[i].imag());
  return s;
}

double norm2sq(const RadialGrid& g, const RealField& f) { return inner(g, f, f); }
double norm2sq(const RadialGrid& g, const CplxField& f) { return inner(g, f, f); }

// ghost-index reflection: even extension across r=0
static inline int fold_index(const RadialGrid& g, int j) {
  if (j >= 0) return j;
  return (g.d == 1) ? -j : -j - 1;
}

RealField apply_banded(const Banded& A, const RealField& x) {
  RealField y(A.N, 0.0);
  for (int k = 0; k < 5; ++k) {
    int off = k - 2;
    int i0 = std::max(0, -off), i1 = std::min(A.N, A.N - off);
    const double* dk = A.diag[k].data();
    for (int i = i0; i < i1; ++i) y[i] += dk[i] * x[i + off];
  }
  return y;
}

CplxField apply_banded(const Banded& A, const CplxField& x) {
  CplxField y(A.N, cplx(0.0));
  for (int k = 0; k < 5; ++k) {
    int off = k - 2;
    int i0 = std::max(0, -off), i1 = std::min(A.N, A.N - off);
    const double* dk = A.diag[k].data();
    for (int i = i0; i < i1; ++i) y[i] += dk[i] * x[i + off];
  }
  return y;
}

static const int KL = 2, KU = 2;

RealField solve_banded(const Banded& A, const RealField& rhs) {
  int n = A.N;
  int ldab = 2 * KL + KU + 1;
  std::vector<double> ab((size_t)ldab * n, 0.0);
  for (int j = 0; j < n; ++j)
    for (int i = std::max(0, j - KU); i <= std::min(n - 1, j + KL); ++i)
      ab[(size_t)j * ldab + (KL + KU + i - j)] = A.get(i, j);
  std::vector<int> ipiv(n);
  RealField x = rhs;
  int info = LAPACKE_dgbsv(LAPACK_COL_MAJOR, n, KL, KU, 1, ab.data(), ldab,
                           ipiv.data(), x.data(), n);
  if (info != 0)
    throw std::runtime_error("banded solve failed (singular system?), info=" +
                             std::to_string(info));
  return x;
}

void CBandedLU::factor(const Banded& re, const Banded& im) {
  N = re.N;
  int ldab = 2 * KL + KU + 1;
  ab.assign((size_t)ldab * N, cplx(0.0));
  for (int j = 0; j < N; ++j)
    for (int i = std::max(0, j - KU); i <= std::min(N - 1, j + KL); ++i)
      ab[(size_t)j * ldab + (KL + KU + i - j)] = cplx(re.get(i, j), im.get(i, j));
  ipiv.assign(N, 0);
  int info = LAPACKE_zgbtrf(LAPACK_COL_MAJOR, N, N, KL, KU,
                            reinterpret_cast<lapack_complex_double*>(ab.data()),
                            ldab, ipiv.data());
  if (info != 0)
    throw std::runtime_error("complex banded factorization failed, info=" +
                             std::to_string(info));
}

CplxField CBandedLU::solve(const CplxField& rhs) const {
  CplxField x = rhs;
  int ldab = 2 * KL + KU + 1;
  int info = LAPACKE_zgbtrs(LAPACK_COL_MAJOR, 'N', N, KL, KU, 1,
                            reinterpret_cast<const lapack_complex_double*>(ab.data()),
                            ldab, ipiv.data(),
                            reinterpret_cast<lapack_complex_double*>(x.data()), N);
  if (info != 0) throw std::runtime_error("complex banded backsolve failed");
  return x;
}

// 4th-order stencils:  f'' ~ (-1 16 -30 16 -1)/12h^2,  f' ~ (1 -8 0 8 -1)/12h
Banded laplacian_op(const RadialGrid& g) {
  Banded A;
  A.init(g.N);
  double c2[5] = {-1.0, 16.0, -30.0, 16.0, -1.0};
  double c1[5] = {1.0, -8.0, 0.0, 8.0, -1.0};
  double ih2 = 1.0 / (12.0 * g.h * g.h);
  double ih1 = 1.0 / (12.0 * g.h);
  for (int i = 0; i < g.N; ++i) {
    double a1 = (g.d > 1) ? (g.d - 1) / g.r[i] : 0.0;
    for (int o = -2; o <= 2; ++o) {
      int j = fold_index(g, i + o);
      if (j >= g.N) continue;  // Dirichlet ghost
      // ghosts across r=0 use the even extension f(-r)=f(r), which keeps the
      // stencils 4th order (smooth radial fields are even in r)
      A.at(i, j) += c2[o + 2] * ih2 + a1 * c1[o + 2] * ih1;
    }
  }
  return A;
}

Banded schrodinger_op(const RadialGrid& g, const RealField& c) {
  Banded A = laplacian_op(g);
  A.scale(-1.0);
  A.add_diag(c);
  return A;
}

template <class T>
static std::vector<T> deriv_impl(const RadialGrid& g, const std::vector<T>& f) {
  double c1[5] = {1.0, -8.0, 0.0, 8.0, -1.0};
  double ih1 = 1.0 / (12.0 * g.h);
  std::vector<T> out(g.N, T(0.0));
  for (int i = 0; i < g.N; ++i) {
    T s(0.0);
    for (int o = -2; o <= 2; ++o) {
      int j = fold_index(g, i + o);
      if (j >= g.N) continue;
      s += c1[o + 2] * f[j];
    }
    out[i] = s * ih1;
  }
  return out;
}

RealField deriv(const RadialGrid& g, const RealField& f) { return deriv_impl(g, f); }
CplxField deriv(const RadialGrid& g, const CplxField& f) { return deriv_impl(g, f); }

double grad_norm2sq(const RadialGrid& g, const RealField& f) {
  return norm2sq(g, deriv(g, f));
}
double grad_norm2sq(const RadialGrid& g, const CplxField& f) {
  return norm2sq(g, deriv(g, f));
}

RealField laplacian_radial(const RadialGrid& g, const RealField& f) {
  return apply_banded(laplacian_op(g), f);
}
CplxField laplacian_radial(const RadialGrid& g, const CplxField& f) {
  return apply_banded(laplacian_op(g), f);
}

double sup_norm(const RealField& f) {
  double m = 0.0;
  for (double v : f) m = std::max(m, std::abs(v));
  return m;
}
double sup_norm(const CplxField& f) {
  double m = 0.0;
  for (const cplx& v : f) m = std::max(m, std::abs(v));
  return m;
}

RealField newton_solve(const std::function<RealField(const RealField&)>& residual_fn,
                       const std::function<RealField(const RealField&, const RealField&)>& step_fn,
                       RealField x, double tol, int max_iter, NewtonReport* rep) {
  RealField res = residual_fn(x);
  double rn = sup_norm(res);
  int it = 0;
  for (; it < max_iter && rn >= tol; ++it) {
    RealField delta = step_fn(x, res);
    double s = 1.0;
    bool accepted = false;
    for (int half = 0; half < 30; ++half) {
      RealField trial(x.size());
      for (size_t i = 0; i < x.size(); ++i) trial[i] = x[i] - s * delta[i];
      RealField tres = residual_fn(trial);
      double tn = sup_norm(tres);
      if (tn < rn) {
        x = std::move(trial);
        res = std::move(tres);
        rn = tn;
        accepted = true;
        break;
      }
      s *= 0.5;
    }
    if (!accepted) break;  // line-search stall
  }
  if (rep) {
    rep->iters = it;
    rep->resid = rn;
    rep->converged = (rn < tol);
  }
  if (!rep && rn >= tol)
    throw std::runtime_error("newton_solve failed to converge, residual=" +
                             std::to_string(rn));
  return x;
}

}  // namespace dpnls
