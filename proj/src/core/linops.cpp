#include "core/linops.hpp"

#include <lapacke.h>

#include <algorithm>

extern "C" {
void dgemm_(const char* transa, const char* transb, const int* m, const int* n,
            const int* k, const double* alpha, const double* a, const int* lda,
            const double* b, const int* ldb, const double* beta, double* c,
            const int* ldc);
}

namespace dpnls {

LinearizedPair LinearizedPair::make(const GroundState& gs) {
  const RadialGrid& g = gs.grid;
  double pc = 4.0 / g.d;
  RealField cp(g.N), cm(g.N);
  for (int i = 0; i < g.N; ++i) {
    double qp = std::pow(std::abs(gs.Q[i]), pc);
    cp[i] = 1.0 - (1.0 + pc) * qp;
    cm[i] = 1.0 - qp;
  }
  LinearizedPair lp;
  lp.gs = &gs;
  lp.Lp = schrodinger_op(g, cp);
  lp.Lm = schrodinger_op(g, cm);
  lp.LambdaQ = apply_Lambda(g, gs.Q);
  RealField y2Q(g.N);
  for (int i = 0; i < g.N; ++i) y2Q[i] = g.r[i] * g.r[i] * gs.Q[i];
  lp.rho = solve_banded(lp.Lp, y2Q);
  return lp;
}

RealField apply_Lplus(const LinearizedPair& lp, const RealField& f) {
  return apply_banded(lp.Lp, f);
}
RealField apply_Lminus(const LinearizedPair& lp, const RealField& f) {
  return apply_banded(lp.Lm, f);
}

RealField solve_Lplus(const LinearizedPair& lp, const RealField& g) {
  return solve_banded(lp.Lp, g);
}

RealField solve_Lminus(const LinearizedPair& lp, const RealField& g) {
  const RadialGrid& gr = lp.gs->grid;
  const RealField& Q = lp.gs->Q;
  double gQ = inner(gr, g, Q);
  double gn = std::sqrt(norm2sq(gr, g)), Qn = std::sqrt(norm2sq(gr, Q));
  if (std::abs(gQ) > 1e-8 * std::max(gn * Qn, 1e-300))
    throw std::runtime_error("solve_Lminus: solvability violated, <g,Q> = " +
                             std::to_string(gQ));
  // deflate the (near-)kernel direction Q: project the rhs, cancel the
  // kernel contamination using the huge solution of L- x = Q, and gauge-fix
  RealField gp = g;
  double QQ = inner(gr, Q, Q);
  for (int i = 0; i < gr.N; ++i) gp[i] -= (gQ / QQ) * Q[i];
  RealField x1 = solve_banded(lp.Lm, gp);
  RealField x2 = solve_banded(lp.Lm, Q);
  double c = inner(gr, x1, Q) / inner(gr, x2, Q);
  RealField f(gr.N);
  for (int i = 0; i < gr.N; ++i) f[i] = x1[i] - c * x2[i];
  double fQ = inner(gr, f, Q);
  for (int i = 0; i < gr.N; ++i) f[i] -= (fQ / QQ) * Q[i];
  return f;
}

RealField apply_Lambda(const RadialGrid& g, const RealField& f) {
  RealField df = deriv(g, f);
  RealField out(g.N);
  for (int i = 0; i < g.N; ++i) out[i] = 0.5 * g.d * f[i] + g.r[i] * df[i];
  return out;
}
CplxField apply_Lambda(const RadialGrid& g, const CplxField& f) {
  CplxField df = deriv(g, f);
  CplxField out(g.N);
  for (int i = 0; i < g.N; ++i) out[i] = 0.5 * g.d * f[i] + g.r[i] * df[i];
  return out;
}

// ---- dense machinery for the coercivity estimate ----

namespace {

// col-major dense
struct Dense {
  int rows = 0, cols = 0;
  std::vector<double> a;
  Dense(int r, int c) : rows(r), cols(c), a((size_t)r * c, 0.0) {}
  double& at(int i, int j) { return a[(size_t)j * rows + i]; }
  double get(int i, int j) const { return a[(size_t)j * rows + i]; }
};

Dense matmul(const Dense& A, const Dense& B, bool transA = false) {
  int m = transA ? A.cols : A.rows;
  int k = transA ? A.rows : A.cols;
  Dense C(m, B.cols);
  double one = 1.0, zero = 0.0;
  const char* ta = transA ? "T" : "N";
  const char* tb = "N";
  dgemm_(ta, tb, &m, &C.cols, &k, &one, A.a.data(), &A.rows, B.a.data(),
         &B.rows, &zero, C.a.data(), &m);
  return C;
}

Dense banded_to_dense(const Banded& A) {
  Dense D(A.N, A.N);
  for (int i = 0; i < A.N; ++i)
    for (int j = std::max(0, i - 2); j <= std::min(A.N - 1, i + 2); ++j)
      D.at(i, j) = A.get(i, j);
  return D;
}

Dense deriv_dense(const RadialGrid& g) {
  Dense D(g.N, g.N);
  double c1[5] = {1.0, -8.0, 0.0, 8.0, -1.0};
  double ih1 = 1.0 / (12.0 * g.h);
  for (int i = 0; i < g.N; ++i)
    for (int o = -2; o <= 2; ++o) {
      int j = i + o;
      if (j < 0) j = (g.d == 1) ? -j : -j - 1;
      if (j >= g.N) continue;
      D.at(i, j) += c1[o + 2] * ih1;
    }
  return D;
}

double smallest_gen_eig(Dense A, Dense B) {
  int n = A.rows;
  std::vector<double> evals(n);
  int info = LAPACKE_dsygv(LAPACK_COL_MAJOR, 1, 'N', 'L', n, A.a.data(), n,
                           B.a.data(), n, evals.data());
  if (info != 0)
    throw std::runtime_error("dsygv failed, info=" + std::to_string(info));
  return evals[0];
}

// orthonormal basis of the orthogonal complement of the columns of C
Dense nullspace_basis(const Dense& C) {
  int n = C.rows, m = C.cols;
  Dense full(n, n);
  for (int j = 0; j < m; ++j)
    for (int i = 0; i < n; ++i) full.at(i, j) = C.get(i, j);
  std::vector<double> tau(m);
  int info = LAPACKE_dgeqrf(LAPACK_COL_MAJOR, n, m, full.a.data(), n, tau.data());
  if (info != 0) throw std::runtime_error("dgeqrf failed");
  info = LAPACKE_dorgqr(LAPACK_COL_MAJOR, n, n, m, full.a.data(), n, tau.data());
  if (info != 0) throw std::runtime_error("dorgqr failed");
  Dense Z(n, n - m);
  for (int j = 0; j < n - m; ++j)
    for (int i = 0; i < n; ++i) Z.at(i, j) = full.get(i, j + m);
  return Z;
}

}  // namespace

CoercivityReport coercivity_mu(int d, int N, double Rmax) {
  RadialGrid grid = RadialGrid::make(d, N, Rmax);
  GroundState gs = solve_Q(d, grid);
  LinearizedPair lp = LinearizedPair::make(gs);

  Dense W(N, N);
  for (int i = 0; i < N; ++i) W.at(i, i) = grid.w[i];
  Dense D = deriv_dense(grid);

  // H1 metric B = W + D^T W D
  Dense WD = matmul(W, D);
  Dense B = matmul(D, WD, /*transA=*/true);
  for (int i = 0; i < N; ++i) B.at(i, i) += grid.w[i];

  auto sym_form = [&](const Banded& L) {
    Dense Ld = banded_to_dense(L);
    Dense WL = matmul(W, Ld);
    Dense A(N, N);
    for (int j = 0; j < N; ++j)
      for (int i = 0; i < N; ++i)
        A.at(i, j) = 0.5 * (WL.get(i, j) + WL.get(j, i));
    return A;
  };
  Dense Ap = sym_form(lp.Lp);
  Dense Am = sym_form(lp.Lm);

  CoercivityReport rep;
  {
    Dense Wc(N, N);
    for (int i = 0; i < N; ++i) Wc.at(i, i) = grid.w[i];
    Dense Ap2 = Ap;
    rep.lambda_plus_min = smallest_gen_eig(Ap2, Wc);
  }

  // constraints: eps1 orthogonal to Q and |y|^2 Q, eps2 orthogonal to rho
  Dense Cp(N, 2), Cm(N, 1);
  for (int i = 0; i < N; ++i) {
    Cp.at(i, 0) = grid.w[i] * gs.Q[i];
    Cp.at(i, 1) = grid.w[i] * grid.r[i] * grid.r[i] * gs.Q[i];
    Cm.at(i, 0) = grid.w[i] * lp.rho[i];
  }
  {
    Dense Z = nullspace_basis(Cp);
    Dense AZ = matmul(Ap, Z);
    Dense BZ = matmul(B, Z);
    rep.mu_plus = smallest_gen_eig(matmul(Z, AZ, true), matmul(Z, BZ, true));
  }
  {
    Dense Z = nullspace_basis(Cm);
    Dense AZ = matmul(Am, Z);
    Dense BZ = matmul(B, Z);
    rep.mu_minus = smallest_gen_eig(matmul(Z, AZ, true), matmul(Z, BZ, true));
  }
  rep.mu = std::min(rep.mu_plus, rep.mu_minus);
  return rep;
}

}  // namespace dpnls
