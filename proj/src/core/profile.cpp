#include "core/profile.hpp"

#include <map>
#include <utility>

namespace dpnls {

namespace {

using Key = std::pair<int, int>;  // (m, n): b^m mu^n, mu = lambda^alpha

// bivariate polynomial in (b, mu) with complex radial fields as coefficients
struct FPoly {
  int N = 0, mmax = 0, nmax = 0;
  std::map<Key, CplxField> c;

  FPoly(int N_, int mmax_, int nmax_) : N(N_), mmax(mmax_), nmax(nmax_) {}

  void add(int m, int n, const CplxField& f, cplx s = cplx(1.0)) {
    if (m < 0 || n < 0 || m > mmax || n > nmax) return;
    auto it = c.find({m, n});
    if (it == c.end()) it = c.emplace(Key{m, n}, CplxField(N, cplx(0.0))).first;
    for (int i = 0; i < N; ++i) it->second[i] += s * f[i];
  }
  void add(const FPoly& o, cplx s = cplx(1.0)) {
    for (auto& [k, f] : o.c) add(k.first, k.second, f, s);
  }
  CplxField coeff(int m, int n) const {
    auto it = c.find({m, n});
    if (it == c.end()) return CplxField(N, cplx(0.0));
    return it->second;
  }
};

// scalar-coefficient companion (theta, b_s, mu_s)
struct SPoly {
  std::map<Key, double> c;
  void add(int m, int n, double v) { c[{m, n}] += v; }
};

FPoly mul(const FPoly& a, const FPoly& b) {
  FPoly out(a.N, a.mmax, a.nmax);
  for (auto& [ka, fa] : a.c)
    for (auto& [kb, fb] : b.c) {
      int m = ka.first + kb.first, n = ka.second + kb.second;
      if (m > out.mmax || n > out.nmax) continue;
      auto it = out.c.find({m, n});
      if (it == out.c.end())
        it = out.c.emplace(Key{m, n}, CplxField(out.N, cplx(0.0))).first;
      for (int i = 0; i < out.N; ++i) it->second[i] += fa[i] * fb[i];
    }
  return out;
}

FPoly mul(const FPoly& a, const SPoly& s, cplx extra = cplx(1.0)) {
  FPoly out(a.N, a.mmax, a.nmax);
  for (auto& [ka, fa] : a.c)
    for (auto& [ks, v] : s.c)
      out.add(ka.first + ks.first, ka.second + ks.second, fa, extra * v);
  return out;
}

FPoly conj_poly(const FPoly& a) {
  FPoly out(a.N, a.mmax, a.nmax);
  for (auto& [k, f] : a.c) {
    CplxField g(f.size());
    for (size_t i = 0; i < f.size(); ++i) g[i] = std::conj(f[i]);
    out.c.emplace(k, std::move(g));
  }
  return out;
}

double gbinom(double e, int k) {
  double v = 1.0;
  for (int i = 0; i < k; ++i) v *= (e - i) / (i + 1);
  return v;
}

// Taylor sum of (1+z)^{e1} (1+zbar)^{e2} up to total power <= ord
FPoly binom_product(const FPoly& z, double e1, double e2, int ord) {
  FPoly zb = conj_poly(z);
  FPoly out(z.N, z.mmax, z.nmax);
  // powers of z and zbar, built incrementally
  std::vector<FPoly> zp, zbp;
  zp.emplace_back(z.N, z.mmax, z.nmax);
  zp[0].add(0, 0, CplxField(z.N, cplx(1.0)));
  zbp.push_back(zp[0]);
  for (int k = 1; k <= ord; ++k) {
    zp.push_back(mul(zp[k - 1], z));
    zbp.push_back(mul(zbp[k - 1], zb));
  }
  for (int a = 0; a <= ord; ++a)
    for (int cc = 0; a + cc <= ord; ++cc) {
      FPoly term = mul(zp[a], zbp[cc]);
      out.add(term, gbinom(e1, a) * gbinom(e2, cc));
    }
  return out;
}

struct BuildCtx {
  const ProfileCoeffs* pc;
  const Banded* lap;
  int mmax, nmax;
};

FPoly assemble_P(const BuildCtx& ctx) {
  const ProfileCoeffs& pc = *ctx.pc;
  const RadialGrid& g = pc.gs->grid;
  FPoly P(g.N, ctx.mmax, ctx.nmax);
  CplxField Qc(pc.gs->Q.begin(), pc.gs->Q.end());
  P.add(0, 0, Qc);
  for (int j = 0; j <= pc.K; ++j)
    for (int k = 0; j + k <= pc.K; ++k) {
      if ((int)pc.Pp.size() <= j || (int)pc.Pp[j].size() <= k) continue;
      if (pc.Pp[j][k].empty()) continue;
      CplxField pp(pc.Pp[j][k].begin(), pc.Pp[j][k].end());
      CplxField pm(pc.Pm[j][k].begin(), pc.Pm[j][k].end());
      P.add(2 * j, k + 1, pp);
      P.add(2 * j + 1, k + 1, pm, cplx(0.0, 1.0));
    }
  return P;
}

SPoly assemble_theta(const ProfileCoeffs& pc) {
  SPoly th;
  for (int j = 0; j <= pc.K; ++j)
    for (int k = 0; j + k <= pc.K; ++k) {
      if ((int)pc.beta.size() <= j || (int)pc.beta[j].size() <= k) continue;
      if (pc.Pp[j][k].empty()) continue;
      th.add(2 * j, k + 1, pc.beta[j][k]);
    }
  return th;
}

// G = i P_s + Delta P - P + f(P) + mu g(P) + theta r^2/4 P, as a polynomial
// in (b, mu) with the currently solved coefficients substituted and the
// modulation rates b_s = theta - b^2, mu_s = -alpha b mu.
FPoly eval_G(const BuildCtx& ctx) {
  const ProfileCoeffs& pc = *ctx.pc;
  const RadialGrid& g = pc.gs->grid;
  const RealField& Q = pc.gs->Q;
  int d = pc.prm.d;
  double p = pc.prm.p, alpha = pc.prm.alpha;

  FPoly P = assemble_P(ctx);
  SPoly th = assemble_theta(pc);

  // d/ds through the rates
  FPoly Pdb(g.N, ctx.mmax, ctx.nmax), Pdmu(g.N, ctx.mmax, ctx.nmax);
  for (auto& [k, f] : P.c) {
    if (k.first > 0) Pdb.add(k.first - 1, k.second, f, (double)k.first);
    if (k.second > 0) Pdmu.add(k.first, k.second - 1, f, (double)k.second);
  }
  SPoly bs = th;
  bs.add(2, 0, -1.0);
  SPoly mus;
  mus.add(1, 1, -alpha);
  FPoly G = mul(Pdb, bs, cplx(0.0, 1.0));
  G.add(mul(Pdmu, mus, cplx(0.0, 1.0)));

  // Delta P - P
  for (auto& [k, f] : P.c) {
    CplxField lf = apply_banded(*ctx.lap, f);
    for (int i = 0; i < g.N; ++i) lf[i] -= f[i];
    G.add(k.first, k.second, lf);
  }

  // zeta = (P - Q)/Q
  FPoly zeta(g.N, ctx.mmax, ctx.nmax);
  for (auto& [k, f] : P.c) {
    CplxField zf = f;
    if (k.first == 0 && k.second == 0)
      for (int i = 0; i < g.N; ++i) zf[i] -= Q[i];
    for (int i = 0; i < g.N; ++i) zf[i] /= Q[i];
    zeta.add(k.first, k.second, zf);
  }

  // f(P) = Q^{1+4/d} (1+z)^{1+2/d} (1+zbar)^{2/d}
  {
    FPoly fp = binom_product(zeta, 1.0 + 2.0 / d, 2.0 / d, ctx.nmax);
    for (auto& [k, f] : fp.c) {
      CplxField t(g.N);
      for (int i = 0; i < g.N; ++i) t[i] = f[i] * std::pow(Q[i], 1.0 + 4.0 / d);
      G.add(k.first, k.second, t);
    }
  }
  // mu g(P) = mu Q^p (1+z)^{(p+1)/2} (1+zbar)^{(p-1)/2}
  {
    FPoly gp = binom_product(zeta, (p + 1.0) / 2.0, (p - 1.0) / 2.0, ctx.nmax);
    for (auto& [k, f] : gp.c) {
      CplxField t(g.N);
      for (int i = 0; i < g.N; ++i) t[i] = f[i] * std::pow(Q[i], p);
      G.add(k.first, k.second + 1, t);
    }
  }
  // theta r^2/4 P
  {
    FPoly tp = mul(P, th);
    for (auto& [k, f] : tp.c) {
      CplxField t(g.N);
      for (int i = 0; i < g.N; ++i) t[i] = f[i] * g.r[i] * g.r[i] * 0.25;
      G.add(k.first, k.second, t);
    }
  }
  return G;
}

}  // namespace

ProfileCoeffs build_profile(int K, const ProfileParams& prm,
                            const GroundState& gs, const LinearizedPair& lp) {
  if (K < 0) throw std::invalid_argument("build_profile: K must be >= 0");
  const RadialGrid& g = gs.grid;
  ProfileCoeffs pc;
  pc.K = K;
  pc.prm = prm;
  pc.gs = &gs;
  pc.lp = &lp;
  pc.Pp.assign(K + 1, std::vector<RealField>(K + 1));
  pc.Pm.assign(K + 1, std::vector<RealField>(K + 1));
  pc.beta.assign(K + 1, std::vector<double>(K + 1, 0.0));

  Banded lap = laplacian_op(g);
  BuildCtx ctx{&pc, &lap, 2 * K + 2, K + 1};

  double rhoQ = inner(g, lp.rho, gs.Q);

  // sweep in k (powers of mu), then j: the source terms only reference
  // already-solved indices in this order
  for (int k = 0; k <= K; ++k) {
    for (int j = 0; j + k <= K; ++j) {
      FPoly G = eval_G(ctx);
      CplxField cp = G.coeff(2 * j, k + 1);
      CplxField cm = G.coeff(2 * j + 1, k + 1);
      RealField Fp(g.N), Fm(g.N);
      for (int i = 0; i < g.N; ++i) {
        Fp[i] = cp[i].real();
        Fm[i] = cm[i].imag();
      }
      double nu = (k + 1) * prm.alpha + 2 * j;

      // L+ Pp = Fp + beta r^2 Q / 4; beta is fixed by the solvability of the
      // L- equation below, <Fm - nu Pp, Q> = 0
      RealField P0 = solve_Lplus(lp, Fp);
      double beta =
          4.0 * (inner(g, Fm, gs.Q) - nu * inner(g, P0, gs.Q)) / (nu * rhoQ);
      RealField Pp = P0;
      for (int i = 0; i < g.N; ++i) Pp[i] += 0.25 * beta * lp.rho[i];
      RealField rhs = Fm;
      for (int i = 0; i < g.N; ++i) rhs[i] -= nu * Pp[i];
      RealField Pm;
      try {
        Pm = solve_Lminus(lp, rhs);
      } catch (const std::exception& e) {
        throw std::runtime_error("build_profile: system (j=" + std::to_string(j) +
                                 ",k=" + std::to_string(k) + ") failed: " + e.what());
      }
      pc.Pp[j][k] = std::move(Pp);
      pc.Pm[j][k] = std::move(Pm);
      pc.beta[j][k] = beta;
    }
  }
  return pc;
}

double theta(const ProfileCoeffs& pc, double b, double lambda) {
  double mu = std::pow(lambda, pc.prm.alpha);
  double s = 0.0;
  for (int j = 0; j <= pc.K; ++j)
    for (int k = 0; j + k <= pc.K; ++k)
      s += pc.beta[j][k] * std::pow(b, 2 * j) * std::pow(mu, k + 1);
  return s;
}

ProfileEval eval_profile(const ProfileCoeffs& pc, double b, double lambda) {
  const RadialGrid& g = pc.gs->grid;
  double mu = std::pow(lambda, pc.prm.alpha);
  ProfileEval ev;
  ev.P.assign(g.N, cplx(0.0));
  for (int i = 0; i < g.N; ++i) ev.P[i] = pc.gs->Q[i];
  for (int j = 0; j <= pc.K; ++j)
    for (int k = 0; j + k <= pc.K; ++k) {
      double w = std::pow(b, 2 * j) * std::pow(mu, k + 1);
      for (int i = 0; i < g.N; ++i)
        ev.P[i] += w * cplx(pc.Pp[j][k][i], b * pc.Pm[j][k][i]);
    }
  ev.Pb.resize(g.N);
  for (int i = 0; i < g.N; ++i) {
    double ph = -0.25 * b * g.r[i] * g.r[i];
    ev.Pb[i] = ev.P[i] * cplx(std::cos(ph), std::sin(ph));
  }
  ev.theta = theta(pc, b, lambda);
  return ev;
}

static inline cplx f_crit(cplx z, int d) {
  if (d == 1) {
    double a2 = std::norm(z);
    return a2 * a2 * z;
  }
  return std::pow(std::abs(z), 4.0 / d) * z;
}
static inline cplx g_sub(cplx z, double p) {
  double a = std::abs(z);
  if (a == 0.0) return cplx(0.0);
  return std::pow(a, p - 1.0) * z;
}

static void eval_P_mu(const ProfileCoeffs& pc, double b, double lambda,
                      CplxField& P, CplxField& Pdb, CplxField& Pdmu) {
  const RadialGrid& g = pc.gs->grid;
  double alpha = pc.prm.alpha;
  double mu = std::pow(lambda, alpha);
  P.assign(g.N, cplx(0.0));
  Pdb.assign(g.N, cplx(0.0));
  Pdmu.assign(g.N, cplx(0.0));
  for (int i = 0; i < g.N; ++i) P[i] = pc.gs->Q[i];
  for (int j = 0; j <= pc.K; ++j)
    for (int k = 0; j + k <= pc.K; ++k) {
      double bm = std::pow(b, 2 * j), mn = std::pow(mu, k + 1);
      double dbm = (j > 0) ? 2 * j * std::pow(b, 2 * j - 1) : 0.0;
      for (int i = 0; i < g.N; ++i) {
        cplx coef(pc.Pp[j][k][i], 0.0);
        cplx coefm(0.0, pc.Pm[j][k][i]);
        P[i] += bm * mn * (coef + b * coefm);
        // d/db of b^{2j} mu^{k+1} (Pp + i b Pm)
        Pdb[i] += mn * (dbm * coef + (2 * j + 1) * bm * coefm);
        Pdmu[i] += (k + 1) * bm * std::pow(mu, k) * (coef + b * coefm);
      }
    }
}

void eval_P_derivs(const ProfileCoeffs& pc, double b, double lambda,
                   CplxField* Pout, CplxField* Pdbout, CplxField* Pdlamout) {
  CplxField P, Pdb, Pdmu;
  eval_P_mu(pc, b, lambda, P, Pdb, Pdmu);
  if (Pout) *Pout = std::move(P);
  if (Pdbout) *Pdbout = std::move(Pdb);
  if (Pdlamout) {
    double dmu_dlam = pc.prm.alpha * std::pow(lambda, pc.prm.alpha - 1.0);
    for (auto& v : Pdmu) v *= dmu_dlam;
    *Pdlamout = std::move(Pdmu);
  }
}

PsiResult residual_Psi(const ProfileCoeffs& pc, double b, double lambda,
                       double lambda_s_over_lambda, double b_s) {
  const RadialGrid& g = pc.gs->grid;
  double alpha = pc.prm.alpha;
  double mu = std::pow(lambda, alpha);
  double mu_s = alpha * mu * lambda_s_over_lambda;

  CplxField P, Pdb, Pdmu;
  eval_P_mu(pc, b, lambda, P, Pdb, Pdmu);

  double th = theta(pc, b, lambda);
  Banded lap = laplacian_op(g);
  CplxField lapP = apply_banded(lap, P);

  PsiResult out;
  out.psi.resize(g.N);
  const cplx I(0.0, 1.0);
  for (int i = 0; i < g.N; ++i) {
    cplx Ps = Pdb[i] * b_s + Pdmu[i] * mu_s;
    out.psi[i] = I * Ps + lapP[i] - P[i] + f_crit(P[i], pc.prm.d) +
                 mu * g_sub(P[i], pc.prm.p) +
                 th * 0.25 * g.r[i] * g.r[i] * P[i];
  }
  CplxField dpsi = deriv(g, out.psi);
  double wn = 0.0;
  for (int i = 0; i < g.N; ++i) {
    if (pc.gs->Q[i] < 1e-12) break;
    double w = std::exp(0.5 * g.r[i]);
    wn = std::max(wn, w * (std::abs(out.psi[i]) + std::abs(dpsi[i])));
  }
  out.weighted_norm = wn;
  return out;
}

double profile_energy(const ProfileCoeffs& pc, double b, double lambda) {
  const RadialGrid& g = pc.gs->grid;
  ProfileEval ev = eval_profile(pc, b, lambda);
  int d = pc.prm.d;
  double p = pc.prm.p;
  double cF = d / (2.0 * d + 4.0), eF = 2.0 + 4.0 / d;
  double kin = 0.5 * grad_norm2sq(g, ev.Pb);
  double pot = 0.0, potg = 0.0;
  for (int i = 0; i < g.N; ++i) {
    double a = std::abs(ev.Pb[i]);
    pot += g.w[i] * cF * std::pow(a, eF);
    potg += g.w[i] * std::pow(a, p + 1.0) / (p + 1.0);
  }
  double alpha = pc.prm.alpha;
  return (kin - pot) / (lambda * lambda) -
         std::pow(lambda, alpha - 2.0) * potg;
}

double profile_mass_drift(const ProfileCoeffs& pc, double b, double lambda,
                          double lambda_s_over_lambda, double b_s) {
  const RadialGrid& g = pc.gs->grid;
  PsiResult pr = residual_Psi(pc, b, lambda, lambda_s_over_lambda, b_s);
  ProfileEval ev = eval_profile(pc, b, lambda);
  // <Psi e^{-i b r^2/4}, i P_b> = Im int Psi_b conj(P_b)
  double s = 0.0;
  for (int i = 0; i < g.N; ++i) {
    double ph = -0.25 * b * g.r[i] * g.r[i];
    cplx psib = pr.psi[i] * cplx(std::cos(ph), std::sin(ph));
    s += g.w[i] * std::imag(psib * std::conj(ev.Pb[i]));
  }
  return s;
}

}  // namespace dpnls
