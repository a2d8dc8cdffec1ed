#include "core/analysis.hpp"

#include <algorithm>

namespace dpnls {

namespace {

cplx f_pow(cplx z, double e) {  // |z|^e z
  double a = std::abs(z);
  if (a == 0.0) return cplx(0.0);
  return std::pow(a, e) * z;
}

struct Frame {
  CplxField u_resc, eps, Pb, V1, V2, V3;
  double resid[3];
};

void build_frame(const RadialGrid& yg, const Interp& iu, const ProfileCoeffs& pc,
                 const LinearizedPair& lp, double lambda, double b, double gamma,
                 Frame& fr, CplxField* dPdb_b = nullptr,
                 CplxField* dPdlam_b = nullptr) {
  int d = yg.d;
  double amp = std::pow(lambda, 0.5 * d);
  cplx ph(std::cos(gamma), -std::sin(gamma));
  fr.u_resc.resize(yg.N);
  for (int i = 0; i < yg.N; ++i) fr.u_resc[i] = amp * iu(lambda * yg.r[i]) * ph;

  CplxField P, Pdb, Pdlam;
  eval_P_derivs(pc, b, lambda, &P, dPdb_b ? &Pdb : nullptr,
                dPdlam_b ? &Pdlam : nullptr);
  fr.Pb.resize(yg.N);
  fr.eps.resize(yg.N);
  for (int i = 0; i < yg.N; ++i) {
    double a = -0.25 * b * yg.r[i] * yg.r[i];
    cplx e(std::cos(a), std::sin(a));
    fr.Pb[i] = P[i] * e;
    fr.eps[i] = fr.u_resc[i] - fr.Pb[i];
    if (dPdb_b) (*dPdb_b)[i] = Pdb[i] * e - cplx(0.0, 0.25 * yg.r[i] * yg.r[i]) * fr.Pb[i];
    if (dPdlam_b) (*dPdlam_b)[i] = Pdlam[i] * e;
  }
  CplxField LamPb = apply_Lambda(yg, fr.Pb);
  fr.V1.resize(yg.N);
  fr.V2.resize(yg.N);
  fr.V3.resize(yg.N);
  const cplx I(0.0, 1.0);
  for (int i = 0; i < yg.N; ++i) {
    double a = -0.25 * b * yg.r[i] * yg.r[i];
    cplx e(std::cos(a), std::sin(a));
    fr.V1[i] = I * LamPb[i];
    fr.V2[i] = yg.r[i] * yg.r[i] * fr.Pb[i];
    fr.V3[i] = I * lp.rho[i] * e;
  }
  fr.resid[0] = inner(yg, fr.eps, fr.V1);
  fr.resid[1] = inner(yg, fr.eps, fr.V2);
  fr.resid[2] = inner(yg, fr.eps, fr.V3);
}

}  // namespace

Decomposition decompose(const RadialGrid& xgrid, const CplxField& u,
                        const ProfileCoeffs& pc, const LinearizedPair& lp,
                        ModState guess) {
  const RadialGrid& yg = pc.gs->grid;
  Interp iu(xgrid, u);
  double lambda = guess.lambda, b = guess.b, gamma = guess.gamma;

  Frame fr;
  CplxField dPdb(yg.N), dPdlam(yg.N);
  build_frame(yg, iu, pc, lp, lambda, b, gamma, fr, &dPdb, &dPdlam);
  auto rnorm = [&]() {
    return std::abs(fr.resid[0]) + std::abs(fr.resid[1]) + std::abs(fr.resid[2]);
  };
  double scale = std::sqrt(norm2sq(yg, fr.V1)) + std::sqrt(norm2sq(yg, fr.V2)) +
                 std::sqrt(norm2sq(yg, fr.V3));
  double tol = 1e-13 * scale * (std::sqrt(norm2sq(yg, fr.u_resc)) + 1.0);
  double rn = rnorm();

  for (int it = 0; it < 60 && rn > tol; ++it) {
    // parameter derivatives of eps
    CplxField delam = apply_Lambda(yg, fr.u_resc);
    CplxField deps_dlam(yg.N), deps_db(yg.N), deps_dgam(yg.N);
    const cplx I(0.0, 1.0);
    for (int i = 0; i < yg.N; ++i) {
      deps_dlam[i] = delam[i] / lambda - dPdlam[i];
      deps_db[i] = -dPdb[i];
      deps_dgam[i] = -I * fr.u_resc[i];
    }
    double J[3][3];
    const CplxField* cols[3] = {&deps_dlam, &deps_db, &deps_dgam};
    const CplxField* rows[3] = {&fr.V1, &fr.V2, &fr.V3};
    for (int k = 0; k < 3; ++k)
      for (int j = 0; j < 3; ++j) J[k][j] = inner(yg, *cols[j], *rows[k]);
    // solve J dx = resid (3x3 Cramer)
    double det = J[0][0] * (J[1][1] * J[2][2] - J[1][2] * J[2][1]) -
                 J[0][1] * (J[1][0] * J[2][2] - J[1][2] * J[2][0]) +
                 J[0][2] * (J[1][0] * J[2][1] - J[1][1] * J[2][0]);
    if (std::abs(det) < 1e-300)
      throw std::runtime_error("decompose: singular modulation Jacobian");
    auto solve3 = [&](int col) {
      double M[3][3];
      for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c)
          M[r][c] = (c == col) ? fr.resid[r] : J[r][c];
      return (M[0][0] * (M[1][1] * M[2][2] - M[1][2] * M[2][1]) -
              M[0][1] * (M[1][0] * M[2][2] - M[1][2] * M[2][0]) +
              M[0][2] * (M[1][0] * M[2][1] - M[1][1] * M[2][0])) /
             det;
    };
    double dlam = solve3(0), db = solve3(1), dgam = solve3(2);
    double stepf = 1.0;
    bool ok = false;
    for (int half = 0; half < 20; ++half) {
      double l2 = lambda - stepf * dlam, b2 = b - stepf * db,
             g2 = gamma - stepf * dgam;
      if (l2 > 0.0) {
        Frame f2;
        CplxField dPdb2(yg.N), dPdlam2(yg.N);
        build_frame(yg, iu, pc, lp, l2, b2, g2, f2, &dPdb2, &dPdlam2);
        double rn2 = std::abs(f2.resid[0]) + std::abs(f2.resid[1]) +
                     std::abs(f2.resid[2]);
        if (rn2 < rn) {
          lambda = l2; b = b2; gamma = g2;
          fr = std::move(f2);
          dPdb = std::move(dPdb2);
          dPdlam = std::move(dPdlam2);
          rn = rn2;
          ok = true;
          break;
        }
      }
      stepf *= 0.5;
    }
    if (!ok) break;
  }
  if (rn > 1e6 * tol)
    throw std::runtime_error("decompose: Newton failed (tube exit?), resid=" +
                             std::to_string(rn));

  Decomposition dec;
  dec.mod = guess;
  dec.mod.lambda = lambda;
  dec.mod.b = b;
  dec.mod.gamma = std::remainder(gamma, 2.0 * M_PI);
  dec.eps = fr.eps;
  for (int k = 0; k < 3; ++k) dec.ortho_resid[k] = fr.resid[k];
  dec.eps_l2 = std::sqrt(norm2sq(yg, fr.eps));
  dec.eps_h1 = std::sqrt(norm2sq(yg, fr.eps) + grad_norm2sq(yg, fr.eps));
  CplxField Qc(pc.gs->Q.begin(), pc.gs->Q.end());
  dec.inner_eps_Q = inner(yg, fr.eps, Qc);
  return dec;
}

CplxField reconstruct(const RadialGrid& xgrid, const ProfileCoeffs& pc,
                      const ModState& mod, const CplxField& eps) {
  const RadialGrid& yg = pc.gs->grid;
  ProfileEval ev = eval_profile(pc, mod.b, mod.lambda);
  CplxField w(yg.N);
  for (int i = 0; i < yg.N; ++i) w[i] = ev.Pb[i] + eps[i];
  Interp iw(yg, w);
  int d = xgrid.d;
  double amp = std::pow(mod.lambda, -0.5 * d);
  cplx ph(std::cos(mod.gamma), std::sin(mod.gamma));
  CplxField u(xgrid.N);
  for (int i = 0; i < xgrid.N; ++i)
    u[i] = amp * iw(xgrid.r[i] / mod.lambda) * ph;
  return u;
}

double phi_prime(double r) {
  r = std::abs(r);
  if (r < 1.0) return r;
  if (r > 2.0) return 3.0 - std::exp(-r);
  // C^1 monotone Hermite bridge for phi' on [1,2]
  double y0 = 1.0, m0 = 1.0;
  double y1 = 3.0 - std::exp(-2.0), m1 = std::exp(-2.0);
  double u = r - 1.0, u2 = u * u, u3 = u2 * u;
  return (2 * u3 - 3 * u2 + 1) * y0 + (u3 - 2 * u2 + u) * m0 +
         (-2 * u3 + 3 * u2) * y1 + (u3 - u2) * m1;
}

double phiA_prime(double r, double A) { return A * phi_prime(r / A); }

LyapunovValues lyapunov(const ProfileCoeffs& pc, const Decomposition& dec,
                        double A) {
  const RadialGrid& yg = pc.gs->grid;
  int d = pc.prm.d;
  double p = pc.prm.p;
  double lambda = dec.mod.lambda, b = dec.mod.b;
  ProfileEval ev = eval_profile(pc, b, lambda);

  double cF = d / (2.0 * d + 4.0), eFe = 2.0 + 4.0 / d;
  double la = std::pow(lambda, pc.prm.alpha);
  double H = 0.5 * grad_norm2sq(yg, dec.eps) + 0.5 * norm2sq(yg, dec.eps);
  for (int i = 0; i < yg.N; ++i) {
    cplx Pb = ev.Pb[i], e = dec.eps[i];
    double aPe = std::abs(Pb + e), aP = std::abs(Pb);
    double dF = cF * (std::pow(aPe, eFe) - std::pow(aP, eFe)) -
                std::real(f_pow(Pb, 4.0 / d) * std::conj(e));
    double dG = (std::pow(aPe, p + 1.0) - std::pow(aP, p + 1.0)) / (p + 1.0) -
                std::real(f_pow(Pb, p - 1.0) * std::conj(e));
    H -= yg.w[i] * (dF + la * dG);
  }
  CplxField de = deriv(yg, dec.eps);
  double J = 0.0;
  for (int i = 0; i < yg.N; ++i)
    J += 0.5 * yg.w[i] * phiA_prime(yg.r[i], A) *
         std::imag(de[i] * std::conj(dec.eps[i]));
  LyapunovValues out;
  out.H = H;
  out.J = J;
  out.S = (H + b * J) / std::pow(lambda, 4.0);
  return out;
}

RateFit fit_rate(const std::vector<double>& t, const std::vector<double>& q,
                 bool fit_Tstar) {
  if (t.size() < 4) throw std::invalid_argument("fit_rate: window too short");
  double qmin = *std::min_element(q.begin(), q.end());
  double qmax = *std::max_element(q.begin(), q.end());
  if (qmax / qmin < 10.0)
    throw std::invalid_argument("fit_rate: need at least one decade in the quantity");

  auto regress = [&](double Tstar, RateFit& rf) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0, syy = 0;
    int n = 0;
    for (size_t i = 0; i < t.size(); ++i) {
      double dtv = Tstar - t[i];
      if (dtv <= 0.0 || q[i] <= 0.0) return 1e300;
      double X = std::log(dtv), Y = std::log(q[i]);
      sx += X; sy += Y; sxx += X * X; sxy += X * Y; syy += Y * Y;
      ++n;
    }
    double den = n * sxx - sx * sx;
    double slope = (n * sxy - sx * sy) / den;
    double icept = (sy - slope * sx) / n;
    double sse = 0.0;
    for (size_t i = 0; i < t.size(); ++i) {
      double rres = std::log(q[i]) - (icept + slope * std::log(Tstar - t[i]));
      sse += rres * rres;
    }
    double sst = syy - sy * sy / n;
    rf.exponent = slope;
    rf.amplitude = std::exp(icept);
    rf.r2 = (sst > 0) ? 1.0 - sse / sst : 1.0;
    rf.Tstar = Tstar;
    return sse;
  };

  RateFit rf;
  rf.window_lo = t.front();
  rf.window_hi = t.back();
  if (!fit_Tstar) {
    regress(0.0, rf);
    return rf;
  }
  // golden section over Tstar > max(t)
  double tmax = *std::max_element(t.begin(), t.end());
  double span = *std::max_element(t.begin(), t.end()) -
                *std::min_element(t.begin(), t.end());
  double a = tmax + 1e-9 * span, bnd = tmax + 2.0 * span;
  const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
  double c1 = bnd - gr * (bnd - a), c2 = a + gr * (bnd - a);
  RateFit tmp;
  double f1 = regress(c1, tmp), f2 = regress(c2, tmp);
  for (int it = 0; it < 200 && (bnd - a) > 1e-14 * span; ++it) {
    if (f1 < f2) {
      bnd = c2; c2 = c1; f2 = f1;
      c1 = bnd - gr * (bnd - a);
      f1 = regress(c1, tmp);
    } else {
      a = c1; c1 = c2; f1 = f2;
      c2 = a + gr * (bnd - a);
      f2 = regress(c2, tmp);
    }
  }
  regress(0.5 * (a + bnd), rf);
  return rf;
}

std::vector<std::array<double, 3>> mod_residuals(
    const std::vector<ModState>& traj, const ProfileCoeffs& pc) {
  std::vector<std::array<double, 3>> out;
  for (size_t i = 1; i + 1 < traj.size(); ++i) {
    const ModState& a = traj[i - 1];
    const ModState& m = traj[i];
    const ModState& c = traj[i + 1];
    double h1 = m.s - a.s, h2 = c.s - m.s;
    auto dds = [&](double fa, double fm, double fc) {
      return (h1 * h1 * fc - h2 * h2 * fa + (h2 * h2 - h1 * h1) * fm) /
             (h1 * h2 * (h1 + h2));
    };
    double lam_s = dds(a.lambda, m.lambda, c.lambda);
    double b_s = dds(a.b, m.b, c.b);
    double gam_s = dds(a.gamma, m.gamma, c.gamma);
    out.push_back({m.b + lam_s / m.lambda,
                   b_s + m.b * m.b - theta(pc, m.b, m.lambda), 1.0 - gam_s});
  }
  return out;
}

}  // namespace dpnls
