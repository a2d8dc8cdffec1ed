#include "core/reducedlaw.hpp"

#include <algorithm>
#include <cmath>

namespace dpnls {

LawConstants LawConstants::make(int d, double p, double beta, double E0,
                                double yQ2, double lambda0) {
  LawConstants c;
  c.d = d;
  c.p = p;
  c.alpha = 2.0 - d * (p - 1.0) / 2.0;
  c.sigma = 4.0 / (4.0 + d * (p - 1.0));
  c.beta = beta;
  c.E0 = E0;
  c.C0 = 8.0 * E0 / yQ2;
  c.lambda0 = lambda0;
  c.delta_alpha = std::min(0.25, 2.0 / c.alpha - 1.0);
  double a = c.alpha;
  double base = 0.5 * a * std::sqrt(c.kappa());  // (alpha/2) sqrt(2beta/(2-alpha))
  c.C_s = a / (4.0 - a) * std::pow(base, -4.0 / a);
  double csp = std::pow(c.C_s, -a / (4.0 - a));
  c.C_lambda = std::sqrt((4.0 - a) / a * csp);
  c.C_b = 2.0 / a * csp;
  if (c.kappa() + c.C0 * std::pow(lambda0, 2.0 - a) <= 0.0)
    throw std::invalid_argument("LawConstants: lambda0 too large for this E0");
  return c;
}

AppLaw app_law(double s, const LawConstants& c) {
  if (s <= 0.0) throw std::invalid_argument("app_law: s must be positive");
  double a = c.alpha;
  double base = 0.5 * a * std::sqrt(c.kappa());
  return {std::pow(base, -2.0 / a) * std::pow(s, -2.0 / a), 2.0 / (a * s)};
}

double time_map(double s, const LawConstants& c) {
  return -c.C_s * std::pow(s, -(4.0 - c.alpha) / c.alpha);
}

double time_map_inverse(double t, const LawConstants& c) {
  if (t >= 0.0) throw std::invalid_argument("time_map_inverse: t must be negative");
  return std::pow(-t / c.C_s, -c.alpha / (4.0 - c.alpha));
}

namespace {

// adaptive Simpson
double simpson_rec(const std::function<double(double)>& f, double a, double b,
                   double fa, double fm, double fb, double whole, double tol,
                   int depth) {
  double m = 0.5 * (a + b);
  double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  double flm = f(lm), frm = f(rm);
  double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  if (depth <= 0 || std::abs(left + right - whole) < 15.0 * tol)
    return left + right + (left + right - whole) / 15.0;
  return simpson_rec(f, a, m, fa, flm, fm, left, tol / 2.0, depth - 1) +
         simpson_rec(f, m, b, fm, frm, fb, right, tol / 2.0, depth - 1);
}

double adaptive_simpson(const std::function<double(double)>& f, double a,
                        double b, double tol) {
  double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
  double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return simpson_rec(f, a, b, fa, fm, fb, whole, tol, 48);
}

}  // namespace

double F_of_lambda(double lambda, const LawConstants& c) {
  if (lambda <= 0.0 || lambda > c.lambda0)
    throw std::invalid_argument("F_of_lambda: need 0 < lambda <= lambda0");
  double a = c.alpha;
  double k = c.kappa();
  // substitute v = mu^{-alpha/2}: F = (2/alpha) int_{v0}^{vl} dv / sqrt(k + C0 v^{-2(2-a)/a})
  double v0 = std::pow(c.lambda0, -0.5 * a);
  double vl = std::pow(lambda, -0.5 * a);
  if (vl == v0) return 0.0;
  double ex = -2.0 * (2.0 - a) / a;
  auto integrand = [&](double v) {
    double rad = k + c.C0 * std::pow(v, ex);
    if (rad <= 0.0)
      throw std::runtime_error("F_of_lambda: integrand singular (E0 too negative)");
    return 1.0 / std::sqrt(rad);
  };
  double I = adaptive_simpson(integrand, v0, vl, 1e-13 * (vl - v0));
  return 2.0 / a * I;
}

InitData init_data(double s1, const LawConstants& c) {
  if (s1 <= 0.0) throw std::invalid_argument("init_data: s1 must be positive");
  // F is decreasing in lambda with F(lambda0) = 0: bisection on log(lambda)
  double lo = std::log(c.lambda0), hi = lo;  // F(exp(lo)) = 0 < s1
  double step = 1.0;
  while (F_of_lambda(std::exp(hi - step), c) < s1) {
    hi -= step;
    if (hi < lo - 200.0)
      throw std::runtime_error("init_data: bracketing failed (s1 unreachable)");
  }
  double lo2 = hi - step, hi2 = hi;  // F(exp(lo2)) > s1 >= F(exp(hi2))
  for (int it = 0; it < 200; ++it) {
    double mid = 0.5 * (lo2 + hi2);
    if (F_of_lambda(std::exp(mid), c) > s1)
      lo2 = mid;
    else
      hi2 = mid;
    if (hi2 - lo2 < 1e-15) break;
  }
  InitData out;
  out.s1 = s1;
  out.lambda1 = std::exp(0.5 * (lo2 + hi2));
  // truncated energy relation E(b, lambda) = C0:
  // b^2 = kappa lambda^alpha + C0 lambda^2
  double b2 = c.kappa() * std::pow(out.lambda1, c.alpha) +
              c.C0 * out.lambda1 * out.lambda1;
  if (b2 <= 0.0) throw std::runtime_error("init_data: negative b^2 (E0 too low)");
  out.b1 = std::sqrt(b2);
  return out;
}

// ---- Dormand-Prince 5(4) ----

void ode45(const std::function<void(double, const double*, double*)>& f, int n,
           double s0, double s1, double* y, double rtol, double atol,
           const std::function<void(double, const double*)>& observer) {
  static const double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
  static const double a21 = 1.0 / 5;
  static const double a31 = 3.0 / 40, a32 = 9.0 / 40;
  static const double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
  static const double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187,
                      a53 = 64448.0 / 6561, a54 = -212.0 / 729;
  static const double a61 = 9017.0 / 3168, a62 = -355.0 / 33,
                      a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                      a65 = -5103.0 / 18656;
  static const double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                      b5 = -2187.0 / 6784, b6 = 11.0 / 84;
  static const double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                      e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;

  std::vector<double> k1(n), k2(n), k3(n), k4(n), k5(n), k6(n), k7(n), yt(n),
      y5(n);
  double s = s0;
  double dir = (s1 >= s0) ? 1.0 : -1.0;
  double h = dir * std::min(1e-3, std::abs(s1 - s0) / 100.0);
  if (h == 0.0) h = dir * 1e-6;
  if (observer) observer(s, y);
  f(s, y, k1.data());
  double err_prev = 1.0;
  int rejects = 0;
  while (dir * (s1 - s) > 0.0) {
    if (dir * (s + h - s1) > 0.0) h = s1 - s;
    for (int i = 0; i < n; ++i) yt[i] = y[i] + h * a21 * k1[i];
    f(s + c2 * h, yt.data(), k2.data());
    for (int i = 0; i < n; ++i) yt[i] = y[i] + h * (a31 * k1[i] + a32 * k2[i]);
    f(s + c3 * h, yt.data(), k3.data());
    for (int i = 0; i < n; ++i)
      yt[i] = y[i] + h * (a41 * k1[i] + a42 * k2[i] + a43 * k3[i]);
    f(s + c4 * h, yt.data(), k4.data());
    for (int i = 0; i < n; ++i)
      yt[i] = y[i] + h * (a51 * k1[i] + a52 * k2[i] + a53 * k3[i] + a54 * k4[i]);
    f(s + c5 * h, yt.data(), k5.data());
    for (int i = 0; i < n; ++i)
      yt[i] = y[i] + h * (a61 * k1[i] + a62 * k2[i] + a63 * k3[i] +
                          a64 * k4[i] + a65 * k5[i]);
    f(s + h, yt.data(), k6.data());
    for (int i = 0; i < n; ++i)
      y5[i] = y[i] + h * (b1 * k1[i] + b3 * k3[i] + b4 * k4[i] + b5 * k5[i] +
                          b6 * k6[i]);
    f(s + h, y5.data(), k7.data());
    double err = 0.0;
    for (int i = 0; i < n; ++i) {
      double e = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] +
                      e6 * k6[i] + e7 * k7[i]);
      double sc = atol + rtol * std::max(std::abs(y[i]), std::abs(y5[i]));
      err = std::max(err, std::abs(e) / sc);
    }
    if (err <= 1.0) {
      s += h;
      std::copy(y5.begin(), y5.end(), y);
      std::swap(k1, k7);  // FSAL
      if (observer) observer(s, y);
      err_prev = std::max(err, 1e-10);
      rejects = 0;
    } else if (++rejects > 60) {
      throw std::runtime_error("ode45: step-size collapse");
    }
    // PI controller
    double fac = 0.9 * std::pow(err > 0 ? err : 1e-10, -0.7 / 5.0) *
                 std::pow(err_prev, 0.4 / 5.0);
    fac = std::clamp(fac, 0.2, 5.0);
    h *= fac;
    if (std::abs(h) < 1e-14 * std::max(1.0, std::abs(s)))
      throw std::runtime_error("ode45: step underflow");
  }
}

std::vector<LawPoint> integrate_reduced(double b1, double lambda1, double s1,
                                        double s_end, const ThetaFn& theta_fn,
                                        const LawConstants& c, double t1,
                                        double gamma1) {
  std::vector<LawPoint> traj;
  double y[4] = {b1, lambda1, gamma1, t1};
  auto rhs = [&](double, const double* v, double* dv) {
    double b = v[0], lam = v[1];
    dv[0] = theta_fn(b, lam) - b * b;
    dv[1] = -b * lam;
    dv[2] = 1.0;
    dv[3] = lam * lam;
  };
  auto obs = [&](double s, const double* v) {
    LawPoint p;
    p.s = s;
    p.b = v[0];
    p.lambda = v[1];
    p.gamma = v[2];
    p.t = v[3];
    AppLaw ap = app_law(s, c);
    p.lambda_app = ap.lambda;
    p.b_app = ap.b;
    p.invariant = p.b * p.b / (p.lambda * p.lambda) -
                  c.kappa() * std::pow(p.lambda, c.alpha - 2.0);
    traj.push_back(p);
  };
  ode45(rhs, 4, s1, s_end, y, 1e-12, 1e-14, obs);
  return traj;
}

}  // namespace dpnls
