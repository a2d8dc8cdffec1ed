// Finite-dimensional blow-up law: closed-form approximate solution,
// s <-> t conversion, the scale integral F(lambda), initial-data selection,
// and integration of the reduced ODE system
//   b_s = theta(b, lambda) - b^2,  lambda_s / lambda = -b,
//   gamma_s = 1,  dt/ds = lambda^2.
#pragma once

#include <functional>
#include <vector>

#include "core/numcore.hpp"

namespace dpnls {

struct LawConstants {
  int d = 1;
  double p = 3.0;
  double alpha = 1.0;    // 2 - d(p-1)/2
  double sigma = 0.0;    // 4/(4+d(p-1)) = 2/(4-alpha)
  double beta = 0.0;     // beta_{0,0}
  double C_s = 0.0, C_lambda = 0.0, C_b = 0.0;
  double lambda0 = 0.1;  // reference scale for F
  double E0 = 0.0;
  double C0 = 0.0;       // 8 E0 / int |y|^2 Q^2
  double delta_alpha = 0.0;  // min(1/4, 2/alpha - 1)

  // kappa = 2 beta / (2 - alpha), the coefficient of lambda^alpha in b^2
  double kappa() const { return 2.0 * beta / (2.0 - alpha); }

  static LawConstants make(int d, double p, double beta, double E0, double yQ2,
                           double lambda0 = 0.1);
};

struct AppLaw {
  double lambda, b;
};
AppLaw app_law(double s, const LawConstants& c);

double time_map(double s, const LawConstants& c);          // t_app(s) < 0
double time_map_inverse(double t, const LawConstants& c);  // s(t)

double F_of_lambda(double lambda, const LawConstants& c);  // to 1e-12 rel

struct InitData {
  double b1, lambda1, s1;
};
InitData init_data(double s1, const LawConstants& c);

struct LawPoint {
  double s, t, lambda, b, gamma;
  double lambda_app, b_app;
  double invariant;  // b^2/lambda^2 - kappa lambda^{alpha-2}  (= C0 ideally)
};

using ThetaFn = std::function<double(double b, double lambda)>;

std::vector<LawPoint> integrate_reduced(double b1, double lambda1, double s1,
                                        double s_end, const ThetaFn& theta_fn,
                                        const LawConstants& c,
                                        double t1 = 0.0, double gamma1 = 0.0);

// Dormand-Prince 5(4) with PI step control; f(s, y) -> dy/ds.
// Calls observer(s, y) at every accepted step (including the first point).
void ode45(const std::function<void(double, const double*, double*)>& f, int n,
           double s0, double s1, double* y, double rtol, double atol,
           const std::function<void(double, const double*)>& observer);

}  // namespace dpnls
