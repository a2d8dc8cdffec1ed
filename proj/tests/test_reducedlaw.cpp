#include "doctest.h"

#include "core/analysis.hpp"
#include "core/reducedlaw.hpp"

using namespace dpnls;

namespace {
LawConstants law1() {
  // frozen constants for d=1, p=3 (beta_00 and int |y|^2 Q^2 from the
  // profile/ground-state modules, cross-checked in their own tests)
  return LawConstants::make(1, 3.0, 1.787561482176, 0.0, 1.6783671031873943);
}
}  // namespace

TEST_CASE("closed-form law satisfies the reduced system") {
  LawConstants c = law1();
  // b_s = theta - b^2 with theta = beta lambda^alpha, lambda_s/lambda = -b
  for (double s : {5.0, 50.0, 500.0}) {
    double h = 1e-4 * s;
    AppLaw am = app_law(s - h, c), a0 = app_law(s, c), ap = app_law(s + h, c);
    double lam_s = (ap.lambda - am.lambda) / (2 * h);
    double b_s = (ap.b - am.b) / (2 * h);
    double th = c.beta * std::pow(a0.lambda, c.alpha);
    CHECK(std::abs(lam_s / a0.lambda + a0.b) < 1e-7 / s);
    CHECK(std::abs(b_s - (th - a0.b * a0.b)) < 1e-7 / (s * s));
  }
}

TEST_CASE("frozen rate constants for d=1, p=3") {
  LawConstants c = law1();
  CHECK(c.alpha == doctest::Approx(1.0));
  CHECK(c.sigma == doctest::Approx(2.0 / 3.0));
  CHECK(c.C_s == doctest::Approx(0.4172696144).epsilon(1e-9));
  CHECK(c.C_lambda == doctest::Approx(2.0036621793).epsilon(1e-9));
  CHECK(c.C_b == doctest::Approx(2.6764414191).epsilon(1e-9));
}

TEST_CASE("time map and its inverse") {
  LawConstants c = law1();
  for (double s : {10.0, 100.0, 1000.0}) {
    double t = time_map(s, c);
    CHECK(t < 0.0);
    CHECK(time_map_inverse(t, c) == doctest::Approx(s).epsilon(1e-12));
    // t_app = -C_s s^{-(4-alpha)/alpha}
    CHECK(t == doctest::Approx(-c.C_s * std::pow(s, -(4.0 - c.alpha) / c.alpha))
                   .epsilon(1e-12));
  }
}

TEST_CASE("scale integral and initial-data selection") {
  LawConstants c = law1();
  double prev_env = 1e300;
  for (double s1 : {1e2, 1e3, 1e4}) {
    InitData id = init_data(s1, c);
    CHECK(std::abs(F_of_lambda(id.lambda1, c) - s1) < 1e-10 * s1);
    AppLaw a = app_law(s1, c);
    double env = std::abs(id.lambda1 / a.lambda - 1.0) +
                 std::abs(id.b1 / a.b - 1.0);
    CHECK(env < prev_env);  // proximity envelope decreasing
    prev_env = env;
  }
}

TEST_CASE("reduced integration conserves the energy invariant") {
  LawConstants c = law1();
  double s1 = 20.0;
  AppLaw a1 = app_law(s1, c);
  ThetaFn th = [&](double b, double lam) {
    return c.beta * std::pow(lam, c.alpha);
  };
  auto traj = integrate_reduced(a1.b, a1.lambda, s1, 10.0 * s1, th, c,
                                time_map(s1, c), 0.0);
  double i0 = traj.front().invariant;
  for (auto& q : traj) {
    // normalize by the size of the cancelling terms (b^2/lambda^2 grows)
    double scale = std::max(1.0, q.b * q.b / (q.lambda * q.lambda));
    CHECK(std::abs(q.invariant - i0) < 1e-8 * scale);
  }
  // stays on the closed-form law when started on it
  for (auto& q : traj) {
    CHECK(q.lambda == doctest::Approx(q.lambda_app).epsilon(1e-7));
    CHECK(q.b == doctest::Approx(q.b_app).epsilon(1e-7));
  }
}

TEST_CASE("fitted exponents of the reduced trajectory") {
  LawConstants c = law1();
  double s1 = 30.0;
  AppLaw a1 = app_law(s1, c);
  ThetaFn th = [&](double b, double lam) {
    return c.beta * std::pow(lam, c.alpha);
  };
  auto traj = integrate_reduced(a1.b, a1.lambda, s1, 40.0 * s1, th, c,
                                time_map(s1, c), 0.0);
  std::vector<double> tv, lv, bv;
  for (auto& q : traj) {
    tv.push_back(q.t);
    lv.push_back(q.lambda);
    bv.push_back(q.b);
  }
  RateFit fl = fit_rate(tv, lv, false);
  RateFit fb = fit_rate(tv, bv, false);
  CHECK(std::abs(fl.exponent - 2.0 / (4.0 - c.alpha)) < 1e-3);
  CHECK(std::abs(fb.exponent - c.alpha / (4.0 - c.alpha)) < 1e-3);
  CHECK(fl.amplitude == doctest::Approx(c.C_lambda).epsilon(1e-3));
}

TEST_CASE("ode45 on a stiff-free oscillator hits its tolerance") {
  auto f = [](double, const double* y, double* dy) {
    dy[0] = y[1];
    dy[1] = -y[0];
  };
  double y[2] = {1.0, 0.0};
  ode45(f, 2, 0.0, 20.0, y, 1e-12, 1e-14, {});
  CHECK(std::abs(y[0] - std::cos(20.0)) < 1e-9);
  CHECK(std::abs(y[1] + std::sin(20.0)) < 1e-9);
}
