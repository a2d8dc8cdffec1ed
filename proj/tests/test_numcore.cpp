#include "doctest.h"

#include "core/numcore.hpp"

using namespace dpnls;

TEST_CASE("quadrature integrates gaussians with the d-dimensional measure") {
  // int_{R^d} e^{-|x|^2} dx = pi^{d/2}
  for (int d : {1, 2, 3}) {
    RadialGrid g = RadialGrid::make(d, 2048, 12.0);
    RealField f(g.N);
    for (int i = 0; i < g.N; ++i) f[i] = std::exp(-g.r[i] * g.r[i]);
    double got = 0.0;
    for (int i = 0; i < g.N; ++i) got += g.w[i] * f[i];
    double want = std::pow(M_PI, 0.5 * d);
    // d=1 trapezoid on an even fast-decaying function is spectrally
    // accurate; the staggered midpoint rule for d>=2 is second order
    CHECK(std::abs(got / want - 1.0) < (d == 1 ? 1e-12 : 1e-5));
  }
}

TEST_CASE("laplacian is 4th order on a gaussian") {
  for (int d : {1, 3}) {
    double prev = 0.0;
    for (int N : {512, 1024}) {
      RadialGrid g = RadialGrid::make(d, N, 10.0);
      RealField f(g.N), exact(g.N);
      for (int i = 0; i < g.N; ++i) {
        double r2 = g.r[i] * g.r[i];
        f[i] = std::exp(-r2);
        exact[i] = (4.0 * r2 - 2.0 * d) * std::exp(-r2);
      }
      RealField lf = laplacian_radial(g, f);
      double sup = 0.0;
      for (int i = 0; i < g.N - 4; ++i)
        sup = std::max(sup, std::abs(lf[i] - exact[i]));
      if (prev > 0.0) {
        double order = std::log2(prev / sup);
        CHECK(order > 3.5);
      }
      prev = sup;
      CHECK(sup < 2e-5);
    }
  }
}

TEST_CASE("deriv matches the analytic derivative") {
  RadialGrid g = RadialGrid::make(2, 1024, 10.0);
  RealField f(g.N);
  // radial fields are even in r, so test an even profile
  for (int i = 0; i < g.N; ++i)
    f[i] = std::exp(-0.5 * g.r[i] * g.r[i]);
  RealField df = deriv(g, f);
  double sup = 0.0;
  for (int i = 0; i < g.N - 4; ++i) {
    double ex = -g.r[i] * std::exp(-0.5 * g.r[i] * g.r[i]);
    sup = std::max(sup, std::abs(df[i] - ex));
  }
  CHECK(sup < 1e-7);
}

TEST_CASE("banded solve inverts banded apply") {
  RadialGrid g = RadialGrid::make(1, 256, 8.0);
  RealField c(g.N, 1.0);
  Banded A = schrodinger_op(g, c);
  RealField x(g.N);
  for (int i = 0; i < g.N; ++i) x[i] = std::sin(0.3 * g.r[i]) * std::exp(-g.r[i]);
  RealField b = apply_banded(A, x);
  RealField x2 = solve_banded(A, b);
  double sup = 0.0;
  for (int i = 0; i < g.N; ++i) sup = std::max(sup, std::abs(x2[i] - x[i]));
  CHECK(sup < 1e-11);
}

TEST_CASE("complex banded LU round trip") {
  RadialGrid g = RadialGrid::make(1, 256, 8.0);
  Banded re = laplacian_op(g);
  Banded im;
  im.init(g.N);
  for (int i = 0; i < g.N; ++i) im.at(i, i) = 0.5 + 0.01 * i;
  CBandedLU lu;
  lu.factor(re, im);
  CplxField x(g.N);
  for (int i = 0; i < g.N; ++i)
    x[i] = cplx(std::cos(g.r[i]), std::sin(g.r[i])) * std::exp(-g.r[i]);
  // b = (re + i im) x
  CplxField br = apply_banded(re, x);
  CplxField b(g.N);
  for (int i = 0; i < g.N; ++i) b[i] = br[i];
  CplxField xi = x;
  for (auto& z : xi) z *= cplx(0.0, 1.0);
  CplxField bi = apply_banded(im, xi);
  for (int i = 0; i < g.N; ++i) b[i] += bi[i];
  CplxField x2 = lu.solve(b);
  CHECK(sup_norm(x2) > 0.1);
  double sup = 0.0;
  for (int i = 0; i < g.N; ++i) sup = std::max(sup, std::abs(x2[i] - x[i]));
  CHECK(sup < 1e-11);
}

TEST_CASE("grad_norm2sq matches the analytic gradient integral") {
  // int |grad e^{-r^2/2}|^2 dx in d=3 is 3 pi^{3/2} / 2
  RadialGrid g = RadialGrid::make(3, 2048, 14.0);
  RealField f(g.N);
  for (int i = 0; i < g.N; ++i) f[i] = std::exp(-0.5 * g.r[i] * g.r[i]);
  double want = 1.5 * std::pow(M_PI, 1.5);
  CHECK(std::abs(grad_norm2sq(g, f) / want - 1.0) < 1e-9);
}
