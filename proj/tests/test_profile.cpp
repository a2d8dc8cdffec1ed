#include "doctest.h"

#include "core/profile.hpp"

using namespace dpnls;

namespace {
struct Fix {
  RadialGrid g = RadialGrid::make(1, 2048, 30.0);
  GroundState gs = solve_Q(1, g);
  LinearizedPair lp = LinearizedPair::make(gs);
  ProfileParams prm = ProfileParams::make(1, 3.0);
};
const Fix& fix() {
  static Fix f;
  return f;
}
}  // namespace

TEST_CASE("parameter validation") {
  CHECK_THROWS(ProfileParams::make(1, 5.0));  // p = 1 + 4/d excluded
  CHECK_THROWS(ProfileParams::make(1, 1.0));
  CHECK(ProfileParams::make(1, 3.0).alpha == doctest::Approx(1.0));
  CHECK(ProfileParams::make(2, 2.0).alpha == doctest::Approx(1.0));
}

TEST_CASE("leading law coefficient matches its closed form") {
  const Fix& f = fix();
  ProfileCoeffs pc = build_profile(0, f.prm, f.gs, f.lp);
  double want = 2.0 * 1 * (3.0 - 1.0) / (3.0 + 1.0) * f.gs.p_norm(4.0) /
                f.gs.yQ2;  // 2d(p-1)/(p+1) ||Q||_{p+1}^{p+1} / ||yQ||_2^2
  CHECK(pc.beta[0][0] == doctest::Approx(want).epsilon(1e-6));
  CHECK(pc.beta[0][0] > 0.0);
  // frozen reference value for d=1, p=3
  CHECK(pc.beta[0][0] == doctest::Approx(1.787561482176).epsilon(1e-6));
}

TEST_CASE("first profile correction is orthogonal to Q") {
  const Fix& f = fix();
  ProfileCoeffs pc = build_profile(1, f.prm, f.gs, f.lp);
  for (int j = 0; j <= 1; ++j)
    for (int k = 0; j + k <= 1; ++k)
      CHECK(std::abs(inner(f.g, pc.Pm[j][k], f.gs.Q)) <
            1e-10 * std::sqrt(norm2sq(f.g, pc.Pm[j][k]) * f.gs.mass) + 1e-14);
}

TEST_CASE("theta sums the manifest") {
  const Fix& f = fix();
  ProfileCoeffs pc = build_profile(1, f.prm, f.gs, f.lp);
  double b = 0.1, lam = 0.05;
  double want = 0.0;
  for (int j = 0; j <= 1; ++j)
    for (int k = 0; j + k <= 1; ++k)
      want += pc.beta[j][k] * std::pow(b, 2 * j) *
              std::pow(lam, (k + 1) * f.prm.alpha);
  CHECK(theta(pc, b, lam) == doctest::Approx(want).epsilon(1e-14));
}

TEST_CASE("analytic parameter derivatives match finite differences") {
  const Fix& f = fix();
  ProfileCoeffs pc = build_profile(2, f.prm, f.gs, f.lp);
  double b = 0.12, lam = 0.04, db = 1e-6, dl = 1e-6;
  CplxField P, Pdb, Pdlam;
  eval_P_derivs(pc, b, lam, &P, &Pdb, &Pdlam);
  CplxField Pp = eval_profile(pc, b + db, lam).P;
  CplxField Pm = eval_profile(pc, b - db, lam).P;
  CplxField Lp = eval_profile(pc, b, lam + dl).P;
  CplxField Lm = eval_profile(pc, b, lam - dl).P;
  double s1 = 0.0, s2 = 0.0;
  for (int i = 0; i < f.g.N; ++i) {
    s1 = std::max(s1, std::abs((Pp[i] - Pm[i]) / (2 * db) - Pdb[i]));
    s2 = std::max(s2, std::abs((Lp[i] - Lm[i]) / (2 * dl) - Pdlam[i]));
  }
  CHECK(s1 < 1e-8);
  CHECK(s2 < 1e-6);
}

TEST_CASE("residual shrinks at the designed order in the small parameter") {
  const Fix& f = fix();
  for (int K : {0, 1}) {
    ProfileCoeffs pc = build_profile(K, f.prm, f.gs, f.lp);
    double kappa = 2.0 * pc.beta[0][0] / (2.0 - f.prm.alpha);
    auto wnorm = [&](double lam) {
      double b = std::sqrt(kappa * std::pow(lam, f.prm.alpha));
      double b_s = theta(pc, b, lam) - b * b;
      return residual_Psi(pc, b, lam, -b, b_s).weighted_norm;
    };
    double w1 = wnorm(1e-1), w2 = wnorm(1e-2);
    double slope = std::log10(w1 / w2);  // d log w / d log(b^2+lam) ~ this
    CHECK(slope > K + 2 - 0.2);
  }
}

TEST_CASE("profile mass drift is higher order than the profile itself") {
  const Fix& f = fix();
  ProfileCoeffs pc = build_profile(1, f.prm, f.gs, f.lp);
  double kappa = 2.0 * pc.beta[0][0] / (2.0 - f.prm.alpha);
  double lam = 1e-2, b = std::sqrt(kappa * lam);
  double drift =
      profile_mass_drift(pc, b, lam, -b, theta(pc, b, lam) - b * b);
  CHECK(std::abs(drift) < 1e-3);
}
