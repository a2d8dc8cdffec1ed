// Recursive construction of the blow-up profile
//   P = Q + sum_{j+k<=K} b^{2j} lambda^{(k+1)alpha} ( P+_{jk} + i b P-_{jk} )
// together with the scalar series theta(b,lambda) = sum beta_{jk} b^{2j}
// lambda^{(k+1)alpha}, the residual Psi of the rescaled equation, and the
// profile's energy/mass diagnostics.
#pragma once

#include "core/linops.hpp"

namespace dpnls {

struct ProfileParams {
  int d = 1;
  double p = 3.0;
  double alpha = 1.0;  // 2 - d(p-1)/2

  static ProfileParams make(int d, double p) {
    if (p <= 1.0 || p >= 1.0 + 4.0 / d)
      throw std::invalid_argument("need 1 < p < 1 + 4/d");
    return {d, p, 2.0 - d * (p - 1.0) / 2.0};
  }
};

struct ProfileCoeffs {
  int K = 0;
  ProfileParams prm;
  const GroundState* gs = nullptr;
  const LinearizedPair* lp = nullptr;
  // indexed [j][k], valid for j+k <= K
  std::vector<std::vector<RealField>> Pp, Pm;
  std::vector<std::vector<double>> beta;

  bool in_sigma(int j, int k) const { return j >= 0 && k >= 0 && j + k <= K; }
};

ProfileCoeffs build_profile(int K, const ProfileParams& prm,
                            const GroundState& gs, const LinearizedPair& lp);

double theta(const ProfileCoeffs& pc, double b, double lambda);

struct ProfileEval {
  CplxField P;   // P(y; b, lambda)
  CplxField Pb;  // P * exp(-i b |y|^2 / 4)
  double theta = 0.0;
};

ProfileEval eval_profile(const ProfileCoeffs& pc, double b, double lambda);

// P together with its analytic parameter derivatives dP/db and dP/dlambda
// (differentiating the monomial representation, not finite differences)
void eval_P_derivs(const ProfileCoeffs& pc, double b, double lambda,
                   CplxField* P, CplxField* Pdb, CplxField* Pdlam);

struct PsiResult {
  CplxField psi;
  double weighted_norm = 0.0;  // sup e^{r/2} (|Psi| + |Psi'|) where Q >= 1e-12
};

// Psi = i dP/ds + Delta P - P + f(P) + lambda^alpha g(P) + theta |y|^2 P / 4
// with dP/ds taken through the supplied modulation rates.
PsiResult residual_Psi(const ProfileCoeffs& pc, double b, double lambda,
                       double lambda_s_over_lambda, double b_s);

// E of the rescaled profile lambda^{-d/2} P_b(x/lambda) e^{i gamma},
// evaluated in the y frame (gamma drops out).
double profile_energy(const ProfileCoeffs& pc, double b, double lambda);

// quadrature of <Psi e^{-i b|y|^2/4}, i P_b>, the mass-drift pairing
double profile_mass_drift(const ProfileCoeffs& pc, double b, double lambda,
                          double lambda_s_over_lambda, double b_s);

}  // namespace dpnls
