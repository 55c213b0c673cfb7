#pragma once

#include "hjbdeep/params.hpp"

namespace hjbdeep {

// Cost-coupled mean-reversion level of the liquidity process:
// theta(L) = theta_bar + kappa * lambda * L^zeta.
double mean_reversion_level(const ModelParams& p, double L);

// Wealth-diffusion variance coefficient beta^2 L^2 + sigma_S^2
// + 2 rho1 sigma_S beta L; nonnegative for any |rho1| <= 1.
double sigma2_total(const ModelParams& p, double L);

// Standard deviation of (beta*L*dBg + sigma_S*dBs)/sqrt(dt):
// sqrt((beta L + sigma_S rho1)^2 + (1 - rho1^2) sigma_S^2).
double shock_std(const ModelParams& p, double L);

// E|beta*L*dBg + sigma_S*dBs| over one rebalancing step:
// sqrt(2/pi) * shock_std * sqrt(delta_t).
double expected_abs_shock(const ModelParams& p, double L);

// c(L) = sqrt(2/(pi delta_t)) * kappa * shock_std(L). The expected
// per-unit-time trading cost drift is c(L) * omega * (1 - omega) * W.
double cost_coefficient(const ModelParams& p, double L);

// Coefficients of the generator applied to a value function at
// (W, L, t) under the fraction omega in [0,1]:
//   a_t Q_t + a_W Q_W + a_WW Q_WW + a_L Q_L + a_LL Q_LL + a_WL Q_WL.
struct HjbCoefficients {
    double a_t;   // = 1
    double a_W;   // r W + (mu - r) omega W - c(L) omega (1 - omega) W
    double a_WW;  // 1/2 sigma2_total(L) omega^2 W^2
    double a_L;   // alpha (theta(L) - L)
    double a_LL;  // 1/2 sigma_L^2
    double a_WL;  // (rho2 sigma_S + rho3 beta L) sigma_L omega W
};

HjbCoefficients hjb_coefficients(const ModelParams& p, double W, double L,
                                 double t, double omega);

}  // namespace hjbdeep
