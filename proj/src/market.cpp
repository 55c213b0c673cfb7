#include "hjbdeep/market.hpp"

#include <cmath>
#include <stdexcept>

namespace hjbdeep {

double mean_reversion_level(const ModelParams& p, double L) {
    if (L < 0.0) throw std::domain_error("mean_reversion_level: L must be >= 0");
    if (p.kappa == 0.0 || p.lambda == 0.0 || L == 0.0) return p.theta_bar;
    return p.theta_bar + p.kappa * p.lambda * std::pow(L, p.zeta);
}

double sigma2_total(const ModelParams& p, double L) {
    const double bL = p.beta * L;
    return bL * bL + p.sigma_S * p.sigma_S + 2.0 * p.rho1 * p.sigma_S * bL;
}

double shock_std(const ModelParams& p, double L) {
    if (L < 0.0) throw std::domain_error("shock_std: L must be >= 0");
    const double a = p.beta * L + p.sigma_S * p.rho1;
    const double b2 = (1.0 - p.rho1 * p.rho1) * p.sigma_S * p.sigma_S;
    return std::sqrt(a * a + b2);
}

double expected_abs_shock(const ModelParams& p, double L) {
    return std::sqrt(2.0 / M_PI) * shock_std(p, L) * std::sqrt(p.delta_t);
}

double cost_coefficient(const ModelParams& p, double L) {
    if (p.kappa == 0.0) return 0.0;
    return std::sqrt(2.0 / (M_PI * p.delta_t)) * p.kappa * shock_std(p, L);
}

HjbCoefficients hjb_coefficients(const ModelParams& p, double W, double L,
                                 double t, double omega) {
    if (!(omega >= 0.0 && omega <= 1.0))
        throw std::domain_error("hjb_coefficients: omega must lie in [0,1]");
    (void)t;  // coefficients are time-homogeneous
    HjbCoefficients c;
    c.a_t = 1.0;
    c.a_W = p.r * W + (p.mu - p.r) * omega * W -
            cost_coefficient(p, L) * omega * (1.0 - omega) * W;
    c.a_WW = 0.5 * sigma2_total(p, L) * omega * omega * W * W;
    c.a_L = p.alpha * (mean_reversion_level(p, L) - L);
    c.a_LL = 0.5 * p.sigma_L * p.sigma_L;
    c.a_WL = (p.rho2 * p.sigma_S + p.rho3 * p.beta * L) * p.sigma_L * omega * W;
    return c;
}

}  // namespace hjbdeep
