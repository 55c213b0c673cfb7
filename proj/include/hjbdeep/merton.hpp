#pragma once

#include "hjbdeep/net.hpp"
#include "hjbdeep/params.hpp"

namespace hjbdeep {

// Closed-form frictionless solutions for the one-asset allocation problem,
// used as independent ground truth. Construction certifies the value
// function against the frictionless generator on a probe grid.
class MertonSolution {
public:
    MertonSolution(const ModelParams& params, const UtilitySpec& utility);

    // Optimal risky fraction, clamped to [0,1]. clamped (optional out)
    // reports whether the unconstrained optimum fell outside.
    double policy(double W, double t, bool* clamped = nullptr) const;

    double value(double W, double t) const;

    // Full jet of the value function (closed form, exact).
    InputJet value_jet(double W, double t) const;

    const ModelParams& params() const { return params_; }
    const UtilitySpec& utility() const { return utility_; }

private:
    void certify() const;  // throws if the PDE residual check fails

    ModelParams params_;   // stored with beta = kappa = sigma_L = 0
    UtilitySpec utility_;
    double excess_ = 0.0;  // mu - r
    double sig2_ = 0.0;    // sigma_S^2
};

double merton_policy(const UtilitySpec& utility, const ModelParams& params,
                     double W, double t, bool* clamped = nullptr);

// (W^gamma / gamma) * exp(gamma [r + (mu-r)^2 / (2 sigma^2 (1-gamma))] (T-t)).
double merton_value_power(const ModelParams& params, double gamma, double W, double t);

}  // namespace hjbdeep
