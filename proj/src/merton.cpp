#include "hjbdeep/merton.hpp"

#include "hjbdeep/hjb.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace hjbdeep {

MertonSolution::MertonSolution(const ModelParams& params, const UtilitySpec& utility)
    : params_(params.frictionless()), utility_(utility) {
    params_.validate();
    utility_.validate();
    excess_ = params_.mu - params_.r;
    sig2_ = params_.sigma_S * params_.sigma_S;
    certify();
}

double MertonSolution::policy(double W, double t, bool* clamped) const {
    double omega;
    switch (utility_.kind) {
        case UtilityKind::Power:
            omega = excess_ / ((1.0 - utility_.gamma) * sig2_);
            break;
        case UtilityKind::Log:
            omega = excess_ / sig2_;
            break;
        case UtilityKind::Exponential: {
            if (W <= 0.0)
                throw std::domain_error("merton_policy: exponential form requires W > 0");
            const double disc = std::exp(-params_.r * (params_.T - t));
            omega = disc * excess_ / (utility_.eta * sig2_ * W);
            break;
        }
        default:
            throw std::logic_error("unknown utility kind");
    }
    const double clipped = std::min(1.0, std::max(0.0, omega));
    if (clamped) *clamped = (clipped != omega);
    return clipped;
}

double MertonSolution::value(double W, double t) const {
    return value_jet(W, t).value;
}

InputJet MertonSolution::value_jet(double W, double t) const {
    InputJet jet;
    const double tau = params_.T - t;
    switch (utility_.kind) {
        case UtilityKind::Power: {
            if (W <= 0.0) throw std::domain_error("merton value: W must be > 0");
            const double g = utility_.gamma;
            const double rate = params_.r + excess_ * excess_ / (2.0 * sig2_ * (1.0 - g));
            const double F = std::exp(g * rate * tau);
            const double Wg = std::pow(W, g);
            jet.value = Wg / g * F;
            jet.dt = -(g * rate) * jet.value;
            jet.dW = std::pow(W, g - 1.0) * F;
            jet.dWW = (g - 1.0) * std::pow(W, g - 2.0) * F;
            break;
        }
        case UtilityKind::Log: {
            if (W <= 0.0) throw std::domain_error("merton value: W must be > 0");
            const double rate = params_.r + excess_ * excess_ / (2.0 * sig2_);
            jet.value = std::log(W) + rate * tau;
            jet.dt = -rate;
            jet.dW = 1.0 / W;
            jet.dWW = -1.0 / (W * W);
            break;
        }
        case UtilityKind::Exponential: {
            const double eta = utility_.eta;
            const double m = std::exp(params_.r * tau);
            const double q = excess_ * excess_ * tau / (2.0 * sig2_);
            const double E = std::exp(-eta * W * m - q);
            jet.value = 1.0 - E;
            // d/dt of (-eta W m - q): eta W r m + excess^2/(2 sig2)
            jet.dt = -E * (eta * W * params_.r * m + excess_ * excess_ / (2.0 * sig2_));
            jet.dW = eta * m * E;
            jet.dWW = -eta * eta * m * m * E;
            break;
        }
        default:
            throw std::logic_error("unknown utility kind");
    }
    return jet;
}

void MertonSolution::certify() const {
    // Probe where the unconstrained policy stays inside [0,1] so the
    // closed form solves the constrained equation too.
    const int nW = 9, nt = 7;
    for (int i = 0; i < nW; ++i) {
        const double W = 0.5 + 4.5 * i / (nW - 1);
        for (int j = 0; j < nt; ++j) {
            const double t = params_.T * j / (nt - 1);
            bool clamped = false;
            const double omega = policy(W, t, &clamped);
            if (clamped) continue;
            const InputJet jet = value_jet(W, t);
            const double res = apply_operator(params_, W, 0.0, t, jet, omega);
            const double scale = 1.0 + std::abs(jet.value);
            if (std::abs(res) > 1e-8 * scale) {
                std::ostringstream msg;
                msg << "Merton certification failed at (W=" << W << ", t=" << t
                    << "): residual " << res;
                throw std::runtime_error(msg.str());
            }
        }
    }
}

double merton_policy(const UtilitySpec& utility, const ModelParams& params,
                     double W, double t, bool* clamped) {
    return MertonSolution(params, utility).policy(W, t, clamped);
}

double merton_value_power(const ModelParams& params, double gamma, double W, double t) {
    if (gamma == 0.0 || gamma >= 1.0)
        throw std::domain_error("merton_value_power: gamma must satisfy gamma < 1, gamma != 0");
    return MertonSolution(params, UtilitySpec::power(gamma)).value(W, t);
}

}  // namespace hjbdeep
