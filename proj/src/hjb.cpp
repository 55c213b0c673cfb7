#include "hjbdeep/hjb.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace hjbdeep {

namespace {

inline void check_jet_finite(const InputJet& jet, double W, double L, double t) {
    const bool ok = std::isfinite(jet.value) && std::isfinite(jet.dW) &&
                    std::isfinite(jet.dL) && std::isfinite(jet.dt) &&
                    std::isfinite(jet.dWW) && std::isfinite(jet.dLL) &&
                    std::isfinite(jet.dWL);
    if (!ok) {
        std::ostringstream msg;
        msg << "non-finite jet at (W=" << W << ", L=" << L << ", t=" << t << ")";
        throw std::runtime_error(msg.str());
    }
}

}  // namespace

double apply_operator(const ModelParams& p, double W, double L, double t,
                      const InputJet& jet, double omega) {
    check_jet_finite(jet, W, L, t);
    const HjbCoefficients c = hjb_coefficients(p, W, L, t, omega);
    return c.a_t * jet.dt + c.a_W * jet.dW + c.a_WW * jet.dWW + c.a_L * jet.dL +
           c.a_LL * jet.dLL + c.a_WL * jet.dWL;
}

QuadraticInOmega decompose_quadratic(const ModelParams& p, double W, double L,
                                     double t, const InputJet& jet) {
    check_jet_finite(jet, W, L, t);
    (void)t;
    const double cost = cost_coefficient(p, L);
    const double cross = (p.rho2 * p.sigma_S + p.rho3 * p.beta * L) * p.sigma_L;
    QuadraticInOmega q;
    q.A = cost * W * jet.dW + 0.5 * sigma2_total(p, L) * W * W * jet.dWW;
    q.B = (p.mu - p.r) * W * jet.dW - cost * W * jet.dW + cross * W * jet.dWL;
    q.C = jet.dt + p.r * W * jet.dW + p.alpha * (mean_reversion_level(p, L) - L) * jet.dL +
          0.5 * p.sigma_L * p.sigma_L * jet.dLL;
    return q;
}

double pointwise_optimal_control(double A, double B) {
    if (A < 0.0) {
        const double vertex = -B / (2.0 * A);
        if (vertex <= 0.0) return 0.0;
        if (vertex >= 1.0) return 1.0;
        return vertex;
    }
    if (A > 0.0) {
        // Convex: the better endpoint; value(1) - value(0) = A + B.
        return (A + B > 0.0) ? 1.0 : 0.0;
    }
    return (B > 0.0) ? 1.0 : 0.0;
}

double pointwise_optimal_control(const QuadraticInOmega& q) {
    if (!std::isfinite(q.A) || !std::isfinite(q.B))
        throw std::invalid_argument("pointwise_optimal_control: non-finite coefficients");
    return pointwise_optimal_control(q.A, q.B);
}

PdeLossResult pde_loss(const ModelParams& p, const UtilitySpec& utility,
                       const TwoLayerNet& value_net, const TwoLayerNet& control_net,
                       const CollocationBatch& batch, double w_term) {
    if (batch.interior.empty())
        throw std::invalid_argument("pde_loss: empty interior batch");
    PdeLossResult out;
    out.residuals.reserve(batch.interior.size());

    JetWorkspace ws;
    double sum_sq = 0.0;
    for (const auto& pt : batch.interior) {
        const InputJet jet = forward_jet_ws(value_net, pt[0], pt[1], pt[2], ws);
        const double omega = forward(control_net, pt[0], pt[1], pt[2]);
        const double r = apply_operator(p, pt[0], pt[1], pt[2], jet, omega);
        if (!std::isfinite(r)) {
            std::ostringstream msg;
            msg << "pde_loss: non-finite residual at (W=" << pt[0] << ", L=" << pt[1]
                << ", t=" << pt[2] << ")";
            throw std::runtime_error(msg.str());
        }
        out.residuals.push_back(r);
        sum_sq += r * r;
    }
    out.interior_loss = sum_sq / static_cast<double>(batch.interior.size());

    if (!batch.terminal.empty()) {
        double term_sq = 0.0;
        for (const auto& pt : batch.terminal) {
            const double q = forward(value_net, pt[0], pt[1], pt[2]);
            const double miss = q - utility_value(utility, pt[0]);
            term_sq += miss * miss;
        }
        out.terminal_loss = term_sq / static_cast<double>(batch.terminal.size());
    }
    out.loss = out.interior_loss + w_term * out.terminal_loss;
    return out;
}

double improvement_objective(const ModelParams& p, const TwoLayerNet& value_net,
                             const TwoLayerNet& control_net,
                             const CollocationBatch& batch) {
    if (batch.interior.empty())
        throw std::invalid_argument("improvement_objective: empty interior batch");
    JetWorkspace ws;
    double sum = 0.0;
    for (const auto& pt : batch.interior) {
        const InputJet jet = forward_jet_ws(value_net, pt[0], pt[1], pt[2], ws);
        const double omega = forward(control_net, pt[0], pt[1], pt[2]);
        const double r = apply_operator(p, pt[0], pt[1], pt[2], jet, omega);
        if (!std::isfinite(r)) {
            std::ostringstream msg;
            msg << "improvement_objective: non-finite value at (W=" << pt[0]
                << ", L=" << pt[1] << ", t=" << pt[2] << ")";
            throw std::runtime_error(msg.str());
        }
        sum += r;
    }
    return sum / static_cast<double>(batch.interior.size());
}

}  // namespace hjbdeep
