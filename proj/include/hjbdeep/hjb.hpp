#pragma once

#include "hjbdeep/collocation.hpp"
#include "hjbdeep/market.hpp"
#include "hjbdeep/net.hpp"
#include "hjbdeep/params.hpp"

#include <vector>

namespace hjbdeep {

struct ResidualSample {
    double W = 0.0, L = 0.0, t = 0.0;
    InputJet jet;
    double omega = 0.0;
    double residual = 0.0;
};

// Coefficients of omega |-> generator applied to a fixed jet:
// A omega^2 + B omega + C.
struct QuadraticInOmega {
    double A = 0.0, B = 0.0, C = 0.0;

    double eval(double omega) const { return (A * omega + B) * omega + C; }
};

// Generator applied to the jet at one point under control omega.
double apply_operator(const ModelParams& p, double W, double L, double t,
                      const InputJet& jet, double omega);

QuadraticInOmega decompose_quadratic(const ModelParams& p, double W, double L,
                                     double t, const InputJet& jet);

// Exact argmax of A omega^2 + B omega over [0,1]; ties resolve to the
// smaller omega.
double pointwise_optimal_control(const QuadraticInOmega& q);
double pointwise_optimal_control(double A, double B);

struct PdeLossResult {
    double loss = 0.0;           // interior + w_term * terminal
    double interior_loss = 0.0;  // mean squared residual
    double terminal_loss = 0.0;  // mean squared terminal mismatch
    std::vector<double> residuals;
};

// Mean squared generator residual over interior points plus w_term times
// the mean squared terminal mismatch; the control comes from control_net.
PdeLossResult pde_loss(const ModelParams& p, const UtilitySpec& utility,
                       const TwoLayerNet& value_net, const TwoLayerNet& control_net,
                       const CollocationBatch& batch, double w_term = 1.0);

// Mean signed generator residual over interior points; the quantity the
// improvement phase pushes up.
double improvement_objective(const ModelParams& p, const TwoLayerNet& value_net,
                             const TwoLayerNet& control_net,
                             const CollocationBatch& batch);

}  // namespace hjbdeep
