#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace hjbdeep {

enum class Head { Linear, Sigmoid };

// Value and first/second partial derivatives of a scalar field at one
// (W, L, t) point. The single mixed entry serves both d2/dWdL orders.
struct InputJet {
    double value = 0.0;
    double dW = 0.0, dL = 0.0, dt = 0.0;
    double dWW = 0.0, dLL = 0.0, dWL = 0.0;
};

// Two-layer perceptron on (W, L, t): y = head(W2 * tanh(W1 x + b1) + b2).
// Inputs are affinely mapped to [-1,1]^3 using [scale_lo, scale_hi];
// all derivative outputs are chain-ruled back to physical units.
struct TwoLayerNet {
    int hidden = 128;
    Head head = Head::Linear;
    std::array<double, 3> scale_lo{-1.0, -1.0, -1.0};
    std::array<double, 3> scale_hi{1.0, 1.0, 1.0};
    std::vector<double> W1;  // hidden x 3, row-major
    std::vector<double> b1;  // hidden
    std::vector<double> W2;  // hidden
    double b2 = 0.0;

    std::size_t param_count() const { return W1.size() + b1.size() + W2.size() + 1; }
};

// Gradient arrays shaped exactly like the net's parameters.
struct ParamGrad {
    std::vector<double> W1, b1, W2;
    double b2 = 0.0;

    explicit ParamGrad(int hidden = 0)
        : W1(static_cast<std::size_t>(hidden) * 3, 0.0),
          b1(hidden, 0.0),
          W2(hidden, 0.0) {}
    void reset();
    void add(const ParamGrad& other);
    double max_abs() const;
};

struct AdamState {
    double learning_rate = 1e-3;
    double beta1 = 0.9;
    double beta2 = 0.999;
    double eps = 1e-8;
    long step = 0;
    ParamGrad m;  // first moments
    ParamGrad v;  // second moments

    explicit AdamState(int hidden = 0, double lr = 1e-3)
        : learning_rate(lr), m(hidden), v(hidden) {}
};

// Uniform init scaled by 1/sqrt(fan_in), zero biases.
TwoLayerNet init_net(int hidden, Head head, const std::array<double, 3>& lo,
                     const std::array<double, 3>& hi, std::uint64_t seed);

double forward(const TwoLayerNet& net, double W, double L, double t);
InputJet forward_jet(const TwoLayerNet& net, double W, double L, double t);

// Per-point scratch reused across points so tanh and its derivatives are
// evaluated once per point even when a jet is followed by its VJP.
struct JetWorkspace {
    std::vector<double> h, hp, hpp, hppp;
    std::array<double, 3> xs{};   // scaled input
    double u = 0.0;               // pre-head value
    double u1[3] = {0, 0, 0};     // pre-head first derivatives (scaled)
    double u00 = 0.0, u11 = 0.0, u01 = 0.0;  // pre-head seconds over (W,L)
    double y = 0.0;               // head output
};

InputJet forward_jet_ws(const TwoLayerNet& net, double W, double L, double t,
                        JetWorkspace& ws);

// Accumulate d(loss)/d(parameters) for one point given the adjoint of the
// point's jet (d loss / d each jet entry, in physical units). Must be
// called with the workspace produced by forward_jet_ws at the same point.
void jet_vjp_ws(const TwoLayerNet& net, const JetWorkspace& ws,
                const InputJet& adjoint, ParamGrad& grad);

// Reverse-mode parameter gradient of sum_p <adjoint_p, jet(x_p)>; points
// are accumulated in index order.
ParamGrad loss_backward(const TwoLayerNet& net,
                        const std::vector<std::array<double, 3>>& points,
                        const std::vector<InputJet>& adjoints);

// Standard Adam with bias correction. Throws on non-finite gradients,
// naming the offending parameter block.
void adam_step(TwoLayerNet& net, const ParamGrad& grad, AdamState& state);

// Checkpoint container (versioned text format).
void save_net(const TwoLayerNet& net, const std::string& path);
TwoLayerNet load_net(const std::string& path);

}  // namespace hjbdeep
