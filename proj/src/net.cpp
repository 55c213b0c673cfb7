#include "hjbdeep/net.hpp"

#include "hjbdeep/rng.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <stdexcept>

namespace hjbdeep {

void ParamGrad::reset() {
    std::fill(W1.begin(), W1.end(), 0.0);
    std::fill(b1.begin(), b1.end(), 0.0);
    std::fill(W2.begin(), W2.end(), 0.0);
    b2 = 0.0;
}

void ParamGrad::add(const ParamGrad& other) {
    if (W1.size() != other.W1.size())
        throw std::invalid_argument("ParamGrad::add: shape mismatch");
    for (std::size_t i = 0; i < W1.size(); ++i) W1[i] += other.W1[i];
    for (std::size_t i = 0; i < b1.size(); ++i) b1[i] += other.b1[i];
    for (std::size_t i = 0; i < W2.size(); ++i) W2[i] += other.W2[i];
    b2 += other.b2;
}

double ParamGrad::max_abs() const {
    double m = std::abs(b2);
    for (double x : W1) m = std::max(m, std::abs(x));
    for (double x : b1) m = std::max(m, std::abs(x));
    for (double x : W2) m = std::max(m, std::abs(x));
    return m;
}

TwoLayerNet init_net(int hidden, Head head, const std::array<double, 3>& lo,
                     const std::array<double, 3>& hi, std::uint64_t seed) {
    if (hidden < 1) throw std::invalid_argument("init_net: hidden_size must be >= 1");
    for (int j = 0; j < 3; ++j)
        if (!(lo[j] < hi[j]))
            throw std::invalid_argument("init_net: scaling bounds must satisfy lo < hi");
    TwoLayerNet net;
    net.hidden = hidden;
    net.head = head;
    net.scale_lo = lo;
    net.scale_hi = hi;
    net.W1.resize(static_cast<std::size_t>(hidden) * 3);
    net.b1.assign(hidden, 0.0);
    net.W2.resize(hidden);
    net.b2 = 0.0;

    Rng rng(derive_stream(seed, 0x6e65ULL));
    const double a1 = 1.0 / std::sqrt(3.0);
    const double a2 = 1.0 / std::sqrt(static_cast<double>(hidden));
    for (auto& w : net.W1) w = rng.uniform(-a1, a1);
    for (auto& w : net.W2) w = rng.uniform(-a2, a2);
    return net;
}

namespace {

inline void scale_input(const TwoLayerNet& net, double W, double L, double t,
                        std::array<double, 3>& xs, std::array<double, 3>& inv_half) {
    const double x[3] = {W, L, t};
    for (int j = 0; j < 3; ++j) {
        const double half = 0.5 * (net.scale_hi[j] - net.scale_lo[j]);
        const double center = 0.5 * (net.scale_hi[j] + net.scale_lo[j]);
        inv_half[j] = 1.0 / half;
        xs[j] = (x[j] - center) * inv_half[j];
    }
}

inline void check_finite_input(double W, double L, double t) {
    if (!std::isfinite(W) || !std::isfinite(L) || !std::isfinite(t))
        throw std::invalid_argument("network input must be finite");
}

}  // namespace

double forward(const TwoLayerNet& net, double W, double L, double t) {
    check_finite_input(W, L, t);
    std::array<double, 3> xs, inv_half;
    scale_input(net, W, L, t, xs, inv_half);
    double u = net.b2;
    const int n = net.hidden;
    for (int i = 0; i < n; ++i) {
        const double* w = &net.W1[static_cast<std::size_t>(i) * 3];
        const double z = w[0] * xs[0] + w[1] * xs[1] + w[2] * xs[2] + net.b1[i];
        u += net.W2[i] * std::tanh(z);
    }
    if (net.head == Head::Sigmoid) return 1.0 / (1.0 + std::exp(-u));
    return u;
}

InputJet forward_jet_ws(const TwoLayerNet& net, double W, double L, double t,
                        JetWorkspace& ws) {
    check_finite_input(W, L, t);
    const int n = net.hidden;
    ws.h.resize(n);
    ws.hp.resize(n);
    ws.hpp.resize(n);
    ws.hppp.resize(n);

    std::array<double, 3> inv_half;
    scale_input(net, W, L, t, ws.xs, inv_half);

    double u = net.b2;
    double u1[3] = {0.0, 0.0, 0.0};
    double u00 = 0.0, u11 = 0.0, u01 = 0.0;
    for (int i = 0; i < n; ++i) {
        const double* w = &net.W1[static_cast<std::size_t>(i) * 3];
        const double z = w[0] * ws.xs[0] + w[1] * ws.xs[1] + w[2] * ws.xs[2] + net.b1[i];
        const double h = std::tanh(z);
        const double hp = 1.0 - h * h;
        const double hpp = -2.0 * h * hp;
        ws.h[i] = h;
        ws.hp[i] = hp;
        ws.hpp[i] = hpp;
        ws.hppp[i] = -2.0 * hp * (1.0 - 3.0 * h * h);

        const double c = net.W2[i];
        u += c * h;
        const double chp = c * hp;
        u1[0] += chp * w[0];
        u1[1] += chp * w[1];
        u1[2] += chp * w[2];
        const double chpp = c * hpp;
        u00 += chpp * w[0] * w[0];
        u11 += chpp * w[1] * w[1];
        u01 += chpp * w[0] * w[1];
    }
    ws.u = u;
    ws.u1[0] = u1[0];
    ws.u1[1] = u1[1];
    ws.u1[2] = u1[2];
    ws.u00 = u00;
    ws.u11 = u11;
    ws.u01 = u01;

    double y = u, y1[3] = {u1[0], u1[1], u1[2]};
    double y00 = u00, y11 = u11, y01 = u01;
    if (net.head == Head::Sigmoid) {
        const double s = 1.0 / (1.0 + std::exp(-u));
        const double s1 = s * (1.0 - s);
        const double s2 = s1 * (1.0 - 2.0 * s);
        y = s;
        for (int a = 0; a < 3; ++a) y1[a] = s1 * u1[a];
        y00 = s2 * u1[0] * u1[0] + s1 * u00;
        y11 = s2 * u1[1] * u1[1] + s1 * u11;
        y01 = s2 * u1[0] * u1[1] + s1 * u01;
    }
    ws.y = y;

    InputJet jet;
    jet.value = y;
    jet.dW = y1[0] * inv_half[0];
    jet.dL = y1[1] * inv_half[1];
    jet.dt = y1[2] * inv_half[2];
    jet.dWW = y00 * inv_half[0] * inv_half[0];
    jet.dLL = y11 * inv_half[1] * inv_half[1];
    jet.dWL = y01 * inv_half[0] * inv_half[1];
    return jet;
}

InputJet forward_jet(const TwoLayerNet& net, double W, double L, double t) {
    JetWorkspace ws;
    return forward_jet_ws(net, W, L, t, ws);
}

void jet_vjp_ws(const TwoLayerNet& net, const JetWorkspace& ws,
                const InputJet& adjoint, ParamGrad& grad) {
    const int n = net.hidden;
    if (grad.W2.size() != static_cast<std::size_t>(n))
        throw std::invalid_argument("jet_vjp_ws: gradient shape mismatch");

    std::array<double, 3> inv_half;
    for (int j = 0; j < 3; ++j)
        inv_half[j] = 2.0 / (net.scale_hi[j] - net.scale_lo[j]);

    // Adjoints of the head output's scaled derivatives.
    double yb = adjoint.value;
    double y1b[3] = {adjoint.dW * inv_half[0], adjoint.dL * inv_half[1],
                     adjoint.dt * inv_half[2]};
    double y00b = adjoint.dWW * inv_half[0] * inv_half[0];
    double y11b = adjoint.dLL * inv_half[1] * inv_half[1];
    double y01b = adjoint.dWL * inv_half[0] * inv_half[1];

    // Pull the adjoints back through the sigmoid head onto the pre-head
    // affine-tanh composition.
    double ub, u1b[3], u00b, u11b, u01b;
    if (net.head == Head::Sigmoid) {
        const double s = ws.y;
        const double s1 = s * (1.0 - s);
        const double s2 = s1 * (1.0 - 2.0 * s);
        const double one_minus_2s = 1.0 - 2.0 * s;
        const double s3 = s1 * (one_minus_2s * one_minus_2s - 2.0 * s1);
        const double* u1 = ws.u1;
        ub = yb * s1 + s2 * (y1b[0] * u1[0] + y1b[1] * u1[1] + y1b[2] * u1[2]) +
             y00b * (s3 * u1[0] * u1[0] + s2 * ws.u00) +
             y11b * (s3 * u1[1] * u1[1] + s2 * ws.u11) +
             y01b * (s3 * u1[0] * u1[1] + s2 * ws.u01);
        u1b[0] = y1b[0] * s1 + s2 * (2.0 * y00b * u1[0] + y01b * u1[1]);
        u1b[1] = y1b[1] * s1 + s2 * (2.0 * y11b * u1[1] + y01b * u1[0]);
        u1b[2] = y1b[2] * s1;
        u00b = y00b * s1;
        u11b = y11b * s1;
        u01b = y01b * s1;
    } else {
        ub = yb;
        u1b[0] = y1b[0];
        u1b[1] = y1b[1];
        u1b[2] = y1b[2];
        u00b = y00b;
        u11b = y11b;
        u01b = y01b;
    }

    for (int i = 0; i < n; ++i) {
        const double* w = &net.W1[static_cast<std::size_t>(i) * 3];
        const double h = ws.h[i], hp = ws.hp[i], hpp = ws.hpp[i], hppp = ws.hppp[i];

        // P = <u1 adjoint-weighted first-derivative path>, S likewise for
        // the stored second-derivative entries.
        const double P = u1b[0] * w[0] + u1b[1] * w[1] + u1b[2] * w[2];
        const double S = u00b * w[0] * w[0] + u11b * w[1] * w[1] + u01b * w[0] * w[1];

        grad.W2[i] += ub * h + hp * P + hpp * S;
        const double G = ub * hp + hpp * P + hppp * S;
        const double c = net.W2[i];
        grad.b1[i] += c * G;

        const double M0 = 2.0 * u00b * w[0] + u01b * w[1];
        const double M1 = 2.0 * u11b * w[1] + u01b * w[0];
        double* gW1 = &grad.W1[static_cast<std::size_t>(i) * 3];
        gW1[0] += c * (ws.xs[0] * G + u1b[0] * hp + hpp * M0);
        gW1[1] += c * (ws.xs[1] * G + u1b[1] * hp + hpp * M1);
        gW1[2] += c * (ws.xs[2] * G + u1b[2] * hp);
    }
    grad.b2 += ub;
}

ParamGrad loss_backward(const TwoLayerNet& net,
                        const std::vector<std::array<double, 3>>& points,
                        const std::vector<InputJet>& adjoints) {
    if (points.size() != adjoints.size())
        throw std::invalid_argument("loss_backward: points/adjoints size mismatch");
    ParamGrad grad(net.hidden);
    JetWorkspace ws;
    for (std::size_t p = 0; p < points.size(); ++p) {
        forward_jet_ws(net, points[p][0], points[p][1], points[p][2], ws);
        jet_vjp_ws(net, ws, adjoints[p], grad);
    }
    return grad;
}

namespace {

void adam_update_block(std::vector<double>& x, const std::vector<double>& g,
                       std::vector<double>& m, std::vector<double>& v,
                       double lr, double b1, double b2, double eps,
                       double bc1, double bc2, const char* block) {
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (!std::isfinite(g[i]))
            throw std::runtime_error(std::string("adam_step: non-finite gradient in ") +
                                     block + "[" + std::to_string(i) + "]");
        m[i] = b1 * m[i] + (1.0 - b1) * g[i];
        v[i] = b2 * v[i] + (1.0 - b2) * g[i] * g[i];
        x[i] -= lr * (m[i] / bc1) / (std::sqrt(v[i] / bc2) + eps);
    }
}

}  // namespace

void adam_step(TwoLayerNet& net, const ParamGrad& grad, AdamState& state) {
    if (grad.W1.size() != net.W1.size())
        throw std::invalid_argument("adam_step: gradient shape mismatch");
    state.step += 1;
    const double bc1 = 1.0 - std::pow(state.beta1, static_cast<double>(state.step));
    const double bc2 = 1.0 - std::pow(state.beta2, static_cast<double>(state.step));
    adam_update_block(net.W1, grad.W1, state.m.W1, state.v.W1, state.learning_rate,
                      state.beta1, state.beta2, state.eps, bc1, bc2, "W1");
    adam_update_block(net.b1, grad.b1, state.m.b1, state.v.b1, state.learning_rate,
                      state.beta1, state.beta2, state.eps, bc1, bc2, "b1");
    adam_update_block(net.W2, grad.W2, state.m.W2, state.v.W2, state.learning_rate,
                      state.beta1, state.beta2, state.eps, bc1, bc2, "W2");
    if (!std::isfinite(grad.b2))
        throw std::runtime_error("adam_step: non-finite gradient in b2");
    state.m.b2 = state.beta1 * state.m.b2 + (1.0 - state.beta1) * grad.b2;
    state.v.b2 = state.beta2 * state.v.b2 + (1.0 - state.beta2) * grad.b2 * grad.b2;
    net.b2 -= state.learning_rate * (state.m.b2 / bc1) /
              (std::sqrt(state.v.b2 / bc2) + state.eps);
}

void save_net(const TwoLayerNet& net, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open checkpoint for writing: " + path);
    out << std::setprecision(17);
    out << "hjbdeep-net v1\n";
    out << "head " << (net.head == Head::Linear ? "linear" : "sigmoid") << "\n";
    out << "hidden " << net.hidden << "\n";
    out << "scale_lo " << net.scale_lo[0] << " " << net.scale_lo[1] << " "
        << net.scale_lo[2] << "\n";
    out << "scale_hi " << net.scale_hi[0] << " " << net.scale_hi[1] << " "
        << net.scale_hi[2] << "\n";
    out << "W1\n";
    for (int i = 0; i < net.hidden; ++i) {
        const double* w = &net.W1[static_cast<std::size_t>(i) * 3];
        out << w[0] << " " << w[1] << " " << w[2] << "\n";
    }
    out << "b1\n";
    for (double x : net.b1) out << x << "\n";
    out << "W2\n";
    for (double x : net.W2) out << x << "\n";
    out << "b2 " << net.b2 << "\n";
    if (!out) throw std::runtime_error("checkpoint write failed: " + path);
}

TwoLayerNet load_net(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open checkpoint: " + path);
    std::string magic, version;
    in >> magic >> version;
    if (magic != "hjbdeep-net" || version != "v1")
        throw std::runtime_error("unrecognized checkpoint format in " + path);
    TwoLayerNet net;
    std::string tag;
    in >> tag;
    if (tag != "head") throw std::runtime_error("checkpoint: expected 'head'");
    std::string head;
    in >> head;
    if (head == "linear")
        net.head = Head::Linear;
    else if (head == "sigmoid")
        net.head = Head::Sigmoid;
    else
        throw std::runtime_error("checkpoint: unknown head kind: " + head);
    in >> tag >> net.hidden;
    if (tag != "hidden" || net.hidden < 1)
        throw std::runtime_error("checkpoint: bad hidden size");
    in >> tag >> net.scale_lo[0] >> net.scale_lo[1] >> net.scale_lo[2];
    if (tag != "scale_lo") throw std::runtime_error("checkpoint: expected 'scale_lo'");
    in >> tag >> net.scale_hi[0] >> net.scale_hi[1] >> net.scale_hi[2];
    if (tag != "scale_hi") throw std::runtime_error("checkpoint: expected 'scale_hi'");
    in >> tag;
    if (tag != "W1") throw std::runtime_error("checkpoint: expected 'W1'");
    net.W1.resize(static_cast<std::size_t>(net.hidden) * 3);
    for (auto& x : net.W1) in >> x;
    in >> tag;
    if (tag != "b1") throw std::runtime_error("checkpoint: expected 'b1'");
    net.b1.resize(net.hidden);
    for (auto& x : net.b1) in >> x;
    in >> tag;
    if (tag != "W2") throw std::runtime_error("checkpoint: expected 'W2'");
    net.W2.resize(net.hidden);
    for (auto& x : net.W2) in >> x;
    in >> tag >> net.b2;
    if (tag != "b2" || !in) throw std::runtime_error("checkpoint: truncated file");
    return net;
}

}  // namespace hjbdeep
