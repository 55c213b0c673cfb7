#include "hjbdeep/params.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace hjbdeep {

UtilitySpec UtilitySpec::power(double gamma) {
    UtilitySpec u;
    u.kind = UtilityKind::Power;
    u.gamma = gamma;
    u.validate();
    return u;
}

UtilitySpec UtilitySpec::log() {
    UtilitySpec u;
    u.kind = UtilityKind::Log;
    return u;
}

UtilitySpec UtilitySpec::exponential(double eta) {
    UtilitySpec u;
    u.kind = UtilityKind::Exponential;
    u.eta = eta;
    u.validate();
    return u;
}

void UtilitySpec::validate() const {
    if (kind == UtilityKind::Power) {
        if (!(gamma < 1.0) || gamma == 0.0 || !std::isfinite(gamma))
            throw std::invalid_argument("power utility requires gamma < 1 and gamma != 0");
    } else if (kind == UtilityKind::Exponential) {
        if (!(eta > 0.0) || !std::isfinite(eta))
            throw std::invalid_argument("exponential utility requires eta > 0");
    }
}

std::string UtilitySpec::name() const {
    switch (kind) {
        case UtilityKind::Power: return "power";
        case UtilityKind::Log: return "log";
        case UtilityKind::Exponential: return "exp";
    }
    return "?";
}

double utility_value(const UtilitySpec& u, double W) {
    switch (u.kind) {
        case UtilityKind::Power:
            if (W <= 0.0) throw std::domain_error("power utility requires W > 0");
            return std::pow(W, u.gamma) / u.gamma;
        case UtilityKind::Log:
            if (W <= 0.0) throw std::domain_error("log utility requires W > 0");
            return std::log(W);
        case UtilityKind::Exponential:
            return 1.0 - std::exp(-u.eta * W);
    }
    throw std::logic_error("unknown utility kind");
}

double utility_marginal(const UtilitySpec& u, double W) {
    switch (u.kind) {
        case UtilityKind::Power:
            if (W <= 0.0) throw std::domain_error("power utility requires W > 0");
            return std::pow(W, u.gamma - 1.0);
        case UtilityKind::Log:
            if (W <= 0.0) throw std::domain_error("log utility requires W > 0");
            return 1.0 / W;
        case UtilityKind::Exponential:
            return u.eta * std::exp(-u.eta * W);
    }
    throw std::logic_error("unknown utility kind");
}

double utility_inverse_marginal(const UtilitySpec& u, double y) {
    if (!(y > 0.0)) throw std::domain_error("inverse marginal utility requires y > 0");
    switch (u.kind) {
        case UtilityKind::Power:
            return std::pow(y, 1.0 / (u.gamma - 1.0));
        case UtilityKind::Log:
            return 1.0 / y;
        case UtilityKind::Exponential:
            return -std::log(y / u.eta) / u.eta;
    }
    throw std::logic_error("unknown utility kind");
}

double relative_risk_aversion(const UtilitySpec& u, double W) {
    switch (u.kind) {
        case UtilityKind::Power: return 1.0 - u.gamma;
        case UtilityKind::Log: return 1.0;
        case UtilityKind::Exponential: return u.eta * W;
    }
    throw std::logic_error("unknown utility kind");
}

namespace {

// Positive semidefiniteness of the 3x3 correlation matrix in the
// Brownian order (gamma, S, L), checked through its leading minors.
bool correlation_psd(double rho1, double rho2, double rho3) {
    const double m2 = 1.0 - rho1 * rho1;
    const double det = 1.0 + 2.0 * rho1 * rho2 * rho3 - rho1 * rho1 -
                       rho2 * rho2 - rho3 * rho3;
    return m2 >= -1e-12 && det >= -1e-12;
}

}  // namespace

void ModelParams::validate() const {
    utility.validate();
    auto fail = [](const std::string& msg) { throw std::invalid_argument(msg); };
    for (double x : {r, mu, rho1, rho2, rho3, sigma_S, delta_t, theta_bar,
                     lambda, alpha, beta, kappa, sigma_L, T, zeta})
        if (!std::isfinite(x)) fail("non-finite model parameter");
    if (!(sigma_S > 0.0)) fail("sigma_S must be > 0");
    if (sigma_L < 0.0) fail("sigma_L must be >= 0");
    if (alpha < 0.0) fail("alpha must be >= 0");
    if (beta < 0.0) fail("beta must be >= 0");
    if (!(kappa >= 0.0 && kappa < 1.0)) fail("kappa must lie in [0,1)");
    if (!(delta_t > 0.0)) fail("delta_t must be > 0");
    if (!(T > 0.0)) fail("T must be > 0");
    if (!(zeta > 0.0 && zeta < 1.0)) fail("zeta must lie in (0,1)");
    for (double rho : {rho1, rho2, rho3})
        if (rho < -1.0 || rho > 1.0) fail("correlations must lie in [-1,1]");
    if (!correlation_psd(rho1, rho2, rho3))
        fail("correlation matrix (rho1,rho2,rho3) is not positive semidefinite");
}

ModelParams ModelParams::frictionless() const {
    ModelParams q = *this;
    q.beta = 0.0;
    q.kappa = 0.0;
    q.sigma_L = 0.0;
    return q;
}

namespace {

std::string trim(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

}  // namespace

ConfigFile ConfigFile::parse(const std::string& text) {
    ConfigFile cfg;
    std::istringstream in(text);
    std::string line;
    std::string section;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']')
                throw std::invalid_argument("config line " + std::to_string(lineno) +
                                            ": malformed section header");
            section = trim(line.substr(1, line.size() - 2));
            cfg.sections[section];
            continue;
        }
        auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("config line " + std::to_string(lineno) +
                                        ": expected key=value");
        std::string key = trim(line.substr(0, eq));
        std::string val = trim(line.substr(eq + 1));
        if (key.empty())
            throw std::invalid_argument("config line " + std::to_string(lineno) +
                                        ": empty key");
        cfg.sections[section][key] = val;
    }
    return cfg;
}

ConfigFile ConfigFile::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse(ss.str());
}

bool ConfigFile::has(const std::string& section, const std::string& key) const {
    auto it = sections.find(section);
    if (it == sections.end()) return false;
    return it->second.count(key) > 0;
}

std::string ConfigFile::get(const std::string& section, const std::string& key,
                            const std::string& fallback) const {
    auto it = sections.find(section);
    if (it == sections.end()) return fallback;
    auto kt = it->second.find(key);
    return kt == it->second.end() ? fallback : kt->second;
}

double ConfigFile::get_double(const std::string& section, const std::string& key,
                              double fallback) const {
    if (!has(section, key)) return fallback;
    const std::string v = get(section, key, "");
    std::size_t pos = 0;
    double x;
    try {
        x = std::stod(v, &pos);
    } catch (const std::exception&) {
        throw std::invalid_argument("config key '" + key + "': not a number: " + v);
    }
    if (pos != v.size())
        throw std::invalid_argument("config key '" + key + "': trailing junk: " + v);
    return x;
}

int ConfigFile::get_int(const std::string& section, const std::string& key,
                        int fallback) const {
    if (!has(section, key)) return fallback;
    const double x = get_double(section, key, 0.0);
    const int i = static_cast<int>(std::llround(x));
    if (static_cast<double>(i) != x)
        throw std::invalid_argument("config key '" + key + "': expected an integer");
    return i;
}

std::uint64_t ConfigFile::hash() const {
    std::vector<std::string> items;
    for (const auto& [sec, kv] : sections)
        for (const auto& [k, v] : kv) items.push_back(sec + "\x1f" + k + "\x1f" + v);
    std::sort(items.begin(), items.end());
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (const auto& s : items)
        for (unsigned char c : s) {
            h ^= c;
            h *= 0x100000001b3ULL;
        }
    return h;
}

namespace {

const std::set<std::string>& model_keys() {
    static const std::set<std::string> keys = {
        "r", "mu", "rho1", "rho2", "rho3", "sigma_S", "delta_t", "theta_bar",
        "lambda", "alpha", "beta", "kappa", "sigma_L", "T", "zeta",
        "utility", "gamma", "eta"};
    return keys;
}

}  // namespace

ModelParams params_from_config(const ConfigFile& cfg) {
    auto root = cfg.sections.find("");
    if (root != cfg.sections.end())
        for (const auto& [k, v] : root->second)
            if (!model_keys().count(k))
                throw std::invalid_argument("unknown model config key: " + k);

    ModelParams p;
    p.r = cfg.get_double("", "r", p.r);
    p.mu = cfg.get_double("", "mu", p.mu);
    p.rho1 = cfg.get_double("", "rho1", p.rho1);
    p.rho2 = cfg.get_double("", "rho2", p.rho2);
    p.rho3 = cfg.get_double("", "rho3", p.rho3);
    p.sigma_S = cfg.get_double("", "sigma_S", p.sigma_S);
    p.delta_t = cfg.get_double("", "delta_t", p.delta_t);
    p.theta_bar = cfg.get_double("", "theta_bar", p.theta_bar);
    p.lambda = cfg.get_double("", "lambda", p.lambda);
    p.alpha = cfg.get_double("", "alpha", p.alpha);
    p.beta = cfg.get_double("", "beta", p.beta);
    p.kappa = cfg.get_double("", "kappa", p.kappa);
    p.sigma_L = cfg.get_double("", "sigma_L", p.sigma_L);
    p.T = cfg.get_double("", "T", p.T);
    p.zeta = cfg.get_double("", "zeta", p.zeta);

    const std::string ukind = cfg.get("", "utility", "power");
    if (ukind == "power")
        p.utility = UtilitySpec::power(cfg.get_double("", "gamma", 0.5));
    else if (ukind == "log")
        p.utility = UtilitySpec::log();
    else if (ukind == "exp" || ukind == "exponential")
        p.utility = UtilitySpec::exponential(cfg.get_double("", "eta", 0.5));
    else
        throw std::invalid_argument("unknown utility kind: " + ukind);

    p.validate();
    return p;
}

std::string params_to_config(const ModelParams& p) {
    std::ostringstream out;
    out.precision(17);
    out << "r = " << p.r << "\n"
        << "mu = " << p.mu << "\n"
        << "rho1 = " << p.rho1 << "\n"
        << "rho2 = " << p.rho2 << "\n"
        << "rho3 = " << p.rho3 << "\n"
        << "sigma_S = " << p.sigma_S << "\n"
        << "delta_t = " << p.delta_t << "\n"
        << "theta_bar = " << p.theta_bar << "\n"
        << "lambda = " << p.lambda << "\n"
        << "alpha = " << p.alpha << "\n"
        << "beta = " << p.beta << "\n"
        << "kappa = " << p.kappa << "\n"
        << "sigma_L = " << p.sigma_L << "\n"
        << "T = " << p.T << "\n"
        << "zeta = " << p.zeta << "\n"
        << "utility = " << p.utility.name() << "\n";
    if (p.utility.kind == UtilityKind::Power)
        out << "gamma = " << p.utility.gamma << "\n";
    if (p.utility.kind == UtilityKind::Exponential)
        out << "eta = " << p.utility.eta << "\n";
    return out.str();
}

}  // namespace hjbdeep
