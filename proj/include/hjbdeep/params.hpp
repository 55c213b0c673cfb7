#pragma once

#include <map>
#include <string>

namespace hjbdeep {

enum class UtilityKind { Power, Log, Exponential };

// Terminal utility of wealth. Power/Log are CRRA and require W > 0;
// Exponential is CARA and accepts any real W.
struct UtilitySpec {
    UtilityKind kind = UtilityKind::Power;
    double gamma = 0.5;  // Power: gamma < 1, gamma != 0
    double eta = 0.5;    // Exponential: eta > 0

    static UtilitySpec power(double gamma);
    static UtilitySpec log();
    static UtilitySpec exponential(double eta);

    void validate() const;  // throws std::invalid_argument
    std::string name() const;
};

double utility_value(const UtilitySpec& u, double W);
double utility_marginal(const UtilitySpec& u, double W);
double utility_inverse_marginal(const UtilitySpec& u, double y);
// 1 - gamma (power), 1 (log), eta*W (exponential).
double relative_risk_aversion(const UtilitySpec& u, double W);

// Market, liquidity and cost coefficients. All rates are annualized;
// delta_t = 1/12 is monthly rebalancing.
struct ModelParams {
    double r = 0.02;          // risk-free rate
    double mu = 0.05;         // stock drift
    double rho1 = 0.2;        // corr(B_gamma, B_S)
    double rho2 = 0.5;        // corr(B_L, B_S)
    double rho3 = 0.3;        // corr(B_gamma, B_L)
    double sigma_S = 0.4;     // stock volatility
    double delta_t = 1.0 / 12.0;  // rebalancing interval
    double theta_bar = 0.6;   // base illiquidity level
    double lambda = 5.0;      // cost-sensitivity of the reversion level
    double alpha = 2.0;       // liquidity mean-reversion speed
    double beta = 0.3;        // liquidity sensitivity of the stock
    double kappa = 0.004;     // proportional cost rate
    double sigma_L = 0.2;     // liquidity volatility
    double T = 1.0;           // horizon
    double zeta = 0.5;        // concavity exponent of the reversion coupling

    UtilitySpec utility;

    void validate() const;  // throws std::invalid_argument

    // Copy with liquidity coupling and costs switched off
    // (beta = kappa = sigma_L = 0); the classical one-asset limit.
    ModelParams frictionless() const;
};

// Flat key=value config text with optional [section] headers. Keys before
// any section header belong to the model. Unknown keys or sections are
// rejected; missing keys fall back to defaults.
struct ConfigFile {
    // section -> key -> value; "" is the root (model) section.
    std::map<std::string, std::map<std::string, std::string>> sections;

    static ConfigFile parse(const std::string& text);
    static ConfigFile load(const std::string& path);

    bool has(const std::string& section, const std::string& key) const;
    std::string get(const std::string& section, const std::string& key,
                    const std::string& fallback) const;
    double get_double(const std::string& section, const std::string& key,
                      double fallback) const;
    int get_int(const std::string& section, const std::string& key,
                int fallback) const;

    // FNV-1a over sorted section/key/value triples; insensitive to the
    // order keys appear in the file.
    std::uint64_t hash() const;
};

ModelParams params_from_config(const ConfigFile& cfg);
std::string params_to_config(const ModelParams& p);

}  // namespace hjbdeep
