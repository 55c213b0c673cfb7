#pragma once

#include "hjbdeep/params.hpp"

#include <string>
#include <vector>

namespace hjbdeep {

// Jet of the reduced value factor P(L, t) for the power-utility problem:
// Q(W, L, t) = (W^gamma / gamma) * P(L, t).
struct ReducedJet {
    double P = 0.0;
    double dt = 0.0;
    double dL = 0.0;
    double dLL = 0.0;
};

// Residual of the reduced 1-D equation at (L, t) under control omega:
//   P_t + [r + (mu-r)w - c(L)w(1-w)] g P + 1/2 g(g-1) Sigma2(L) w^2 P
//   + [alpha(theta(L)-L) + (rho2 sigma_S + rho3 beta L) sigma_L w g] P_L
//   + 1/2 sigma_L^2 P_LL
double reduced_operator(const ModelParams& p, double gamma, double L, double t,
                        const ReducedJet& jet, double omega);

// omega-quadratic coefficients of the reduced operator (A w^2 + B w + C).
void reduced_quadratic(const ModelParams& p, double gamma, double L,
                       double P, double P_L, double& A, double& B);

struct Grid1DSpec {
    int n_L = 241;        // nodes in L (uniform)
    int n_t = 200;        // time steps
    double L_lo = 0.0;    // grid range; pad beyond the comparison region
    double L_hi = 1.875;
    int max_howard = 50;
    double policy_tol = 1e-10;
};

// Backward-in-time implicit solution with Howard policy iteration.
struct Grid1D {
    std::vector<double> L_axis;       // n_L, strictly increasing
    std::vector<double> t_axis;       // n_t + 1 levels including 0 and T
    std::vector<double> P;            // (n_t+1) x n_L, row-major by time level
    std::vector<double> omega;        // same shape
    std::vector<int> howard_iters;    // per time step

    double at_P(int it, int iL) const { return P[static_cast<std::size_t>(it) * L_axis.size() + iL]; }
    double at_omega(int it, int iL) const { return omega[static_cast<std::size_t>(it) * L_axis.size() + iL]; }

    // Bilinear interpolation in (L, t); clamps outside the grid.
    double interp_P(double L, double t) const;
    double interp_omega(double L, double t) const;

    std::string to_csv() const;  // columns L,t,P,omega
};

Grid1D solve_reduced_fd(const ModelParams& p, double gamma, const Grid1DSpec& spec);

}  // namespace hjbdeep
