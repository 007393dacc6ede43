#pragma once

#include "hypoc/diagnostics.hpp"

#include <cstdint>
#include <vector>

namespace hypoc {

// Empirically certified Nash constant for grid profiles in dimension d:
// maximizes the Rayleigh-type ratio over Gaussians (whose ratio is scale
// invariant) and random signed bumps, then applies a safety factor.
double nash_constant(int d, std::uint64_t seed = 2027, double safety = 1.25);

// ratio ||u||_2^2 / (||u||_1^{4/(d+2)} ||grad u||_2^{2d/(d+2)}) on a periodic grid
double nash_ratio_1d(const std::vector<double>& u, double dx);
double nash_ratio_2d(const std::vector<double>& u, int n, double dx);

struct RateModel {
    double zeta = 0;
    double c_nash = 0;
    double c_small = 0;   // Theta C_Nash^{-(d+2)/d} ||f||_{L1}^{-4/d}
    double c0 = 0;        // (K_k (1+Theta_k) ||f0||_k)^{-2 beta/k}
    double c1 = 0;        // linearization constant of the macroscopic bound
    double kappa_rate = 0;
    double c_rate = 0;    // Groenwall rate constant
    double z0 = 0;        // ||f0||^2
    double h0 = 0;        // H[f0]
    double delta = 0;
    double min_const = 0; // min{C0 z0^{beta/k-1/zeta}, C1 z0^{2/d-1/zeta}}, with the
                          // superadditivity factor 2^{-1/zeta} included
};

// Phi^{-1}(z) = 2 z + (z / c_small)^{d/(d+2)}
double phi_inverse(double z, double c_small, int d);
// Phi by monotone bisection of the strictly increasing inverse
double phi_lower(double y, double c_small, int d);
double psi_lower(double y, double c0, double beta, double k);

RateModel assemble_rate_model(int d, double beta, double k, double theta, double theta_k,
                              double kk_moment, double delta, double kappa, double c_nash,
                              double norm0_sq_init, double norm_k_init, double l1_init,
                              double h0);

// H0 (1 + C H0^{1/zeta} t)^{-zeta}
double groenwall_bound(double h0, double c_rate, double zeta, double t);

struct RateFit {
    double slope = 0, intercept = 0;
    double stderr_slope = 0, ci95 = 0;
    int npts = 0;
};

// least squares of log(series) against log(1+t) over t in [t_lo, t_hi]
RateFit fit_rate(const std::vector<double>& t, const std::vector<double>& series, double t_lo,
                 double t_hi);

} // namespace hypoc
