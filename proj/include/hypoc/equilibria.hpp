#pragma once

#include "hypoc/grid.hpp"

#include <map>
#include <vector>

namespace hypoc {

// Velocity equilibrium F(v) = C_alpha exp(-<v>^alpha) with <v> = sqrt(1+|v|^2),
// tabulated on a stretched grid together with its potential phi = <v>^alpha + log Z.
struct Equilibrium {
    double alpha = 0.0;
    int dim = 1;
    double c_alpha = 0.0; // normalization 1/Z
    double log_z = 0.0;
    VelocityGrid grid;
    std::vector<double> F;

    double density(double v) const;
    double phi(double v) const;
    // |grad phi| and Laplacian of phi at radius |v| (radially symmetric, dim-generic)
    double grad_phi_sq(double v) const;
    double lap_phi(double v) const;
};

// Builds F on the grid and normalizes by the grid quadrature so that
// sum_i w_i F_i == 1 holds to rounding. Throws std::domain_error for
// alpha outside (0,2] and a runtime truncation error when the weighted
// tail at the cutoff is above tolerance.
Equilibrium build_equilibrium(double alpha, int dim, const VelocityGrid& grid,
                              double tail_k_max = 0.0, double tail_tol = 1e-12);

struct MomentTable {
    double theta = 0.0;                 // int |v.e1|^2 F dv
    std::map<double, double> theta_k;   // k -> int <v>^k F dv

    double operator()(double k) const;
};

MomentTable moments(const Equilibrium& eq, const std::vector<double>& k_list);

// Single weighted moment Theta_k = int <v>^k F dv on the grid.
double moment_theta_k(const Equilibrium& eq, double k);

// Fokker-Planck collision frequency nu1 = |grad phi|^2/4 - lap(phi)/2,
// evaluated from the closed-form derivatives of <v>^alpha.
double fp_collision_frequency(const Equilibrium& eq, double v);

} // namespace hypoc
