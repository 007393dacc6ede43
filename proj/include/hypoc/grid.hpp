#pragma once

#include <vector>

namespace hypoc {

// 1-D velocity grid, uniform in the mapped coordinate s with v = sinh(s).
// Node count is odd so that v = 0 is a node and the grid is exactly
// symmetric. Trapezoid weights carry the cosh Jacobian; every velocity
// integral in the suite uses this one rule so that discrete adjointness
// identities hold exactly.
struct VelocityGrid {
    int n = 0;
    double cutoff = 0.0;        // |v| at the boundary nodes
    std::vector<double> v;      // nodes, strictly increasing, v[i] = -v[n-1-i]
    std::vector<double> w;      // quadrature weights
    std::vector<double> av;     // <v> = sqrt(1 + v^2)

    double face_dv(int i) const { return v[i + 1] - v[i]; }
    std::vector<double> av_pow(double k) const;
};

VelocityGrid make_velocity_grid(int n, double cutoff);

// Smallest cutoff V such that e^{-<V>^alpha} <V>^{k_max} <= tail_tol.
// Weighted norms ||.||_k are the binding tail requirement, so the cutoff
// is chosen from the largest weight exponent in play.
double velocity_cutoff(double alpha, double k_max, double tail_tol = 1e-16);

// Uniform periodic grid on [0, L).
struct SpatialGrid {
    int n = 0;
    double length = 0.0;
    double dx = 0.0;
    std::vector<double> x;
};

SpatialGrid make_spatial_grid(int n, double length);

} // namespace hypoc
