#include "hypoc/equilibria.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace hypoc {

double Equilibrium::density(double v) const {
    return c_alpha * std::exp(-std::pow(1.0 + v * v, 0.5 * alpha));
}

double Equilibrium::phi(double v) const {
    return std::pow(1.0 + v * v, 0.5 * alpha) + log_z;
}

double Equilibrium::grad_phi_sq(double v) const {
    // |grad phi|^2 = alpha^2 v^2 <v>^{2(alpha-2)}
    const double av2 = 1.0 + v * v;
    return alpha * alpha * v * v * std::pow(av2, alpha - 2.0);
}

double Equilibrium::lap_phi(double v) const {
    const double av2 = 1.0 + v * v;
    return alpha * (dim * std::pow(av2, 0.5 * alpha - 1.0) +
                    (alpha - 2.0) * v * v * std::pow(av2, 0.5 * alpha - 2.0));
}

Equilibrium build_equilibrium(double alpha, int dim, const VelocityGrid& grid,
                              double tail_k_max, double tail_tol) {
    if (!(alpha > 0.0) || alpha > 2.0) throw std::domain_error("build_equilibrium: alpha must be in (0, 2]");
    if (dim != 1) throw std::invalid_argument("build_equilibrium: only dim = 1 grids are tabulated");
    Equilibrium eq;
    eq.alpha = alpha;
    eq.dim = dim;
    eq.grid = grid;
    eq.F.resize(grid.n);
    double z = 0.0;
    for (int i = 0; i < grid.n; ++i) {
        eq.F[i] = std::exp(-std::pow(grid.av[i], alpha));
        z += grid.w[i] * eq.F[i];
    }
    const double tail = std::exp(-std::pow(grid.av.front(), alpha)) *
                        std::pow(grid.av.front(), tail_k_max) / z;
    if (tail > tail_tol)
        throw std::runtime_error("build_equilibrium: truncation error, weighted tail " +
                                 std::to_string(tail) + " above tolerance; enlarge the cutoff");
    eq.c_alpha = 1.0 / z;
    eq.log_z = std::log(z);
    for (int i = 0; i < grid.n; ++i) eq.F[i] *= eq.c_alpha;
    return eq;
}

double MomentTable::operator()(double k) const {
    auto it = theta_k.find(k);
    if (it == theta_k.end()) throw std::out_of_range("MomentTable: k not tabulated");
    return it->second;
}

double moment_theta_k(const Equilibrium& eq, double k) {
    const auto& g = eq.grid;
    double s = 0.0;
    for (int i = 0; i < g.n; ++i) s += g.w[i] * std::pow(g.av[i], k) * eq.F[i];
    // a non-negligible boundary contribution means the grid does not cover
    // the weighted tail for this k
    const double edge = g.w[0] * std::pow(g.av[0], k) * eq.F[0];
    if (!(edge <= 1e-10 * s))
        throw std::runtime_error("moment: truncation error for k = " + std::to_string(k) +
                                 "; weighted tail exceeds grid coverage");
    return s;
}

MomentTable moments(const Equilibrium& eq, const std::vector<double>& k_list) {
    MomentTable t;
    const auto& g = eq.grid;
    double th = 0.0;
    for (int i = 0; i < g.n; ++i) th += g.w[i] * g.v[i] * g.v[i] * eq.F[i];
    t.theta = th;
    for (double k : k_list) t.theta_k[k] = moment_theta_k(eq, k);
    return t;
}

double fp_collision_frequency(const Equilibrium& eq, double v) {
    return 0.25 * eq.grad_phi_sq(v) - 0.5 * eq.lap_phi(v);
}

} // namespace hypoc
