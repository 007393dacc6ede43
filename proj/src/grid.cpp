#include "hypoc/grid.hpp"

#include <cmath>
#include <stdexcept>

namespace hypoc {

std::vector<double> VelocityGrid::av_pow(double k) const {
    std::vector<double> p(av.size());
    for (std::size_t i = 0; i < av.size(); ++i) p[i] = std::pow(av[i], k);
    return p;
}

VelocityGrid make_velocity_grid(int n, double cutoff) {
    if (n < 5 || n % 2 == 0) throw std::invalid_argument("velocity grid: n must be odd and >= 5");
    if (!(cutoff > 0)) throw std::invalid_argument("velocity grid: cutoff must be positive");
    VelocityGrid g;
    g.n = n;
    g.cutoff = cutoff;
    g.v.resize(n);
    g.w.resize(n);
    g.av.resize(n);
    const double S = std::asinh(cutoff);
    const double ds = 2.0 * S / (n - 1);
    const int mid = (n - 1) / 2;
    for (int i = 0; i <= mid; ++i) {
        // fill symmetrically so v[i] == -v[n-1-i] holds bit-exactly
        const double s = ds * (i - mid);
        const double vi = std::sinh(s);
        g.v[i] = vi;
        g.v[n - 1 - i] = -vi;
    }
    g.v[mid] = 0.0;
    for (int i = 0; i < n; ++i) {
        const double jac = std::sqrt(1.0 + g.v[i] * g.v[i]); // cosh(asinh(v))
        const double trap = (i == 0 || i == n - 1) ? 0.5 : 1.0;
        g.w[i] = ds * jac * trap;
        g.av[i] = jac;
    }
    for (int i = 0; i <= mid; ++i) { // enforce exact weight symmetry
        g.w[n - 1 - i] = g.w[i];
        g.av[n - 1 - i] = g.av[i];
    }
    return g;
}

double velocity_cutoff(double alpha, double k_max, double tail_tol) {
    if (!(alpha > 0)) throw std::domain_error("velocity_cutoff: alpha must be positive");
    if (!(tail_tol > 0) || tail_tol >= 1) throw std::invalid_argument("velocity_cutoff: bad tail tolerance");
    // solve -<V>^alpha + k_max*log<V> = log(tol) by bisection in a = log<V>
    const double target = std::log(tail_tol);
    auto h = [&](double a) { return -std::exp(alpha * a) + k_max * a - target; };
    double lo = 0.0, hi = 1.0;
    while (h(hi) > 0) hi *= 2.0;
    for (int it = 0; it < 200; ++it) {
        const double m = 0.5 * (lo + hi);
        (h(m) > 0 ? lo : hi) = m;
    }
    const double bracket = std::exp(0.5 * (lo + hi)); // <V>
    return std::sqrt(std::max(bracket * bracket - 1.0, 1.0));
}

SpatialGrid make_spatial_grid(int n, double length) {
    if (n < 2) throw std::invalid_argument("spatial grid: n must be >= 2");
    if (!(length > 0)) throw std::invalid_argument("spatial grid: length must be positive");
    SpatialGrid g;
    g.n = n;
    g.length = length;
    g.dx = length / n;
    g.x.resize(n);
    for (int i = 0; i < n; ++i) g.x[i] = g.dx * i;
    return g;
}

} // namespace hypoc
