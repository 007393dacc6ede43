#include "hypoc/rng.hpp"

#include <cmath>

namespace hypoc {

std::vector<double> FieldSampler::smooth_profile(const VelocityGrid& g, int n_modes) {
    std::normal_distribution<double> nd(0.0, 1.0);
    std::vector<double> a(n_modes + 1), b(n_modes + 1);
    for (int m = 0; m <= n_modes; ++m) {
        const double damp = 1.0 / (1.0 + m * m); // keep profiles smooth
        a[m] = nd(gen_) * damp;
        b[m] = nd(gen_) * damp;
    }
    const double S = std::asinh(g.cutoff);
    std::vector<double> p(g.n);
    const double pi = std::acos(-1.0);
    for (int i = 0; i < g.n; ++i) {
        const double th = pi * std::asinh(g.v[i]) / S;
        double s = 0.0;
        for (int m = 0; m <= n_modes; ++m) s += a[m] * std::cos(m * th) + b[m] * std::sin(m * th);
        p[i] = s;
    }
    return p;
}

std::vector<double> FieldSampler::velocity_field(const Equilibrium& eq, int n_modes,
                                                 bool nonnegative) {
    auto p = smooth_profile(eq.grid, n_modes);
    if (nonnegative) {
        double lo = p[0];
        for (double x : p) lo = std::min(lo, x);
        for (double& x : p) x += 0.1 - lo; // strictly positive profile
    }
    for (int i = 0; i < eq.grid.n; ++i) p[i] *= eq.F[i];
    return p;
}

std::vector<double> FieldSampler::spatial_profile(const SpatialGrid& g, int n_modes) {
    std::normal_distribution<double> nd(0.0, 1.0);
    const int mmax = std::min(n_modes, g.n / 4);
    std::vector<double> out(g.n, 0.0);
    const double two_pi = 2.0 * std::acos(-1.0);
    for (int m = 0; m <= mmax; ++m) {
        const double am = nd(gen_) / (1.0 + m), ph = uniform(0.0, two_pi);
        for (int j = 0; j < g.n; ++j) out[j] += am * std::cos(two_pi * m * g.x[j] / g.length + ph);
    }
    return out;
}

std::vector<double> FieldSampler::phase_space_field(const SpatialGrid& xg, const Equilibrium& eq,
                                                    int n_terms, bool nonnegative) {
    std::vector<double> f((std::size_t)xg.n * eq.grid.n, 0.0);
    for (int t = 0; t < n_terms; ++t) {
        auto q = spatial_profile(xg);
        auto p = velocity_field(eq, 6, false);
        for (int iv = 0; iv < eq.grid.n; ++iv)
            for (int ix = 0; ix < xg.n; ++ix) f[(std::size_t)iv * xg.n + ix] += q[ix] * p[iv];
    }
    if (nonnegative) {
        // shift by a multiple of the global equilibrium so f stays a field with
        // bounded f/F
        double lo = 0.0;
        for (int iv = 0; iv < eq.grid.n; ++iv)
            for (int ix = 0; ix < xg.n; ++ix)
                lo = std::min(lo, f[(std::size_t)iv * xg.n + ix] / eq.F[iv]);
        for (int iv = 0; iv < eq.grid.n; ++iv)
            for (int ix = 0; ix < xg.n; ++ix)
                f[(std::size_t)iv * xg.n + ix] += (0.1 - lo) * eq.F[iv];
    }
    return f;
}

std::vector<double> gaussian_bump(const SpatialGrid& g, double sigma) {
    std::vector<double> out(g.n);
    for (int j = 0; j < g.n; ++j) {
        const double d = g.x[j] - 0.5 * g.length;
        out[j] = std::exp(-0.5 * d * d / (sigma * sigma));
    }
    return out;
}

} // namespace hypoc
