#include "hypoc/field.hpp"

#include <cmath>
#include <stdexcept>

namespace hypoc {

DistributionField make_field(const SpatialGrid& xg, const VelocityGrid& vg) {
    DistributionField f;
    f.nx = xg.n;
    f.nv = vg.n;
    f.values.assign((std::size_t)xg.n * vg.n, 0.0);
    return f;
}

double mass(const DistributionField& f, const SpatialGrid& xg, const VelocityGrid& vg) {
    return xg.dx * chunked_sum((std::int64_t)f.nv * f.nx, [&](std::int64_t idx) {
        const int iv = (int)(idx / f.nx);
        return vg.w[iv] * f.values[idx];
    });
}

double l1_norm(const DistributionField& f, const SpatialGrid& xg, const VelocityGrid& vg) {
    return xg.dx * chunked_sum((std::int64_t)f.nv * f.nx, [&](std::int64_t idx) {
        const int iv = (int)(idx / f.nx);
        return vg.w[iv] * std::abs(f.values[idx]);
    });
}

double weighted_norm_sq(const DistributionField& f, const SpatialGrid& xg,
                        const Equilibrium& eq, double k) {
    return weighted_norm_sq(f, xg, eq, eq.grid.av_pow(k));
}

double weighted_norm_sq(const DistributionField& f, const SpatialGrid& xg,
                        const Equilibrium& eq, const std::vector<double>& av_pow_k) {
    if ((int)av_pow_k.size() != f.nv || eq.grid.n != f.nv)
        throw std::invalid_argument("weighted_norm_sq: grid mismatch");
    return xg.dx * chunked_sum((std::int64_t)f.nv * f.nx, [&](std::int64_t idx) {
        const int iv = (int)(idx / f.nx);
        const double x = f.values[idx];
        return eq.grid.w[iv] * av_pow_k[iv] * x * x / eq.F[iv];
    });
}

} // namespace hypoc
