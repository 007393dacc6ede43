#pragma once

#include "hypoc/equilibria.hpp"
#include "hypoc/grid.hpp"

#include <cstdint>
#include <vector>

namespace hypoc {

// Phase-space state on the (x, v) tensor grid, one contiguous row per velocity
// node so that advection works on contiguous memory.
struct DistributionField {
    int nx = 0, nv = 0;
    double time = 0.0;
    std::vector<double> values;

    double& at(int iv, int ix) { return values[(std::size_t)iv * nx + ix]; }
    double at(int iv, int ix) const { return values[(std::size_t)iv * nx + ix]; }
    double* row(int iv) { return values.data() + (std::size_t)iv * nx; }
    const double* row(int iv) const { return values.data() + (std::size_t)iv * nx; }
};

DistributionField make_field(const SpatialGrid& xg, const VelocityGrid& vg);

// Deterministic parallel reduction: fixed chunk decomposition with a serial
// combine, so results are bit-identical for any thread count.
inline constexpr int kSumChunks = 64;

template <class F>
double chunked_sum(std::int64_t n, F&& term) {
    double partial[kSumChunks] = {0.0};
#pragma omp parallel for schedule(static)
    for (int c = 0; c < kSumChunks; ++c) {
        const std::int64_t lo = n * c / kSumChunks;
        const std::int64_t hi = n * (c + 1) / kSumChunks;
        double s = 0.0;
        for (std::int64_t i = lo; i < hi; ++i) s += term(i);
        partial[c] = s;
    }
    double total = 0.0;
    for (int c = 0; c < kSumChunks; ++c) total += partial[c];
    return total;
}

// total mass  iint f dx dv
double mass(const DistributionField& f, const SpatialGrid& xg, const VelocityGrid& vg);

// iint |f| dx dv
double l1_norm(const DistributionField& f, const SpatialGrid& xg, const VelocityGrid& vg);

// ||f||_k^2 = iint f^2 <v>^k dx dmu
double weighted_norm_sq(const DistributionField& f, const SpatialGrid& xg,
                        const Equilibrium& eq, double k);

// weighted norm against a precomputed <v>^k table (hot path)
double weighted_norm_sq(const DistributionField& f, const SpatialGrid& xg,
                        const Equilibrium& eq, const std::vector<double>& av_pow_k);

} // namespace hypoc
