#pragma once

#include "hypoc/equilibria.hpp"
#include "hypoc/grid.hpp"

#include <cstdint>
#include <random>
#include <vector>

namespace hypoc {

// Seeded generator for the random test fields used by the inequality audits.
// Profiles are smooth in the stretched coordinate and bounded, so f = p(v) F(v)
// has finite weighted norms for every k the grid covers. All draws come from
// mt19937_64, so a given seed reproduces the same fields on any platform.
class FieldSampler {
  public:
    explicit FieldSampler(std::uint64_t seed) : gen_(seed) {}

    // bounded smooth profile p(v): low-order trig polynomial in the mapped coordinate
    std::vector<double> smooth_profile(const VelocityGrid& g, int n_modes = 6);

    // f = p(v) F(v); optionally strictly nonnegative (p shifted above zero)
    std::vector<double> velocity_field(const Equilibrium& eq, int n_modes = 6,
                                       bool nonnegative = false);

    // band-limited periodic profile on the spatial grid
    std::vector<double> spatial_profile(const SpatialGrid& g, int n_modes = 8);

    // (x,v) field: sum of a few separable smooth terms, laid out row-major in v
    std::vector<double> phase_space_field(const SpatialGrid& xg, const Equilibrium& eq,
                                          int n_terms = 3, bool nonnegative = false);

    double uniform(double a, double b) {
        return std::uniform_real_distribution<double>(a, b)(gen_);
    }
    double normal() { return std::normal_distribution<double>(0.0, 1.0)(gen_); }

    std::mt19937_64& engine() { return gen_; }

  private:
    std::mt19937_64 gen_;
};

// Periodic Gaussian bump centered at L/2 with width sigma (used as initial
// macroscopic density for decay runs).
std::vector<double> gaussian_bump(const SpatialGrid& g, double sigma);

} // namespace hypoc
