#include "hypoc/equilibria.hpp"
#include "hypoc/reference.hpp"

#include <doctest.h>

#include <stdexcept>

#include <cmath>

using namespace hypoc;

namespace {
Equilibrium standard_eq(double alpha, int n = 257, double kmax = 11.0) {
    return build_equilibrium(alpha, 1, make_velocity_grid(n, velocity_cutoff(alpha, kmax)), kmax);
}
} // namespace

TEST_CASE("gaussian-type normalization has the closed form e/sqrt(pi)") {
    auto eq = standard_eq(2.0);
    CHECK(eq.c_alpha ==
          doctest::Approx(std::exp(1.0) / std::sqrt(std::acos(-1.0))).epsilon(1e-12));
}

TEST_CASE("normalization integrates to one by construction") {
    for (double alpha : {0.3, 0.5, 1.0, 1.5}) {
        auto eq = standard_eq(alpha);
        double s = 0.0;
        for (int i = 0; i < eq.grid.n; ++i) s += eq.grid.w[i] * eq.F[i];
        CHECK(s == doctest::Approx(1.0).epsilon(1e-14));
        for (double f : eq.F) CHECK(f > 0.0);
        for (int i = 0; i < eq.grid.n; ++i)
            CHECK(eq.F[i] == eq.F[eq.grid.n - 1 - i]); // exact radial symmetry
    }
}

TEST_CASE("sub-exponential normalization against the adaptive-refinement oracle") {
    auto eq = standard_eq(0.5);
    // independent oracle: adaptive Simpson on the physical axis
    auto dens = [](double v) { return std::exp(-std::pow(1.0 + v * v, 0.25)); };
    double z = 0.0;
    double edges[] = {0.0, 10.0, 100.0, 1000.0, 25000.0};
    for (int p = 0; p + 1 < 5; ++p)
        z += 2.0 * ref::adaptive_simpson(dens, edges[p], edges[p + 1], 1e-13);
    CHECK(eq.c_alpha == doctest::Approx(1.0 / z).epsilon(1e-8));
    // frozen value from the oracle
    CHECK(eq.c_alpha == doctest::Approx(0.28532473).epsilon(1e-7));
}

TEST_CASE("moment table identities") {
    for (double alpha : {0.5, 1.0, 2.0}) {
        auto eq = standard_eq(alpha);
        auto mt = moments(eq, {0.0, 1.0, 2.0, 4.0});
        CHECK(mt(0.0) == doctest::Approx(1.0).epsilon(1e-13));
        CHECK(mt(2.0) == doctest::Approx(1.0 + 1.0 * mt.theta).epsilon(1e-12));
        CHECK(mt(1.0) <= mt(2.0));
        CHECK(mt(2.0) <= mt(4.0));
        CHECK(mt(0.0) <= mt(1.0));
    }
}

TEST_CASE("gaussian-type second moment is one half") {
    auto eq = standard_eq(2.0);
    auto mt = moments(eq, {});
    CHECK(mt.theta == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("odd moments vanish on the symmetric grid") {
    auto eq = standard_eq(0.5);
    for (double k : {0.0, 2.0}) {
        double s = 0.0, scale = 0.0;
        for (int i = 0; i < eq.grid.n; ++i) {
            const double w = eq.grid.w[i] * eq.grid.v[i] * std::pow(eq.grid.av[i], k) * eq.F[i];
            s += w;
            scale += std::abs(w);
        }
        CHECK(std::abs(s) <= 1e-14 * scale);
    }
}

TEST_CASE("quadrature error drops by at least a factor four per refinement") {
    // coarse grids where the trapezoid error is measurable
    const double V = velocity_cutoff(0.5, 11.0);
    auto val = [&](int n) {
        auto eq = build_equilibrium(0.5, 1, make_velocity_grid(n, V), 0.0, 1.0);
        return moment_theta_k(eq, 2.0);
    };
    const double ref = val(4097);
    const double e1 = std::abs(val(17) - ref);
    const double e2 = std::abs(val(33) - ref);
    const double e3 = std::abs(val(65) - ref);
    CHECK(e1 / e2 >= 4.0);
    CHECK(e2 / e3 >= 4.0);
}

TEST_CASE("collision frequency closed form") {
    auto eq = standard_eq(0.5);
    CHECK(fp_collision_frequency(eq, 0.0) == doctest::Approx(-0.25).epsilon(1e-14));

    // large-|v| asymptote of the paper: ratio to (alpha^2/4)|v|^{-2(1-alpha)} -> 1
    const double r1 = fp_collision_frequency(eq, 1e4) / (0.0625 * std::pow(1e4, -1.0));
    const double r2 = fp_collision_frequency(eq, 4e4) / (0.0625 * std::pow(4e4, -1.0));
    CHECK(r1 == doctest::Approx(1.0).epsilon(0.05));
    CHECK(r2 == doctest::Approx(1.0).epsilon(0.05));
    CHECK(std::abs(r2 - 1.0) < std::abs(r1 - 1.0)); // monotone approach
}

TEST_CASE("collision frequency matches finite differences of F") {
    auto eq = standard_eq(0.5);
    for (double v : {0.0, 0.7, 2.0, 5.0, 20.0}) {
        const double analytic = fp_collision_frequency(eq, v);
        const double fd = ref::fp_frequency_fd(eq, v, 4e-4);
        CHECK(fd == doctest::Approx(analytic).epsilon(1e-6));
    }
}

TEST_CASE("domain and truncation errors") {
    auto g = make_velocity_grid(65, 30.0);
    CHECK_THROWS_AS(build_equilibrium(-0.5, 1, g), std::domain_error);
    CHECK_THROWS_AS(build_equilibrium(2.5, 1, g), std::domain_error);
    // grid far too small for alpha = 0.5 heavy tails
    CHECK_THROWS_AS(build_equilibrium(0.5, 1, g, 10.0), std::runtime_error);
    // moment beyond the tail coverage
    auto eq = standard_eq(0.5, 257, 11.0);
    CHECK_THROWS_AS(moment_theta_k(eq, 40.0), std::runtime_error);
}
