#include "hypoc/decay.hpp"

#include "hypoc/audits.hpp"

#include <doctest.h>

#include <cmath>
#include <stdexcept>

using namespace hypoc;

TEST_CASE("nash constant dominates the scale-invariant gaussian ratio") {
    const double gaussian_ratio = std::pow(2.0 * std::acos(-1.0), -1.0 / 3.0);
    const double c1 = nash_constant(1);
    CHECK(c1 > gaussian_ratio);
    CHECK(c1 < 2.0);
    const double c2 = nash_constant(2);
    CHECK(c2 > 0.0);
    CHECK(c2 < 2.0);
    CHECK_THROWS_AS(nash_constant(3), std::domain_error);
}

TEST_CASE("nash audit: 500 random bumps, zero violations") {
    AuditLog log;
    audit_nash(1, nash_constant(1), 500, 81, log);
    audit_nash(2, nash_constant(2), 150, 82, log);
    for (const auto& a : log.entries()) CHECK(a.pass);
}

TEST_CASE("nash ratio on the zero function degenerates harmlessly") {
    std::vector<double> u(128, 0.0);
    CHECK(nash_ratio_1d(u, 0.1) == 0.0);
}

TEST_CASE("phi inversion") {
    const double c = 0.3;
    CHECK(phi_lower(0.0, c, 1) == 0.0);
    for (double y : {1e-6, 0.3, 2.0, 57.0}) {
        const double z = phi_lower(y, c, 1);
        CHECK(phi_inverse(z, c, 1) == doctest::Approx(y).epsilon(1e-12));
    }
    // inverse-function identity the other way
    for (double z : {1e-4, 0.7, 12.0}) {
        CHECK(phi_lower(phi_inverse(z, c, 1), c, 1) == doctest::Approx(z).epsilon(1e-12));
    }
    // strict monotonicity of the inverse
    CHECK(phi_inverse(1.0, c, 1) < phi_inverse(1.5, c, 1));
    CHECK_THROWS_AS(phi_lower(-1.0, c, 1), std::domain_error);
}

TEST_CASE("psi lower bound") {
    CHECK(psi_lower(0.0, 0.5, 1.0, 2.0) == 0.0);
    CHECK(psi_lower(4.0, 0.5, 1.0, 2.0) == doctest::Approx(0.5 * std::pow(4.0, 1.5)));
}

TEST_CASE("groenwall bound endpoints") {
    const double h0 = 3.0, c = 0.2, zeta = 0.5;
    CHECK(groenwall_bound(h0, c, zeta, 0.0) == doctest::Approx(h0));
    CHECK(groenwall_bound(h0, c, zeta, 10.0) < h0);
    // late-time power law
    const double b1 = groenwall_bound(h0, c, zeta, 1e8);
    const double b2 = groenwall_bound(h0, c, zeta, 4e8);
    CHECK(b1 / b2 == doctest::Approx(std::pow(4.0, zeta)).epsilon(1e-3));
}

TEST_CASE("rate model assembly is coherent") {
    auto rm = assemble_rate_model(1, 1.0, 2.0, 136.0, 137.0, 1e10, 1e-12, 5e-13, 0.69, 10.0,
                                  100.0, 12.0, 5.0);
    CHECK(rm.zeta == doctest::Approx(0.5));
    CHECK(rm.c_small > 0.0);
    CHECK(rm.c0 > 0.0);
    CHECK(rm.c1 > 0.0);
    CHECK(rm.c_rate > 0.0);
    CHECK(rm.min_const > 0.0);
    // zeta switches to k/beta below the heat cap
    auto rm2 = assemble_rate_model(1, 1.0, 0.25, 136.0, 137.0, 1e10, 1e-12, 5e-13, 0.69, 10.0,
                                   100.0, 12.0, 5.0);
    CHECK(rm2.zeta == doctest::Approx(0.25));
}

TEST_CASE("rate fit recovers a planted slope with confidence interval") {
    std::vector<double> t, y;
    for (double tt = 0.0; tt <= 400.0; tt += 2.0) {
        t.push_back(tt);
        y.push_back(7.0 * std::pow(1.0 + tt, -0.5));
    }
    auto fit = fit_rate(t, y, 100.0, 400.0);
    CHECK(fit.slope == doctest::Approx(-0.5).epsilon(1e-10));
    CHECK(fit.ci95 <= 1e-10);
    CHECK(fit.npts > 100);
    CHECK_THROWS_AS(fit_rate(t, y, 1000.0, 2000.0), std::runtime_error);
}
