#include "hypoc/collision.hpp"
#include "hypoc/reference.hpp"
#include "hypoc/rng.hpp"
#include "hypoc/spectral.hpp"

#include <doctest.h>

#include <cmath>
#include <stdexcept>

using namespace hypoc;

namespace {

Equilibrium standard_eq(double alpha = 0.5, int n = 257, double kmax = 11.0) {
    return build_equilibrium(alpha, 1, make_velocity_grid(n, velocity_cutoff(alpha, kmax)), kmax);
}

CollisionOperator make_fp(const Equilibrium& eq) {
    CollisionSpec s;
    s.kind = CollisionKind::fokker_planck;
    s.beta = 2.0 * (1.0 - eq.alpha);
    return CollisionOperator(s, eq);
}

CollisionOperator make_separable(const Equilibrium& eq, double beta = 1.0) {
    CollisionSpec s;
    s.kind = CollisionKind::scattering;
    s.beta = beta;
    return CollisionOperator(s, eq);
}

double mu_dot(const Equilibrium& eq, const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (int i = 0; i < eq.grid.n; ++i) s += eq.grid.w[i] * a[i] * b[i] / eq.F[i];
    return s;
}

} // namespace

TEST_CASE("spec validation") {
    CollisionSpec s;
    s.kind = CollisionKind::fokker_planck;
    s.beta = 0.8; // wrong for alpha = 0.5
    CHECK_THROWS_AS(validate_spec(s, 0.5, 1), std::invalid_argument);
    s.beta = 1.0;
    CHECK_NOTHROW(validate_spec(s, 0.5, 1));
    s.kind = CollisionKind::scattering;
    s.family = KernelFamily::boltzmann;
    s.beta = 1.5; // >= d
    CHECK_THROWS_AS(validate_spec(s, 0.5, 1), std::invalid_argument);
    s.beta = 0.5;
    s.gamma = 0.6; // > beta
    CHECK_THROWS_AS(validate_spec(s, 0.5, 1), std::invalid_argument);
}

TEST_CASE("fokker-planck kernel, mass, self-adjointness") {
    auto eq = standard_eq();
    auto op = make_fp(eq);

    auto lF = op.apply(eq.F);
    for (double x : lF) CHECK(std::abs(x) <= 1e-14);

    FieldSampler sampler(21);
    for (int s = 0; s < 20; ++s) {
        auto f = sampler.velocity_field(eq);
        auto lf = op.apply(f);
        double m = 0.0, scale = 0.0;
        for (int i = 0; i < eq.grid.n; ++i) {
            m += eq.grid.w[i] * lf[i];
            scale += eq.grid.w[i] * std::abs(lf[i]);
        }
        CHECK(std::abs(m) <= 1e-12 * scale); // exact telescoping of fluxes

        auto g = sampler.velocity_field(eq);
        const double a = op.pairing_mu(f.data(), g.data());
        const double b = op.pairing_mu(g.data(), f.data());
        CHECK(a == doctest::Approx(b).epsilon(1e-12));
        CHECK(op.pairing_mu(f.data(), f.data()) <= 1e-12);
    }
}

TEST_CASE("fokker-planck dissipation identity against the face-sum oracle") {
    auto eq = standard_eq();
    auto op = make_fp(eq);
    FieldSampler sampler(22);
    for (int s = 0; s < 50; ++s) {
        auto f = sampler.velocity_field(eq);
        const double lhs = -op.pairing_mu(f.data(), f.data());
        const double rhs = ref::dissipation_fokker_planck(eq, f);
        CHECK(lhs == doctest::Approx(rhs).epsilon(1e-10));
        CHECK(lhs == doctest::Approx(op.dissipation(f.data())).epsilon(1e-12));
    }
}

TEST_CASE("scattering operator identities (separable kernel)") {
    auto eq = standard_eq();
    auto op = make_separable(eq);
    CHECK(op.h1_residual() <= 1e-14);

    auto lF = op.apply(eq.F);
    for (double x : lF) CHECK(std::abs(x) <= 1e-12);

    FieldSampler sampler(23);
    auto kernel = [&](int i, int j) { return op.kernel(i, j); };
    for (int s = 0; s < 25; ++s) {
        auto f = sampler.velocity_field(eq);
        // matrix path vs direct kernel quadrature oracle
        auto lf = op.apply(f);
        auto oracle = ref::apply_scattering(eq, kernel, f);
        double dmax = 0.0, smax = 0.0;
        for (int i = 0; i < eq.grid.n; ++i) {
            dmax = std::max(dmax, std::abs(lf[i] - oracle[i]));
            smax = std::max(smax, std::abs(oracle[i]));
        }
        CHECK(dmax <= 1e-12 * smax);
        // dissipation against the double-sum oracle
        const double lhs = -op.pairing_mu(f.data(), f.data());
        const double rhs = ref::dissipation_scattering(eq, kernel, f);
        CHECK(lhs == doctest::Approx(rhs).epsilon(1e-9));
    }
}

TEST_CASE("separable nu2 profile is exactly separable") {
    auto eq = standard_eq();
    auto op = make_separable(eq);
    auto fit = op.nu2_profile();
    const double c = moment_theta_k(eq, -1.0);
    CHECK(fit.nu_lower == doctest::Approx(c).epsilon(1e-12));
    CHECK(fit.nu_upper == doctest::Approx(c).epsilon(1e-12));
    for (int i = 0; i < eq.grid.n; ++i)
        CHECK(fit.nu2[i] == doctest::Approx(c / eq.grid.av[i]).epsilon(1e-12));
}

TEST_CASE("boltzmann kernel: nu2 bounds and H2 fit") {
    auto eq = standard_eq();
    CollisionSpec s;
    s.kind = CollisionKind::scattering;
    s.family = KernelFamily::boltzmann;
    s.beta = 0.5;
    s.gamma = 0.45;
    CollisionOperator op(s, eq);
    CHECK(op.h1_residual() <= 1e-13);
    auto fit = op.nu2_profile();
    CHECK(fit.nu_lower > 0.0);
    CHECK(std::isfinite(fit.nu_upper));
    CHECK(fit.nu_upper / fit.nu_lower < 10.0);
    CHECK(op.spec().b_lower > 0.0);
    CHECK(op.spec().b_upper >= 1.0); // the kernel itself sits below the H2 cap
    // nu2 <v>^beta bounded on the whole grid by the fitted constants
    for (int i = 0; i < eq.grid.n; ++i) {
        const double scaled = fit.nu2[i] * std::pow(eq.grid.av[i], s.beta);
        CHECK(scaled >= fit.nu_lower * (1.0 - 1e-12));
        CHECK(scaled <= fit.nu_upper * (1.0 + 1e-12));
    }
}

TEST_CASE("drift constants: closed formulas and randomized inequality audit") {
    auto eq = standard_eq();
    auto op = make_fp(eq);
    auto dc = op.drift_constants(2.0);
    CHECK(dc.c_k == doctest::Approx(1.5));
    CHECK(dc.a_k == doctest::Approx(1.5));
    CHECK(dc.b_k == doctest::Approx(0.25));
    CHECK(dc.ell == doctest::Approx(1.5));
    CHECK(dc.R_k == doctest::Approx(36.0));

    // kernel element: left side vanishes, right side at F is nonnegative
    const auto avk = eq.grid.av_pow(2.0);
    std::vector<double> Fm(eq.grid.n);
    for (int i = 0; i < eq.grid.n; ++i) Fm[i] = eq.F[i] * avk[i];
    CHECK(std::abs(op.pairing_mu(eq.F.data(), Fm.data())) <= 1e-12);

    // randomized audit for both operators
    for (bool fp : {true, false}) {
        auto any = fp ? make_fp(eq) : make_separable(eq);
        auto d2 = any.drift_constants(2.0);
        FieldSampler sampler(fp ? 31 : 32);
        for (int s = 0; s < 100; ++s) {
            auto f = sampler.velocity_field(eq);
            std::vector<double> fm(eq.grid.n);
            for (int i = 0; i < eq.grid.n; ++i) fm[i] = f[i] * avk[i];
            const double lhs = any.pairing_mu(f.data(), fm.data());
            double rhs = 0.0, scale = 0.0;
            for (int i = 0; i < eq.grid.n; ++i) {
                const double dens = eq.grid.w[i] * f[i] * f[i] * avk[i] / eq.F[i];
                rhs += ((std::abs(eq.grid.v[i]) < d2.R_k ? d2.a_k : 0.0) -
                        d2.b_k * std::pow(eq.grid.av[i], -d2.ell)) *
                       dens;
                scale += (d2.a_k + d2.b_k) * dens;
            }
            CHECK(rhs - lhs >= -1e-9 * scale);
        }
    }
}

TEST_CASE("micro-coercivity constants") {
    auto eq = standard_eq();
    auto op = make_separable(eq);
    CHECK(op.micro_coercivity() ==
          doctest::Approx(0.5 * op.spec().b_lower / moment_theta_k(eq, 1.0)).epsilon(1e-12));
    // velocity-only micro-coercivity with the grid constant for L1
    auto fp = make_fp(eq);
    const double c = corollary_on_grid(eq, 1.0);
    FieldSampler sampler(33);
    for (int s = 0; s < 50; ++s) {
        auto f = sampler.velocity_field(eq);
        double rho = 0.0;
        for (int i = 0; i < eq.grid.n; ++i) rho += eq.grid.w[i] * f[i];
        double dist = 0.0;
        for (int i = 0; i < eq.grid.n; ++i) {
            const double d = f[i] - rho * eq.F[i];
            dist += eq.grid.w[i] * d * d / (eq.F[i] * eq.grid.av[i]);
        }
        const double diss = fp.dissipation(f.data());
        CHECK(diss - c * dist >= -1e-10 * (diss + c * dist));
    }
}

TEST_CASE("implicit factorization solves the symmetrized system") {
    auto eq = standard_eq(0.5, 129);
    FieldSampler sampler(41);
    for (bool fp : {true, false}) {
        auto op = fp ? make_fp(eq) : make_separable(eq);
        const double dt = 1e-2;
        auto fac = factor_implicit(op, dt);
        auto r = sampler.velocity_field(eq);
        std::vector<double> x(eq.grid.n), lx(eq.grid.n);
        solve_implicit(op, fac, r.data(), x.data());
        op.apply(x.data(), lx.data());
        // x - dt L x = r
        for (int i = 0; i < eq.grid.n; ++i)
            CHECK(x[i] - dt * lx[i] == doctest::Approx(r[i]).epsilon(1e-9));
        // contraction in the mu-norm
        CHECK(mu_dot(eq, x, x) <= mu_dot(eq, r, r) * (1.0 + 1e-12));
    }
}

TEST_CASE("implicit euler trajectory is dissipative at every step") {
    auto eq = standard_eq(0.5, 129);
    auto op = make_fp(eq);
    auto fac = factor_implicit(op, 5e-3);
    FieldSampler sampler(42);
    auto f = sampler.velocity_field(eq);
    double prev = mu_dot(eq, f, f);
    std::vector<double> next(eq.grid.n);
    for (int step = 0; step < 1000; ++step) {
        solve_implicit(op, fac, f.data(), next.data());
        f.swap(next);
        const double cur = mu_dot(eq, f, f);
        CHECK(cur <= prev * (1.0 + 1e-12));
        prev = cur;
    }
}

TEST_CASE("implicit step converges to the generator at first order") {
    auto eq = standard_eq(0.5, 129);
    auto op = make_fp(eq);
    FieldSampler sampler(43);
    auto f = sampler.velocity_field(eq);
    auto lf = op.apply(f);
    double prev_err = 0.0;
    int idx = 0;
    for (double dt : {1e-2, 1e-3, 1e-4}) {
        auto fac = factor_implicit(op, dt);
        std::vector<double> x(eq.grid.n);
        solve_implicit(op, fac, f.data(), x.data());
        double err = 0.0, scale = 0.0;
        for (int i = 0; i < eq.grid.n; ++i) {
            err = std::max(err, std::abs((x[i] - f[i]) / dt - lf[i]));
            scale = std::max(scale, std::abs(lf[i]));
        }
        if (idx > 0) CHECK(prev_err / err >= 5.0); // first order in dt
        prev_err = err;
        ++idx;
        CHECK(err <= scale); // sanity
    }
}

TEST_CASE("local equilibria are fixed points of the implicit step") {
    auto eq = standard_eq(0.5, 129);
    for (bool fp : {true, false}) {
        auto op = fp ? make_fp(eq) : make_separable(eq);
        auto fac = factor_implicit(op, 0.1);
        std::vector<double> x(eq.grid.n);
        solve_implicit(op, fac, eq.F.data(), x.data());
        for (int i = 0; i < eq.grid.n; ++i)
            CHECK(x[i] == doctest::Approx(eq.F[i]).epsilon(1e-11));
    }
}

TEST_CASE("effective diffusivity is positive and finite") {
    auto eq = standard_eq(0.5, 257);
    auto fp = make_fp(eq);
    const double d1 = fp.effective_diffusivity();
    CHECK(d1 > 0.0);
    CHECK(std::isfinite(d1));
    auto sc = make_separable(eq);
    const double d2 = sc.effective_diffusivity();
    CHECK(d2 > 0.0);
    CHECK(std::isfinite(d2));
}
