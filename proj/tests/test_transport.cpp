#include "hypoc/transport.hpp"

#include "hypoc/diagnostics.hpp"
#include "hypoc/reference.hpp"
#include "hypoc/rng.hpp"

#include <doctest.h>

#include <cmath>

using namespace hypoc;

namespace {

struct Setup {
    SpatialGrid xg;
    Equilibrium eq;
    std::shared_ptr<CollisionOperator> op;
};

Setup make_setup(int nx = 64, int nv = 129, double length = 40.0) {
    Setup s{make_spatial_grid(nx, length),
            build_equilibrium(0.5, 1, make_velocity_grid(nv, velocity_cutoff(0.5, 11.0)), 11.0),
            nullptr};
    CollisionSpec spec;
    spec.kind = CollisionKind::fokker_planck;
    spec.beta = 1.0;
    s.op = std::make_shared<CollisionOperator>(spec, s.eq);
    return s;
}

} // namespace

TEST_CASE("advection of x-uniform data is the identity") {
    auto s = make_setup();
    auto f = make_field(s.xg, s.eq.grid);
    for (int iv = 0; iv < f.nv; ++iv)
        for (int ix = 0; ix < f.nx; ++ix) f.at(iv, ix) = s.eq.F[iv] * (1.0 + 0.3 * iv);
    auto g = advect(f, s.xg, s.eq.grid, 0.37);
    for (std::size_t i = 0; i < f.values.size(); ++i)
        CHECK(g.values[i] == doctest::Approx(f.values[i]).epsilon(1e-13));
}

TEST_CASE("single-mode advection is an exact phase shift") {
    auto s = make_setup();
    auto f = make_field(s.xg, s.eq.grid);
    const double two_pi = 2.0 * std::acos(-1.0);
    for (int iv = 0; iv < f.nv; ++iv)
        for (int ix = 0; ix < f.nx; ++ix)
            f.at(iv, ix) = std::cos(two_pi * s.xg.x[ix] / s.xg.length) * s.eq.F[iv];
    const double dt = 0.123;
    auto g = advect(f, s.xg, s.eq.grid, dt);
    for (int iv = 0; iv < f.nv; ++iv)
        for (int ix = 0; ix < f.nx; ++ix) {
            const double expected =
                std::cos(two_pi * (s.xg.x[ix] - s.eq.grid.v[iv] * dt) / s.xg.length) * s.eq.F[iv];
            CHECK(g.at(iv, ix) == doctest::Approx(expected).epsilon(5e-13));
        }
}

TEST_CASE("advection against the direct DFT translation oracle") {
    auto s = make_setup(32, 65);
    FieldSampler sampler(51);
    auto f = make_field(s.xg, s.eq.grid);
    f.values = sampler.phase_space_field(s.xg, s.eq);
    const double dt = 0.21;
    auto g = advect(f, s.xg, s.eq.grid, dt);
    for (int iv = 0; iv < f.nv; iv += 16) {
        std::vector<double> row(f.row(iv), f.row(iv) + f.nx);
        auto oracle = ref::translate_dft(row, s.xg.length, s.eq.grid.v[iv] * dt);
        for (int ix = 0; ix < f.nx; ++ix)
            CHECK(g.at(iv, ix) == doctest::Approx(oracle[ix]).epsilon(1e-10));
    }
}

TEST_CASE("advection preserves every x-integrated norm") {
    auto s = make_setup();
    Diagnostics diag(s.xg, s.eq, 1.0, 2.0);
    FieldSampler sampler(52);
    auto f = make_field(s.xg, s.eq.grid);
    f.values = sampler.phase_space_field(s.xg, s.eq);
    const double n0 = diag.norm0_sq(f);
    const double nk = diag.norm_k_sq(f);
    auto g = advect(f, s.xg, s.eq.grid, 0.77);
    CHECK(diag.norm0_sq(g) == doctest::Approx(n0).epsilon(1e-12));
    CHECK(diag.norm_k_sq(g) == doctest::Approx(nk).epsilon(1e-12));
}

TEST_CASE("collision step: local equilibria fixed, mass per column conserved") {
    auto s = make_setup();
    SolverConfig cfg;
    cfg.dt = 1e-2;
    cfg.t_end = 1.0;
    KineticStepper stepper(s.xg, s.op, cfg);
    auto f = make_field(s.xg, s.eq.grid);
    FieldSampler sampler(53);
    auto rho = sampler.spatial_profile(s.xg);
    for (int iv = 0; iv < f.nv; ++iv)
        for (int ix = 0; ix < f.nx; ++ix) f.at(iv, ix) = (2.0 + rho[ix]) * s.eq.F[iv];
    auto g = f;
    stepper.collide(g, cfg.dt);
    for (std::size_t i = 0; i < f.values.size(); ++i)
        CHECK(g.values[i] == doctest::Approx(f.values[i]).epsilon(1e-11));

    f.values = sampler.phase_space_field(s.xg, s.eq);
    g = f;
    stepper.collide(g, cfg.dt);
    for (int ix = 0; ix < f.nx; ++ix) {
        double before = 0.0, after = 0.0;
        for (int iv = 0; iv < f.nv; ++iv) {
            before += s.eq.grid.w[iv] * f.at(iv, ix);
            after += s.eq.grid.w[iv] * g.at(iv, ix);
        }
        CHECK(after == doctest::Approx(before).epsilon(1e-11));
    }
}

TEST_CASE("global dissipation along the discrete flow") {
    auto s = make_setup();
    SolverConfig cfg;
    cfg.dt = 5e-3;
    cfg.t_end = 0.5;
    KineticStepper stepper(s.xg, s.op, cfg);
    Diagnostics diag(s.xg, s.eq, 1.0, 2.0);
    auto f = make_field(s.xg, s.eq.grid);
    FieldSampler sampler(54);
    f.values = sampler.phase_space_field(s.xg, s.eq);
    double prev = diag.norm0_sq(f);
    const double mass0 = mass(f, s.xg, s.eq.grid);
    for (int step = 0; step < 100; ++step) {
        stepper.step(f);
        const double cur = diag.norm0_sq(f);
        CHECK(cur <= prev * (1.0 + 1e-12));
        prev = cur;
    }
    CHECK(mass(f, s.xg, s.eq.grid) == doctest::Approx(mass0).epsilon(1e-10));
    for (double x : f.values) CHECK(std::isfinite(x));
}

TEST_CASE("zero data stays zero") {
    auto s = make_setup(32, 65);
    SolverConfig cfg;
    cfg.dt = 1e-2;
    cfg.t_end = 0.2;
    KineticStepper stepper(s.xg, s.op, cfg);
    auto f = make_field(s.xg, s.eq.grid);
    run(stepper, f, cfg.t_end, 5, nullptr);
    for (double x : f.values) CHECK(x == 0.0);
}

TEST_CASE("strang vs lie splitting orders under dt halving") {
    auto s = make_setup(32, 65, 20.0);
    FieldSampler sampler(55);
    auto f0 = make_field(s.xg, s.eq.grid);
    f0.values = sampler.phase_space_field(s.xg, s.eq);
    const double T = 0.4;

    auto solve_with = [&](Splitting sp, double dt) {
        SolverConfig cfg;
        cfg.dt = dt;
        cfg.t_end = T;
        cfg.splitting = sp;
        cfg.scheme = CollisionScheme::crank_nicolson;
        KineticStepper st(s.xg, s.op, cfg);
        auto f = f0;
        run(st, f, T, 1 << 30, nullptr);
        return f;
    };
    auto err = [&](const DistributionField& a, const DistributionField& b) {
        double e = 0.0;
        for (std::size_t i = 0; i < a.values.size(); ++i)
            e = std::max(e, std::abs(a.values[i] - b.values[i]));
        return e;
    };
    const auto ref_run = solve_with(Splitting::strang, T / 1024);
    const double e_strang_1 = err(solve_with(Splitting::strang, T / 32), ref_run);
    const double e_strang_2 = err(solve_with(Splitting::strang, T / 64), ref_run);
    const double e_lie_1 = err(solve_with(Splitting::lie, T / 32), ref_run);
    const double e_lie_2 = err(solve_with(Splitting::lie, T / 64), ref_run);
    CHECK(e_strang_1 / e_strang_2 >= 3.2); // second order
    CHECK(e_strang_1 / e_strang_2 <= 5.0);
    CHECK(e_lie_1 / e_lie_2 >= 1.7); // first order
    CHECK(e_lie_1 / e_lie_2 <= 2.6);
}

TEST_CASE("homogeneous initial data reproduces the velocity-only trajectory") {
    auto s = make_setup(16, 129);
    FieldSampler sampler(56);
    auto p = sampler.velocity_field(s.eq, 6, true);
    auto f = make_field(s.xg, s.eq.grid);
    for (int iv = 0; iv < f.nv; ++iv)
        for (int ix = 0; ix < f.nx; ++ix) f.at(iv, ix) = p[iv];
    SolverConfig cfg;
    cfg.dt = 1e-2;
    cfg.t_end = 2.0;
    cfg.scheme = CollisionScheme::crank_nicolson;
    KineticStepper stepper(s.xg, s.op, cfg);
    run(stepper, f, cfg.t_end, 1 << 30, nullptr);

    // velocity-only reference: same implicit scheme, no transport effect
    std::vector<double> cur = p, rhs(f.nv), nxt(f.nv);
    const auto fac = factor_implicit(*s.op, 0.5 * cfg.dt);
    for (int step = 0; step < 200; ++step) {
        s.op->apply(cur.data(), rhs.data());
        for (int i = 0; i < f.nv; ++i) rhs[i] = cur[i] + 0.5 * cfg.dt * rhs[i];
        solve_implicit(*s.op, fac, rhs.data(), nxt.data());
        cur.swap(nxt);
    }
    for (int iv = 0; iv < f.nv; ++iv)
        for (int ix = 0; ix < f.nx; ix += 7)
            CHECK(f.at(iv, ix) == doctest::Approx(cur[iv]).epsilon(1e-10));
}
