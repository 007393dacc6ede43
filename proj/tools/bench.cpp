// Timing comparison of the OpenMP kernels against the serial reference
// implementations: collision application, implicit column solves, spectral
// advection, and weighted-norm reductions.

#include "hypoc/collision.hpp"
#include "hypoc/diagnostics.hpp"
#include "hypoc/reference.hpp"
#include "hypoc/rng.hpp"
#include "hypoc/transport.hpp"

#include <atomic>
#include <chrono>
#include <cstdio>
#include <functional>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace {

std::atomic<double> g_sink{0.0}; // keeps results alive across timing loops

double time_ms(const std::function<void()>& fn, int reps) {
    fn(); // warm up
    const auto t0 = std::chrono::steady_clock::now();
    for (int r = 0; r < reps; ++r) fn();
    const auto t1 = std::chrono::steady_clock::now();
    return std::chrono::duration<double, std::milli>(t1 - t0).count() / reps;
}

void report(const char* name, double serial_ms, double parallel_ms) {
    std::printf("%-34s %10.3f ms %10.3f ms %8.2fx\n", name, serial_ms, parallel_ms,
                serial_ms / parallel_ms);
}

} // namespace

int main(int argc, char** argv) {
    using namespace hypoc;
    const int nv = argc > 1 ? std::atoi(argv[1]) : 513;
    const int nx = argc > 2 ? std::atoi(argv[2]) : 256;
    const int reps = argc > 3 ? std::atoi(argv[3]) : 5;

    const double alpha = 0.5;
    auto vg = make_velocity_grid(nv | 1, velocity_cutoff(alpha, 11.0));
    auto xg = make_spatial_grid(nx, 1000.0);
    auto eq = build_equilibrium(alpha, 1, vg, 11.0);

    CollisionSpec fp;
    fp.kind = CollisionKind::fokker_planck;
    fp.beta = 2.0 * (1.0 - alpha);
    auto op_fp = std::make_shared<CollisionOperator>(fp, eq);

    CollisionSpec sc;
    sc.kind = CollisionKind::scattering;
    sc.beta = 1.0;
    auto op_sc = std::make_shared<CollisionOperator>(sc, eq);

    FieldSampler sampler(7);
    auto field = make_field(xg, vg);
    field.values = sampler.phase_space_field(xg, eq);
    auto vcol = sampler.velocity_field(eq);

#ifdef _OPENMP
    std::printf("threads: %d, grid %d x %d, %d reps\n", omp_get_max_threads(), nx, vg.n, reps);
#else
    std::printf("OpenMP disabled, grid %d x %d, %d reps\n", nx, vg.n, reps);
#endif
    std::printf("%-34s %13s %13s %9s\n", "kernel", "serial", "parallel", "speedup");

    // scattering application over all columns
    {
        auto kernel = [&](int i, int j) { return op_sc->kernel(i, j); };
        const double serial = time_ms(
            [&] {
                std::vector<double> col(vg.n);
                for (int ix = 0; ix < nx; ++ix) {
                    for (int iv = 0; iv < vg.n; ++iv) col[iv] = field.at(iv, ix);
                    auto out = ref::apply_scattering(eq, kernel, col);
                    g_sink = g_sink + out[0];
                }
            },
            1);
        const double parallel = time_ms(
            [&] {
#pragma omp parallel
                {
                    std::vector<double> col(vg.n), out(vg.n);
#pragma omp for schedule(static)
                    for (int ix = 0; ix < nx; ++ix) {
                        for (int iv = 0; iv < vg.n; ++iv) col[iv] = field.at(iv, ix);
                        op_sc->apply(col.data(), out.data());
                    }
                }
            },
            reps);
        report("scattering apply (all columns)", serial, parallel);
    }

    // implicit Fokker-Planck column solves
    {
        auto fac = factor_implicit(*op_fp, 1e-3);
        auto f2 = field;
        const double serial = time_ms(
            [&] {
                std::vector<double> col(vg.n), out(vg.n);
                for (int ix = 0; ix < nx; ++ix) {
                    for (int iv = 0; iv < vg.n; ++iv) col[iv] = f2.at(iv, ix);
                    solve_implicit(*op_fp, fac, col.data(), out.data());
                    for (int iv = 0; iv < vg.n; ++iv) f2.at(iv, ix) = out[iv];
                }
            },
            reps);
        SolverConfig scfg;
        scfg.dt = 1e-3;
        scfg.t_end = 1.0;
        scfg.scheme = CollisionScheme::implicit_euler;
        KineticStepper stepper(xg, op_fp, scfg);
        const double parallel = time_ms([&] { stepper.collide(f2, 1e-3); }, reps);
        report("implicit FP solve (all columns)", serial, parallel);
    }

    // spectral advection vs direct DFT translation
    {
        Advector adv(xg, vg);
        auto f2 = field;
        const double parallel = time_ms([&] { adv.advance(f2, 1e-3); }, reps);
        auto row = std::vector<double>(field.row(vg.n / 2), field.row(vg.n / 2) + nx);
        const double serial_row = time_ms(
            [&] { auto out = ref::translate_dft(row, xg.length, vg.v[vg.n / 2] * 1e-3); }, 1);
        report("advection (FFT rows vs DFT row x nv)", serial_row * vg.n, parallel);
    }

    // weighted norm reduction
    {
        Diagnostics diag(xg, eq, 1.0, 2.0);
        const double serial = time_ms(
            [&] {
                std::vector<double> col(vg.n);
                double s = 0;
                for (int ix = 0; ix < nx; ++ix) {
                    for (int iv = 0; iv < vg.n; ++iv) col[iv] = field.at(iv, ix);
                    s += ref::norm_k_sq(eq, col, 2.0);
                }
                g_sink = g_sink + s * xg.dx;
            },
            reps);
        const double parallel = time_ms([&] { g_sink = g_sink + diag.norm_k_sq(field); }, reps);
        report("weighted norm ||f||_k^2", serial, parallel);
    }

    (void)vcol;
    return (g_sink.load() == 42.0) ? 1 : 0;
}
