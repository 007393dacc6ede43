#include "hypoc/audits.hpp"

#include "hypoc/decay.hpp"
#include "hypoc/reference.hpp"
#include "hypoc/rng.hpp"

#include <cmath>

namespace hypoc {

namespace {

double norm_mu_sq(const Equilibrium& eq, const std::vector<double>& f, double k = 0.0) {
    return ref::norm_k_sq(eq, f, k);
}

} // namespace

void audit_operator_identities(const CollisionOperator& op, int n_fields, std::uint64_t seed,
                               AuditLog& log) {
    const Equilibrium& eq = op.eq();
    const auto& g = eq.grid;
    FieldSampler sampler(seed);
    const bool fp = op.kind() == CollisionKind::fokker_planck;
    const char* tag = fp ? "L1" : "L2";

    // kernel: L F = 0
    {
        auto lf = op.apply(eq.F);
        double worst = 0.0;
        for (int i = 0; i < g.n; ++i) worst = std::max(worst, std::abs(lf[i]));
        double scale = 0.0;
        for (int i = 0; i < g.n; ++i) scale = std::max(scale, std::abs(eq.F[i]));
        log.add(std::string(tag) + " annihilates F", -worst, scale, 1e-12);
    }
    // mass conservation of the applied operator
    {
        double worst = 0.0;
        for (int s = 0; s < n_fields; ++s) {
            auto f = sampler.velocity_field(eq);
            auto lf = op.apply(f);
            double m = 0.0, sc = 0.0;
            for (int i = 0; i < g.n; ++i) {
                m += g.w[i] * lf[i];
                sc += g.w[i] * std::abs(lf[i]);
            }
            worst = std::max(worst, std::abs(m) / (sc + 1e-300));
        }
        log.add(std::string(tag) + " mass conservation", -worst, 1.0, 1e-12);
    }
    // self-adjointness and sign in L2(dmu)
    {
        double worst_sym = 0.0, worst_sign = -1e300;
        for (int s = 0; s < n_fields; ++s) {
            auto f = sampler.velocity_field(eq);
            auto h = sampler.velocity_field(eq);
            const double a = op.pairing_mu(f.data(), h.data());
            const double b = op.pairing_mu(h.data(), f.data());
            const double nf = std::sqrt(norm_mu_sq(eq, f));
            const double nh = std::sqrt(norm_mu_sq(eq, h));
            worst_sym = std::max(worst_sym, std::abs(a - b) / (nf * nh));
            worst_sign = std::max(worst_sign, op.pairing_mu(f.data(), f.data()) / (nf * nf));
        }
        log.add(std::string(tag) + " self-adjoint in L2(dmu)", -worst_sym, 1.0, 1e-10);
        log.add(std::string(tag) + " negative semi-definite", -worst_sign, 1.0, 1e-12);
    }
    // dissipation identity against the serial oracle
    {
        double worst = 0.0;
        auto kernel = [&](int i, int j) { return op.kernel(i, j); };
        for (int s = 0; s < n_fields; ++s) {
            auto f = sampler.velocity_field(eq);
            const double lhs = -op.pairing_mu(f.data(), f.data());
            const double rhs = fp ? ref::dissipation_fokker_planck(eq, f)
                                  : ref::dissipation_scattering(eq, kernel, f);
            worst = std::max(worst, std::abs(lhs - rhs) / (std::abs(rhs) + 1e-300));
        }
        log.add(std::string(tag) + " dissipation identity vs oracle", -worst, 1.0, 1e-9);
    }
    // application against the serial oracle
    {
        double worst = 0.0;
        auto kernel = [&](int i, int j) { return op.kernel(i, j); };
        for (int s = 0; s < std::min(n_fields, 10); ++s) {
            auto f = sampler.velocity_field(eq);
            auto lf = op.apply(f);
            auto oracle = fp ? ref::apply_fokker_planck(eq, f) : ref::apply_scattering(eq, kernel, f);
            double num = 0.0, den = 0.0;
            for (int i = 0; i < g.n; ++i) {
                num = std::max(num, std::abs(lf[i] - oracle[i]));
                den = std::max(den, std::abs(oracle[i]));
            }
            worst = std::max(worst, num / (den + 1e-300));
        }
        log.add(std::string(tag) + " apply vs serial oracle", -worst, 1.0, 1e-12);
    }
    if (!fp) log.add("L2 detailed-balance residual (H1)", -op.h1_residual(), 1.0, 1e-10);
}

void audit_drift_inequality(const CollisionOperator& op, double k, int n_fields,
                            std::uint64_t seed, AuditLog& log) {
    const Equilibrium& eq = op.eq();
    const auto& g = eq.grid;
    const auto dc = op.drift_constants(k);
    const auto avk = g.av_pow(k);
    FieldSampler sampler(seed);
    double worst = 1e300;
    for (int s = 0; s < n_fields; ++s) {
        auto f = sampler.velocity_field(eq);
        const double lhs = [&] {
            std::vector<double> fm(g.n);
            for (int i = 0; i < g.n; ++i) fm[i] = f[i] * avk[i];
            return op.pairing_mu(f.data(), fm.data());
        }();
        double rhs = 0.0, scale = 0.0;
        for (int i = 0; i < g.n; ++i) {
            const double dens = g.w[i] * f[i] * f[i] * avk[i] / eq.F[i];
            const double coeff = (std::abs(g.v[i]) < dc.R_k ? dc.a_k : 0.0) -
                                 dc.b_k * std::pow(g.av[i], -dc.ell);
            rhs += coeff * dens;
            scale += (dc.a_k + dc.b_k) * dens;
        }
        worst = std::min(worst, (rhs - lhs) / (scale + 1e-300));
    }
    const char* tag = op.kind() == CollisionKind::fokker_planck ? "L1" : "L2";
    log.add(std::string(tag) + " drift inequality (weight k)", worst, 1.0, 1e-9);
}

void audit_micro_coercivity(const CollisionOperator& op, const Diagnostics& diag, double c_micro,
                            int n_fields, std::uint64_t seed, AuditLog& log) {
    const Equilibrium& eq = op.eq();
    const SpatialGrid& xg = diag.xgrid();
    FieldSampler sampler(seed);
    double worst = 1e300;
    for (int s = 0; s < n_fields; ++s) {
        auto f = make_field(xg, eq.grid);
        f.values = sampler.phase_space_field(xg, eq);
        double diss = 0.0;
        std::vector<double> col(eq.grid.n);
        for (int ix = 0; ix < xg.n; ++ix) {
            for (int iv = 0; iv < eq.grid.n; ++iv) col[iv] = f.at(iv, ix);
            diss += op.dissipation(col.data());
        }
        diss *= xg.dx;
        const double micro = diag.micro_norm_sq(f);
        worst = std::min(worst, (diss - c_micro * micro) / (diss + c_micro * micro + 1e-300));
    }
    const char* tag = op.kind() == CollisionKind::fokker_planck ? "L1" : "L2";
    log.add(std::string(tag) + " micro-coercivity", worst, 1.0, 1e-8);
}

void audit_projection_and_elliptic(const Diagnostics& diag, const SpatialGrid& xg, int n_fields,
                                   std::uint64_t seed, AuditLog& log) {
    const Equilibrium& eq = diag.eq();
    FieldSampler sampler(seed);
    double worst_idem = 0.0, worst_adj = 0.0, worst_res = 0.0, worst_pair = 0.0;
    for (int s = 0; s < n_fields; ++s) {
        auto f = make_field(xg, eq.grid);
        f.values = sampler.phase_space_field(xg, eq);
        auto pf = diag.project_pi(f);
        auto ppf = diag.project_pi(pf);
        double dmax = 0.0, smax = 0.0;
        for (std::size_t i = 0; i < pf.values.size(); ++i) {
            dmax = std::max(dmax, std::abs(ppf.values[i] - pf.values[i]));
            smax = std::max(smax, std::abs(pf.values[i]));
        }
        worst_idem = std::max(worst_idem, dmax / (smax + 1e-300));

        auto h = make_field(xg, eq.grid);
        h.values = sampler.phase_space_field(xg, eq);
        const double a = [&] { // <Pi f, h>
            auto p = diag.project_pi(f);
            double s2 = 0.0;
            for (int iv = 0; iv < p.nv; ++iv)
                for (int ix = 0; ix < p.nx; ++ix)
                    s2 += eq.grid.w[iv] / eq.F[iv] * p.at(iv, ix) * h.at(iv, ix);
            return s2 * xg.dx;
        }();
        const double b = [&] { // <f, Pi h>
            auto p = diag.project_pi(h);
            double s2 = 0.0;
            for (int iv = 0; iv < p.nv; ++iv)
                for (int ix = 0; ix < p.nx; ++ix)
                    s2 += eq.grid.w[iv] / eq.F[iv] * p.at(iv, ix) * f.at(iv, ix);
            return s2 * xg.dx;
        }();
        worst_adj = std::max(worst_adj, std::abs(a - b) /
                                            (std::sqrt(diag.norm0_sq(f) * diag.norm0_sq(h)) + 1e-300));

        // elliptic residual u - theta u'' = rho, spectral second derivative
        auto r = diag.rho(f);
        auto u = diag.solve_elliptic(r, diag.theta());
        Fourier1D fx(xg.n, xg.length);
        std::vector<std::complex<double>> spec(fx.nh());
        fx.forward(u.data(), spec.data());
        for (int l = 0; l < fx.nh(); ++l) spec[l] *= fx.xi(l) * fx.xi(l);
        std::vector<double> lap(xg.n);
        fx.inverse(spec.data(), lap.data());
        double res = 0.0, rsc = 0.0;
        for (int ix = 0; ix < xg.n; ++ix) {
            res = std::max(res, std::abs(u[ix] + diag.theta() * lap[ix] - r[ix]));
            rsc = std::max(rsc, std::abs(r[ix]));
        }
        worst_res = std::max(worst_res, res / (rsc + 1e-300));

        // spectral pairing equals the direct quadrature <(rho-u)F, rho F>
        const double spectral = diag.pairing_atpi(r, diag.theta());
        double direct = 0.0;
        for (int ix = 0; ix < xg.n; ++ix) direct += (r[ix] - u[ix]) * r[ix];
        direct *= xg.dx;
        worst_pair = std::max(worst_pair, std::abs(spectral - direct) / (std::abs(spectral) + 1e-300));
    }
    log.add("Pi idempotent", -worst_idem, 1.0, 1e-12);
    log.add("Pi self-adjoint", -worst_adj, 1.0, 1e-11);
    log.add("elliptic residual", -worst_res, 1.0, 1e-10);
    log.add("pairing spectral = direct", -worst_pair, 1.0, 1e-9);
}

void audit_production_bounds(const CollisionOperator& op, const Diagnostics& diag,
                             const StepConstants& sc, int n_fields, std::uint64_t seed,
                             AuditLog& log) {
    const Equilibrium& eq = op.eq();
    const SpatialGrid& xg = diag.xgrid();
    FieldSampler sampler(seed);
    double worst3 = 1e300, worst4a = 1e300, worst4b = 1e300, worst5 = 1e300;
    double worst_ta_norm = 1e300;
    for (int s = 0; s < n_fields; ++s) {
        auto f = make_field(xg, eq.grid);
        f.values = sampler.phase_space_field(xg, eq);
        const auto st = diag.evaluate(f, op, 0.5);
        const double x = std::sqrt(st.micro_sq), y = std::sqrt(st.pairing);
        worst3 = std::min(worst3, (sc.c4 * x * y - std::abs(st.inner_at2)) /
                                      (sc.c4 * x * y + std::abs(st.inner_at2) + 1e-300));
        worst4a = std::min(worst4a, st.inner_ta / (std::abs(st.inner_ta) + 1e-300));
        worst4b = std::min(worst4b, (sc.c2 * x * x - st.inner_ta) /
                                        (sc.c2 * x * x + std::abs(st.inner_ta) + 1e-300));
        worst5 = std::min(worst5, (sc.cf * x * y - std::abs(st.inner_al)) /
                                      (sc.cf * x * y + std::abs(st.inner_al) + 1e-300));
        // norm form of the same step bound
        auto taf = diag.apply_TA(f);
        const double ta_norm = std::sqrt(weighted_norm_sq(taf, xg, eq, diag.beta()));
        worst_ta_norm = std::min(worst_ta_norm,
                                 (sc.c2 * x - ta_norm) / (sc.c2 * x + ta_norm + 1e-300));
    }
    log.add("|<AT(I-Pi)f, Pi f>| <= C4 X Y", worst3, 1.0, 1e-8);
    log.add("<TA(I-Pi)f, (I-Pi)f> >= 0", worst4a, 1.0, 1e-10);
    log.add("<TA(I-Pi)f, (I-Pi)f> <= C2 X^2", worst4b, 1.0, 1e-8);
    log.add("|<AL(I-Pi)f, Pi f>| <= CF X Y", worst5, 1.0, 1e-8);
    log.add("||TA f||_beta <= C2 X", worst_ta_norm, 1.0, 1e-6);
}

void audit_entropy_equivalence(const Diagnostics& diag, double delta, int n_fields,
                               std::uint64_t seed, AuditLog& log) {
    const Equilibrium& eq = diag.eq();
    FieldSampler sampler(seed);
    double worst = 1e300;
    for (int s = 0; s < n_fields; ++s) {
        auto f = make_field(diag.xgrid(), eq.grid);
        f.values = sampler.phase_space_field(diag.xgrid(), eq);
        const double n2 = diag.norm0_sq(f);
        const double h = diag.entropy(f, delta);
        const double lo = 0.5 * (1.0 - delta) * n2, hi = 0.5 * (1.0 + delta) * n2;
        worst = std::min(worst, std::min(h - lo, hi - h) / n2);
    }
    log.add("entropy equivalence sandwich", worst, 1.0, 1e-11);
}

void audit_entropy_production(const CollisionOperator& op, const Diagnostics& diag, double delta,
                              double kappa, int n_fields, std::uint64_t seed, AuditLog& log) {
    const Equilibrium& eq = op.eq();
    FieldSampler sampler(seed);
    double worst = 1e300;
    for (int s = 0; s < n_fields; ++s) {
        auto f = make_field(diag.xgrid(), eq.grid);
        f.values = sampler.phase_space_field(diag.xgrid(), eq);
        const auto st = diag.evaluate(f, op, delta);
        const double rhs = kappa * (st.micro_sq + st.pairing);
        worst = std::min(worst, (st.production - rhs) / (std::abs(st.production) + rhs + 1e-300));
    }
    log.add("D >= kappa (micro^2 + pairing)", worst, 1.0, 1e-8);
}

void audit_holder_steps(const Equilibrium& eq, double beta, double k, double ell, int n_fields,
                        std::uint64_t seed, AuditLog& log) {
    FieldSampler sampler(seed);
    const double k1 = k, k2 = k + 2.0 * ell + 2.0;
    double worst_split = 1e300, worst_psi = 1e300, worst_hom = 1e300;
    for (int s = 0; s < n_fields; ++s) {
        auto f = sampler.velocity_field(eq);
        // split-semigroup step: ||f||_{k1}^2 <= ||f||_{k1-l}^{2(k2-k1)/(k2-k1+l)} ||f||_{k2}^{2l/(k2-k1+l)}
        {
            const double a = norm_mu_sq(eq, f, k1);
            const double b = norm_mu_sq(eq, f, k1 - ell);
            const double c = norm_mu_sq(eq, f, k2);
            const double e1 = (k2 - k1) / (k2 - k1 + ell);
            const double rhs = std::pow(b, e1) * std::pow(c, 1.0 - e1);
            worst_split = std::min(worst_split, (rhs - a) / (rhs + a));
        }
        // Psi chain: ||f|| <= ||f||_{-beta}^{k/(k+beta)} ||f||_k^{beta/(k+beta)}
        {
            const double a = norm_mu_sq(eq, f, 0.0);
            const double b = norm_mu_sq(eq, f, -beta);
            const double c = norm_mu_sq(eq, f, k);
            const double e1 = k / (k + beta);
            const double rhs = std::pow(b, e1) * std::pow(c, 1.0 - e1);
            worst_psi = std::min(worst_psi, (rhs - a) / (rhs + a));
        }
        // homogeneous interpolation with theta = k/(k+beta) on h = f/F
        {
            std::vector<double> h(eq.grid.n);
            for (int i = 0; i < eq.grid.n; ++i) h[i] = f[i] / eq.F[i];
            double htilde = 0.0;
            for (int i = 0; i < eq.grid.n; ++i) htilde += eq.grid.w[i] * eq.F[i] * h[i];
            double a = 0, b = 0, c = 0;
            for (int i = 0; i < eq.grid.n; ++i) {
                const double d = h[i] - htilde;
                const double base = eq.grid.w[i] * eq.F[i] * d * d;
                a += base;
                b += base * std::pow(eq.grid.av[i], -beta);
                c += base * std::pow(eq.grid.av[i], k);
            }
            const double theta = k / (k + beta);
            const double rhs = std::pow(b, theta) * std::pow(c, 1.0 - theta);
            worst_hom = std::min(worst_hom, (rhs - a) / (rhs + a));
        }
    }
    log.add("Holder: split-semigroup step", worst_split, 1.0, 1e-8);
    log.add("Holder: Psi chain", worst_psi, 1.0, 1e-8);
    log.add("Holder: homogeneous interpolation", worst_hom, 1.0, 1e-8);
}

void audit_absorption_bound(const Equilibrium& eq, double a, double big_r, double k2,
                            int n_fields, std::uint64_t seed, AuditLog& log) {
    FieldSampler sampler(seed);
    const auto avk2 = eq.grid.av_pow(k2);
    double worst = 1e300;
    const double cap = a * std::pow(1.0 + big_r * big_r, 0.25 * k2);
    for (int s = 0; s < n_fields; ++s) {
        auto f = sampler.velocity_field(eq);
        double lhs = 0.0;
        for (int i = 0; i < eq.grid.n; ++i) {
            if (std::abs(eq.grid.v[i]) >= big_r) continue;
            lhs += eq.grid.w[i] * avk2[i] * a * a * f[i] * f[i] / eq.F[i];
        }
        const double rhs = cap * cap * norm_mu_sq(eq, f, 0.0);
        worst = std::min(worst, (rhs - lhs) / (rhs + lhs + 1e-300));
    }
    log.add("||C f||_{k2} <= a <R>^{k2/2} ||f||", worst, 1.0, 1e-10);
}

void audit_nash(int d, double c_nash, int n_fields, std::uint64_t seed, AuditLog& log) {
    std::mt19937_64 gen(seed);
    std::normal_distribution<double> nd;
    std::uniform_real_distribution<double> ud(0.0, 1.0);
    double worst = 1e300;
    if (d == 1) {
        const int n = 768;
        const double len = 60.0, dx = len / n;
        for (int s = 0; s < n_fields; ++s) {
            std::vector<double> u(n, 0.0);
            const int nb = 1 + (int)(ud(gen) * 4);
            for (int b = 0; b < nb; ++b) {
                const double c = len * (0.25 + 0.5 * ud(gen));
                const double w = 2.0 * dx + 4.0 * ud(gen);
                const double amp = nd(gen);
                for (int i = 0; i < n; ++i) {
                    const double x = dx * i - c;
                    u[i] += amp * std::exp(-0.5 * x * x / (w * w));
                }
            }
            const double ratio = nash_ratio_1d(u, dx);
            if (ratio > 0) worst = std::min(worst, (c_nash - ratio) / c_nash);
        }
    } else {
        const int n = 64;
        const double len = 20.0, dx = len / n;
        for (int s = 0; s < n_fields; ++s) {
            std::vector<double> u((std::size_t)n * n, 0.0);
            const double cx = len * (0.3 + 0.4 * ud(gen)), cy = len * (0.3 + 0.4 * ud(gen));
            const double w = 2.0 * dx + 2.0 * ud(gen);
            const double amp = nd(gen);
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) {
                    const double x = dx * i - cx, y = dx * j - cy;
                    u[(std::size_t)i * n + j] += amp * std::exp(-0.5 * (x * x + y * y) / (w * w));
                }
            const double ratio = nash_ratio_2d(u, n, dx);
            if (ratio > 0) worst = std::min(worst, (c_nash - ratio) / c_nash);
        }
    }
    log.add("Nash inequality with certified constant", worst, 1.0, 1e-8);
}

void audit_centering(const Equilibrium& eq, double beta, int n_fields, std::uint64_t seed,
                     AuditLog& log) {
    FieldSampler sampler(seed);
    const auto& g = eq.grid;
    const auto avmb = g.av_pow(-beta);
    double nu_total = 0.0, xi_total = 0.0;
    for (int i = 0; i < g.n; ++i) {
        nu_total += g.w[i] * eq.F[i] * avmb[i];
        xi_total += g.w[i] * eq.F[i];
    }
    double worst = 1e300;
    for (int s = 0; s < n_fields; ++s) {
        auto h = sampler.smooth_profile(g);
        double hhat = 0.0, htilde = 0.0;
        for (int i = 0; i < g.n; ++i) {
            hhat += g.w[i] * eq.F[i] * avmb[i] * h[i];
            htilde += g.w[i] * eq.F[i] * h[i];
        }
        hhat /= nu_total;
        htilde /= xi_total;
        double a = 0, b = 0;
        for (int i = 0; i < g.n; ++i) {
            const double wnu = g.w[i] * eq.F[i] * avmb[i];
            a += wnu * (h[i] - htilde) * (h[i] - htilde);
            b += wnu * (h[i] - hhat) * (h[i] - hhat);
        }
        worst = std::min(worst, (a - b) / (a + b + 1e-300));
    }
    log.add("nu-variance minimality of the nu-average", worst, 1.0, 1e-12);
}

} // namespace hypoc
