#include "hypoc/homogeneous.hpp"

#include "hypoc/rng.hpp"

#include <cmath>
#include <stdexcept>

namespace hypoc {

double algebraic_bound(double y0, double kk_const, double c_const, double beta, double k,
                       double t) {
    const double e = beta / k;
    return std::pow(std::pow(y0, -e) + 2.0 * beta * c_const * t / (k * std::pow(kk_const, e)),
                    -1.0 / e);
}

HomogeneousRun run_homogeneous(std::shared_ptr<const CollisionOperator> op,
                               std::vector<double> g0, double k, double c_wp, double kk_moment,
                               SolverConfig cfg) {
    if (op->kind() != CollisionKind::fokker_planck)
        throw std::invalid_argument("run_homogeneous: Fokker-Planck relaxation only");
    const Equilibrium& eq = op->eq();
    const auto& g = eq.grid;
    const int n = g.n;
    if ((int)g0.size() != n) throw std::invalid_argument("run_homogeneous: size mismatch");
    for (double x : g0)
        if (x < 0) throw std::invalid_argument("run_homogeneous: nonnegative data required");

    HomogeneousRun out;
    const auto avk = g.av_pow(k);

    double mass0 = 0.0, nk0 = 0.0;
    for (int i = 0; i < n; ++i) {
        mass0 += g.w[i] * g0[i];
        nk0 += g.w[i] * avk[i] * g0[i] * g0[i] / eq.F[i];
    }
    // K = K_k^2 ||g0||^2_{L2(<v>^k dmu)} + Theta_k (int g0 dv)^2
    out.kk_const = kk_moment * kk_moment * nk0 + moment_theta_k(eq, k) * mass0 * mass0;

    auto y_of = [&](const std::vector<double>& gv) {
        double s = 0.0;
        for (int i = 0; i < n; ++i) {
            const double d = gv[i] - mass0 * eq.F[i];
            s += g.w[i] * d * d / eq.F[i];
        }
        return s;
    };

    out.y0 = y_of(g0);
    const double c = (cfg.scheme == CollisionScheme::crank_nicolson) ? 0.5 * cfg.dt : cfg.dt;
    const auto fac = factor_implicit(*op, c);
    std::vector<double> cur = g0, rhs(n), nxt(n);
    const long nsteps = std::lround(cfg.t_end / cfg.dt);
    double prev_y = 1e300;
    double min_margin = 1e300;
    auto record = [&](double t, const std::vector<double>& gv) {
        const double y = y_of(gv);
        double m = 0.0, nk = 0.0;
        for (int i = 0; i < n; ++i) {
            m += g.w[i] * gv[i];
            nk += g.w[i] * avk[i] * gv[i] * gv[i] / eq.F[i];
        }
        out.t.push_back(t);
        out.y.push_back(y);
        out.norm_k_sq.push_back(nk);
        out.mass.push_back(m);
        out.dissipation.push_back(op->dissipation(gv.data()));
        const double b = algebraic_bound(out.y0, out.kk_const, c_wp, op->spec().beta, k, t);
        out.bound.push_back(b);
        min_margin = std::min(min_margin, (b - y) / out.y0);
        if (y > prev_y * (1.0 + 1e-12)) out.y_monotone = false;
        prev_y = y;
        if (std::abs(m - mass0) > 1e-11 * std::abs(mass0)) out.mass_conserved = false;
    };
    record(0.0, cur);
    for (long s = 1; s <= nsteps; ++s) {
        if (cfg.scheme == CollisionScheme::crank_nicolson) {
            op->apply(cur.data(), rhs.data());
            for (int i = 0; i < n; ++i) rhs[i] = cur[i] + c * rhs[i];
            solve_implicit(*op, fac, rhs.data(), nxt.data());
        } else {
            solve_implicit(*op, fac, cur.data(), nxt.data());
        }
        cur.swap(nxt);
        if (s % cfg.output_every == 0 || s == nsteps) record(s * cfg.dt, cur);
    }
    out.min_bound_margin = min_margin;
    return out;
}

std::vector<WeakPoincareResult> weak_poincare_audit(const Equilibrium& eq, double beta,
                                                    double c_wp, const std::vector<double>& etas,
                                                    int samples, std::uint64_t seed) {
    const auto& g = eq.grid;
    const int n = g.n;
    std::vector<WeakPoincareResult> results;
    FieldSampler sampler(seed);
    // pre-draw the sample profiles so every eta sees the same h's
    std::vector<std::vector<double>> hs(samples);
    for (auto& h : hs) h = sampler.smooth_profile(g, 8);

    for (double eta : etas) {
        if (!(eta > 0) || !(eta < beta))
            throw std::invalid_argument("weak_poincare_audit: eta must lie in (0, beta)");
        WeakPoincareResult r;
        r.eta = eta;
        r.tau = eta / (beta - eta); // (tau+1)/tau = beta/eta
        const double theta_bt = moment_theta_k(eq, beta * r.tau);
        r.c_tau = std::pow(1.0 / c_wp, r.tau / (1.0 + r.tau)) *
                  std::pow(theta_bt, 1.0 / (1.0 + r.tau));
        double worst = 1e300;
        for (const auto& h : hs) {
            double htilde = 0.0;
            for (int i = 0; i < n; ++i) htilde += g.w[i] * eq.F[i] * h[i];
            double var = 0.0, grad = 0.0, sup = 0.0;
            for (int i = 0; i < n; ++i) {
                const double d = h[i] - htilde;
                var += g.w[i] * eq.F[i] * d * d;
                sup = std::max(sup, std::abs(d));
            }
            for (int i = 0; i + 1 < n; ++i) {
                const double dh = (h[i + 1] - h[i]);
                grad += std::sqrt(eq.F[i] * eq.F[i + 1]) / g.face_dv(i) * dh * dh;
            }
            const double rhs = r.c_tau * std::pow(grad, r.tau / (1.0 + r.tau)) *
                               std::pow(sup * sup, 1.0 / (1.0 + r.tau));
            worst = std::min(worst, (rhs - var) / (rhs + var + 1e-300));
        }
        r.min_margin = worst;
        results.push_back(r);
    }
    return results;
}

} // namespace hypoc
