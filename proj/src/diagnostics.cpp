#include "hypoc/diagnostics.hpp"

#include <cmath>
#include <complex>
#include <stdexcept>

namespace hypoc {

StepConstants step_constants(const Equilibrium& eq, const CollisionOperator& op,
                             double beta, double k, double c_micro) {
    StepConstants c;
    const auto& g = eq.grid;
    c.theta = 0.0;
    for (int i = 0; i < g.n; ++i) c.theta += g.w[i] * g.v[i] * g.v[i] * eq.F[i];
    c.c2 = moment_theta_k(eq, beta + 2.0) / c.theta;
    c.c4 = moment_theta_k(eq, beta + 4.0) / c.theta;
    c.theta_k = moment_theta_k(eq, k);
    c.theta_mbeta = moment_theta_k(eq, -beta);
    // Step-4 constant: ||L(vF)||_{L^2(<v>^beta dmu)} / sqrt(Theta), evaluated with
    // the discrete operator so the Cauchy-Schwarz chain is exact on the grid
    std::vector<double> vF(g.n);
    for (int i = 0; i < g.n; ++i) vF[i] = g.v[i] * eq.F[i];
    const auto LvF = op.apply(vF);
    double nrm = 0.0;
    for (int i = 0; i < g.n; ++i)
        nrm += g.w[i] * LvF[i] * LvF[i] * std::pow(g.av[i], beta) / eq.F[i];
    c.cf = std::sqrt(nrm / c.theta);
    c.c_micro = c_micro;
    return c;
}

double quadratic_form_min_eigenvalue(const StepConstants& c, double delta) {
    const double a = c.c_micro - delta * c.c2;
    const double b = -0.5 * delta * (c.c4 + c.cf);
    const double d = delta;
    const double tr = a + d, det = a * d - b * b;
    const double disc = std::sqrt(std::max(0.25 * tr * tr - det, 0.0));
    return 0.5 * tr - disc;
}

std::pair<double, double> choose_delta(const StepConstants& c) {
    // golden-section maximization of kappa(delta) on (0, delta_hi);
    // Q degenerates past delta = C/C2, so shrink the bracket accordingly
    double hi = std::min(1.0, c.c_micro / std::max(c.c2, 1e-300));
    if (!(hi > 0)) throw std::runtime_error("choose_delta: inconsistent constants (C <= 0)");
    double lo = 0.0;
    const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
    double x1 = hi - gr * (hi - lo), x2 = lo + gr * (hi - lo);
    double f1 = quadratic_form_min_eigenvalue(c, x1);
    double f2 = quadratic_form_min_eigenvalue(c, x2);
    for (int it = 0; it < 200; ++it) {
        if (f1 < f2) {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + gr * (hi - lo);
            f2 = quadratic_form_min_eigenvalue(c, x2);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - gr * (hi - lo);
            f1 = quadratic_form_min_eigenvalue(c, x1);
        }
    }
    const double delta = 0.5 * (x1 + x2);
    const double kappa = quadratic_form_min_eigenvalue(c, delta);
    if (!(kappa > 0))
        throw std::runtime_error("choose_delta: no admissible delta, constants inconsistent");
    return {delta, kappa};
}

Diagnostics::Diagnostics(const SpatialGrid& xg, const Equilibrium& eq, double beta, double k)
    : xg_(xg), eq_(eq), beta_(beta), k_(k), fx_(xg.n, xg.length) {
    const auto& g = eq_.grid;
    theta_ = 0.0;
    for (int i = 0; i < g.n; ++i) theta_ += g.w[i] * g.v[i] * g.v[i] * eq_.F[i];
    av_k_ = g.av_pow(k);
    av_mbeta_ = g.av_pow(-beta);
    sym_one_.resize(fx_.nh());
    for (int l = 0; l < fx_.nh(); ++l) sym_one_[l] = 1.0 / (1.0 + theta_ * fx_.xi(l) * fx_.xi(l));
}

std::vector<double> Diagnostics::rho(const DistributionField& f) const {
    std::vector<double> out(xg_.n, 0.0);
    const auto& g = eq_.grid;
#pragma omp parallel for schedule(static)
    for (int ix = 0; ix < xg_.n; ++ix) {
        double s = 0.0;
        for (int iv = 0; iv < f.nv; ++iv) s += g.w[iv] * f.at(iv, ix);
        out[ix] = s;
    }
    return out;
}

std::vector<double> Diagnostics::first_moment(const DistributionField& f) const {
    std::vector<double> out(xg_.n, 0.0);
    const auto& g = eq_.grid;
#pragma omp parallel for schedule(static)
    for (int ix = 0; ix < xg_.n; ++ix) {
        double s = 0.0;
        for (int iv = 0; iv < f.nv; ++iv) s += g.w[iv] * g.v[iv] * f.at(iv, ix);
        out[ix] = s;
    }
    return out;
}

std::vector<double> Diagnostics::second_moment(const DistributionField& f) const {
    std::vector<double> out(xg_.n, 0.0);
    const auto& g = eq_.grid;
#pragma omp parallel for schedule(static)
    for (int ix = 0; ix < xg_.n; ++ix) {
        double s = 0.0;
        for (int iv = 0; iv < f.nv; ++iv) s += g.w[iv] * g.v[iv] * g.v[iv] * f.at(iv, ix);
        out[ix] = s;
    }
    return out;
}

DistributionField Diagnostics::project_pi(const DistributionField& f) const {
    auto r = rho(f);
    DistributionField out = f;
#pragma omp parallel for schedule(static)
    for (int iv = 0; iv < f.nv; ++iv)
        for (int ix = 0; ix < f.nx; ++ix) out.at(iv, ix) = r[ix] * eq_.F[iv];
    return out;
}

std::vector<double> Diagnostics::solve_elliptic(const std::vector<double>& rho, double theta) const {
    std::vector<std::complex<double>> spec(fx_.nh());
    fx_.forward(rho.data(), spec.data());
    for (int l = 0; l < fx_.nh(); ++l)
        spec[l] /= (1.0 + theta * fx_.xi(l) * fx_.xi(l));
    std::vector<double> u(xg_.n);
    fx_.inverse(spec.data(), u.data());
    return u;
}

double Diagnostics::pairing_atpi(const std::vector<double>& rho, double theta) const {
    std::vector<std::complex<double>> spec(fx_.nh());
    fx_.forward(rho.data(), spec.data());
    double s = 0.0;
    for (int l = 0; l < fx_.nh(); ++l) {
        const double xi2 = fx_.xi(l) * fx_.xi(l);
        const double uhat2 = std::norm(spec[l]) / std::pow(1.0 + theta * xi2, 2);
        s += fx_.mult(l) * (theta * xi2 + theta * theta * xi2 * xi2) * uhat2;
    }
    return s * fx_.dx() / fx_.n();
}

std::vector<double> Diagnostics::a_weight(const DistributionField& f) const {
    auto m1 = first_moment(f);
    std::vector<std::complex<double>> spec(fx_.nh());
    fx_.forward(m1.data(), spec.data());
    for (int l = 0; l < fx_.nh(); ++l) {
        // w_hat = -i xi m1_hat / (1 + theta xi^2)
        const double xi = fx_.xi(l);
        spec[l] *= std::complex<double>(0.0, -xi) * sym_one_[l];
    }
    if (xg_.n % 2 == 0) spec[fx_.nh() - 1] = 0.0; // derivative kills the Nyquist cosine
    std::vector<double> w(xg_.n);
    fx_.inverse(spec.data(), w.data());
    return w;
}

DistributionField Diagnostics::apply_A(const DistributionField& f) const {
    auto w = a_weight(f);
    DistributionField out = f;
    for (int iv = 0; iv < f.nv; ++iv)
        for (int ix = 0; ix < f.nx; ++ix) out.at(iv, ix) = w[ix] * eq_.F[iv];
    return out;
}

DistributionField Diagnostics::apply_TA(const DistributionField& f) const {
    auto w = a_weight(f);
    // T(wF) = v dw/dx F, with the spectral derivative
    std::vector<std::complex<double>> spec(fx_.nh());
    fx_.forward(w.data(), spec.data());
    for (int l = 0; l < fx_.nh(); ++l) spec[l] *= std::complex<double>(0.0, fx_.xi(l));
    if (xg_.n % 2 == 0) spec[fx_.nh() - 1] = 0.0;
    std::vector<double> dw(xg_.n);
    fx_.inverse(spec.data(), dw.data());
    DistributionField out = f;
    const auto& g = eq_.grid;
    for (int iv = 0; iv < f.nv; ++iv)
        for (int ix = 0; ix < f.nx; ++ix) out.at(iv, ix) = g.v[iv] * dw[ix] * eq_.F[iv];
    return out;
}

double Diagnostics::norm0_sq(const DistributionField& f) const {
    return xg_.dx * chunked_sum((std::int64_t)f.nv * f.nx, [&](std::int64_t idx) {
        const int iv = (int)(idx / f.nx);
        const double x = f.values[idx];
        return eq_.grid.w[iv] * x * x / eq_.F[iv];
    });
}

double Diagnostics::norm_k_sq(const DistributionField& f) const {
    return xg_.dx * chunked_sum((std::int64_t)f.nv * f.nx, [&](std::int64_t idx) {
        const int iv = (int)(idx / f.nx);
        const double x = f.values[idx];
        return eq_.grid.w[iv] * av_k_[iv] * x * x / eq_.F[iv];
    });
}

double Diagnostics::micro_norm_sq(const DistributionField& f) const {
    auto r = rho(f);
    return xg_.dx * chunked_sum((std::int64_t)f.nv * f.nx, [&](std::int64_t idx) {
        const int iv = (int)(idx / f.nx);
        const int ix = (int)(idx % f.nx);
        const double x = f.values[idx] - r[ix] * eq_.F[iv];
        return eq_.grid.w[iv] * av_mbeta_[iv] * x * x / eq_.F[iv];
    });
}

double Diagnostics::column_dot(const std::vector<double>& a, const std::vector<double>& b) const {
    double s = 0.0;
    for (int ix = 0; ix < xg_.n; ++ix) s += a[ix] * b[ix];
    return s * xg_.dx;
}

double Diagnostics::entropy(const DistributionField& f, double delta) const {
    auto r = rho(f);
    auto w = a_weight(f);
    // <Af, f> = int w rho dx  (the velocity integral of F f / F collapses to rho)
    return 0.5 * norm0_sq(f) + delta * column_dot(w, r);
}

HypoState Diagnostics::evaluate(const DistributionField& f, const CollisionOperator& op,
                                double delta) const {
    HypoState st;
    st.t = f.time;
    const auto& g = eq_.grid;
    st.mass = xg_.dx * chunked_sum((std::int64_t)f.nv * f.nx, [&](std::int64_t idx) {
        return g.w[(int)(idx / f.nx)] * f.values[idx];
    });
    st.l1 = xg_.dx * chunked_sum((std::int64_t)f.nv * f.nx, [&](std::int64_t idx) {
        return g.w[(int)(idx / f.nx)] * std::abs(f.values[idx]);
    });
    st.norm0_sq = norm0_sq(f);
    st.norm_k_sq = norm_k_sq(f);
    auto r = rho(f);
    double rho2 = 0.0;
    for (int ix = 0; ix < xg_.n; ++ix) rho2 += r[ix] * r[ix];
    st.macro_sq = rho2 * xg_.dx; // ||Pi f||^2 = ||rho||^2 since int F^2/F = 1
    st.micro0_sq = st.norm0_sq - st.macro_sq;
    st.micro_sq = micro_norm_sq(f);
    st.pairing = pairing_atpi(r, theta_);

    // micro part, reused by three production terms
    DistributionField micro = f;
#pragma omp parallel for schedule(static)
    for (int iv = 0; iv < f.nv; ++iv)
        for (int ix = 0; ix < f.nx; ++ix) micro.at(iv, ix) -= r[ix] * eq_.F[iv];

    // T1 = -<Lf, f>: column dissipation sum
    st.term_l = xg_.dx * chunked_sum(f.nx, [&](std::int64_t ix) {
        std::vector<double> col(f.nv);
        for (int iv = 0; iv < f.nv; ++iv) col[iv] = f.at(iv, (int)ix);
        return op.dissipation(col.data());
    });

    // <AT(I-Pi)f, Pi f> = int w2 rho dx where
    // w2 - theta lap w2 = -d/dx m1(T micro) = -d^2/dx^2 m2(micro)
    {
        auto m2 = second_moment(micro);
        std::vector<std::complex<double>> spec(fx_.nh());
        fx_.forward(m2.data(), spec.data());
        std::vector<std::complex<double>> rspec(fx_.nh());
        fx_.forward(r.data(), rspec.data());
        double s = 0.0;
        for (int l = 0; l < fx_.nh(); ++l) {
            const double xi2 = fx_.xi(l) * fx_.xi(l);
            const std::complex<double> w2 = spec[l] * xi2 * sym_one_[l];
            s += fx_.mult(l) * std::real(w2 * std::conj(rspec[l]));
        }
        st.inner_at2 = s * fx_.dx() / fx_.n();
    }

    // <TA(I-Pi)f, (I-Pi)f> = int (dw/dx) m1(micro) dx
    {
        auto w = a_weight(micro);
        auto m1 = first_moment(micro);
        std::vector<std::complex<double>> wspec(fx_.nh()), mspec(fx_.nh());
        fx_.forward(w.data(), wspec.data());
        fx_.forward(m1.data(), mspec.data());
        double s = 0.0;
        for (int l = 0; l < fx_.nh(); ++l) {
            const std::complex<double> dw = wspec[l] * std::complex<double>(0.0, fx_.xi(l));
            s += fx_.mult(l) * std::real(dw * std::conj(mspec[l]));
        }
        st.inner_ta = s * fx_.dx() / fx_.n();
    }

    // <AL(I-Pi)f, Pi f>
    {
        DistributionField lm = micro;
#pragma omp parallel for schedule(static)
        for (int ix = 0; ix < f.nx; ++ix) {
            std::vector<double> col(f.nv), out(f.nv);
            for (int iv = 0; iv < f.nv; ++iv) col[iv] = micro.at(iv, ix);
            op.apply(col.data(), out.data());
            for (int iv = 0; iv < f.nv; ++iv) lm.at(iv, ix) = out[iv];
        }
        auto w = a_weight(lm);
        st.inner_al = column_dot(w, r);
    }

    st.production = st.term_l + delta * (st.pairing + st.inner_at2 - st.inner_ta - st.inner_al);
    st.entropy = 0.5 * st.norm0_sq + delta * column_dot(a_weight(f), r);
    return st;
}

double Diagnostics::wrap_correlation(const DistributionField& f) const {
    // density seen at the antipodal lag relative to the peak; for a spreading
    // Gaussian this reaches 0.01 exactly when the width hits L/6
    auto r = rho(f);
    const int n = xg_.n;
    int imax = 0;
    for (int ix = 1; ix < n; ++ix)
        if (r[ix] > r[imax]) imax = ix;
    const double peak = r[imax];
    if (!(peak > 0)) return 1.0;
    const double anti = std::max(r[(imax + n / 2) % n], 0.0);
    return anti / peak;
}

} // namespace hypoc
