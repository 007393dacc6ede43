#include "hypoc/spectral.hpp"

#include "hypoc/rng.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <cmath>
#include <stdexcept>

namespace hypoc {

namespace {

struct Tridiag {
    std::vector<double> diag, off; // off has size n-1
    int n() const { return (int)diag.size(); }

    void matvec(const double* x, double* y) const {
        const int m = n();
        for (int i = 0; i < m; ++i) {
            double s = diag[i] * x[i];
            if (i > 0) s += off[i - 1] * x[i - 1];
            if (i + 1 < m) s += off[i] * x[i + 1];
            y[i] = s;
        }
    }
};

// all eigenvalues, ascending (QL on the symmetric tridiagonal, values only)
std::vector<double> tridiag_eigenvalues(const Tridiag& t) {
    Eigen::Map<const Eigen::VectorXd> d(t.diag.data(), t.n());
    Eigen::Map<const Eigen::VectorXd> e(t.off.data(), t.n() - 1);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
    es.computeFromTridiagonal(d, e, Eigen::EigenvaluesOnly);
    if (es.info() != Eigen::Success) throw std::runtime_error("spectral: tridiagonal QL failed");
    return std::vector<double>(es.eigenvalues().data(), es.eigenvalues().data() + t.n());
}

// One-pass LU with partial pivoting for (T - sigma I) x = b (dgtsv-style).
// Returns false on a zero pivot.
bool tridiag_shifted_solve(const Tridiag& t, double sigma, std::vector<double> b,
                           std::vector<double>& x) {
    const int n = t.n();
    std::vector<double> dl(n, 0.0), d(n), du(n, 0.0), du2(n, 0.0);
    for (int i = 0; i < n; ++i) d[i] = t.diag[i] - sigma;
    for (int i = 0; i + 1 < n; ++i) {
        dl[i + 1] = t.off[i];
        du[i] = t.off[i];
    }
    for (int i = 0; i + 1 < n; ++i) {
        if (std::abs(d[i]) >= std::abs(dl[i + 1])) {
            if (d[i] == 0.0) return false;
            const double fact = dl[i + 1] / d[i];
            d[i + 1] -= fact * du[i];
            b[i + 1] -= fact * b[i];
        } else {
            const double fact = d[i] / dl[i + 1];
            d[i] = dl[i + 1];
            const double tmp = d[i + 1];
            d[i + 1] = du[i] - fact * tmp;
            if (i + 2 < n) {
                du2[i] = du[i + 1];
                du[i + 1] = -fact * du2[i];
            }
            du[i] = tmp;
            std::swap(b[i], b[i + 1]);
            b[i + 1] -= fact * b[i];
        }
    }
    if (d[n - 1] == 0.0) return false;
    x.assign(n, 0.0);
    x[n - 1] = b[n - 1] / d[n - 1];
    if (n > 1) x[n - 2] = (b[n - 2] - du[n - 2] * x[n - 1]) / d[n - 2];
    for (int i = n - 3; i >= 0; --i)
        x[i] = (b[i] - du[i] * x[i + 1] - du2[i] * x[i + 2]) / d[i];
    return true;
}

// inverse iteration for the eigenvector at an isolated eigenvalue lambda
std::vector<double> inverse_iteration(const Tridiag& t, double lambda) {
    const int n = t.n();
    std::vector<double> x(n);
    std::mt19937_64 gen(42);
    std::normal_distribution<double> nd;
    for (double& xi : x) xi = nd(gen);
    // small relative shift keeps the system nonsingular
    const double scale = std::abs(lambda) + 1.0;
    double sigma = lambda + 1e-11 * scale;
    for (int it = 0; it < 6; ++it) {
        std::vector<double> y;
        if (!tridiag_shifted_solve(t, sigma, x, y)) {
            sigma += 1e-10 * scale;
            continue;
        }
        double nrm = 0.0;
        for (double v : y) nrm += v * v;
        nrm = std::sqrt(nrm);
        if (!(nrm > 0) || !std::isfinite(nrm)) break;
        for (int i = 0; i < n; ++i) x[i] = y[i] / nrm;
    }
    return x;
}

double dot(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

// Generalized symmetric problem A h = lambda B h with B = diag(b) > 0,
// reduced to standard form via the diagonal scaling.
Tridiag standard_form(const Tridiag& a, const std::vector<double>& b) {
    Tridiag t;
    const int n = a.n();
    t.diag.resize(n);
    t.off.resize(n - 1);
    for (int i = 0; i < n; ++i) t.diag[i] = a.diag[i] / b[i];
    for (int i = 0; i + 1 < n; ++i) t.off[i] = a.off[i] / std::sqrt(b[i] * b[i + 1]);
    return t;
}

// Schrodinger-form matrices on the interior nodes (Dirichlet at the cutoff):
// stiffness faces 1/h plus the cell-weighted potential; B carries psi.
void schrodinger_matrices(const SchrodingerProblem& p, Tridiag& a, std::vector<double>& bdiag,
                          std::vector<double>& cellw) {
    const auto& g = p.grid;
    const int m = g.n - 2; // interior
    a.diag.assign(m, 0.0);
    a.off.assign(m - 1, 0.0);
    bdiag.assign(m, 0.0);
    cellw.assign(m, 0.0);
    for (int j = 0; j < m; ++j) {
        const int i = j + 1;
        const double hl = g.v[i] - g.v[i - 1];
        const double hr = g.v[i + 1] - g.v[i];
        const double cell = 0.5 * (hl + hr);
        cellw[j] = cell;
        a.diag[j] = 1.0 / hl + 1.0 / hr + cell * p.potential[i];
        if (j + 1 < m) a.off[j] = -1.0 / hr;
        bdiag[j] = cell * p.weight[i];
    }
}

// h-form matrices on the full grid: stiffness with geometric-mean face values
// of the xi density (identical to the discrete Fokker-Planck dissipation) and
// the <v>^{-beta}-weighted mass matrix. Constants span the exact kernel.
void hform_matrices(const VelocityGrid& g, const std::vector<double>& xi_density,
                    const std::vector<double>& weight, Tridiag& a, std::vector<double>& bdiag,
                    std::vector<double>& xiw) {
    const int n = g.n;
    a.diag.assign(n, 0.0);
    a.off.assign(n - 1, 0.0);
    for (int i = 0; i + 1 < n; ++i) {
        const double face = std::sqrt(xi_density[i] * xi_density[i + 1]) / g.face_dv(i);
        a.off[i] = -face;
        a.diag[i] += face;
        a.diag[i + 1] += face;
    }
    bdiag.assign(n, 0.0);
    xiw.assign(n, 0.0);
    for (int i = 0; i < n; ++i) {
        xiw[i] = g.w[i] * xi_density[i];
        bdiag[i] = xiw[i] * weight[i];
    }
}

// first excited generalized eigenvalue of the h-form (exact constant kernel)
double hform_second_eigenvalue(const Tridiag& a, const std::vector<double>& bdiag) {
    const Tridiag t = standard_form(a, bdiag);
    auto ev = tridiag_eigenvalues(t);
    return ev[1];
}

std::pair<double, std::vector<double>> hform_second_eigenpair(const Tridiag& a,
                                                              const std::vector<double>& bdiag) {
    const Tridiag t = standard_form(a, bdiag);
    auto ev = tridiag_eigenvalues(t);
    auto z = inverse_iteration(t, ev[1]);
    std::vector<double> h(z.size());
    for (std::size_t i = 0; i < z.size(); ++i) h[i] = z[i] / std::sqrt(bdiag[i]);
    return {ev[1], h};
}

// Smallest constrained eigenvalue (c^T h = 0) by bisection on the secular
// function s(lambda) = c^T (A - lambda B)^{-1} c, which increases from -inf
// toward the first pole the constraint can see. The exact kernel (constants)
// contributes the pole -|c0|^2/lambda; it is split off analytically so that
// the numerically perturbed kernel eigenvalue of the scaled matrix cannot
// flip the bracket. When s stays negative up to lambda_1 the constrained
// minimum coincides with lambda_1.
double hform_constrained_eigenvalue(const Tridiag& a, const std::vector<double>& bdiag,
                                    const std::vector<double>& c) {
    const int n = a.n();
    const Tridiag t = standard_form(a, bdiag);
    auto ev = tridiag_eigenvalues(t);
    const double lam1 = ev[1];
    std::vector<double> cs(n), z0(n);
    for (int i = 0; i < n; ++i) {
        cs[i] = c[i] / std::sqrt(bdiag[i]);
        z0[i] = std::sqrt(bdiag[i]); // exact kernel of t in scaled coordinates
    }
    const double nz = std::sqrt(dot(z0, z0));
    for (double& v : z0) v /= nz;
    const double c0 = dot(cs, z0);
    std::vector<double> chat = cs;
    for (int i = 0; i < n; ++i) chat[i] -= c0 * z0[i];
    auto secular = [&](double lam) {
        std::vector<double> x;
        double bulk = 0.0;
        if (tridiag_shifted_solve(t, lam, chat, x)) bulk = dot(chat, x);
        return bulk - c0 * c0 / lam;
    };
    double lo = 1e-8 * lam1, hi = lam1 * (1.0 - 1e-10);
    if (secular(lo) > 0) return lo;       // degenerate: constraint blind to the kernel
    if (secular(hi) < 0) return lam1;     // no zero below lambda_1
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (secular(mid) < 0)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

} // namespace

SchrodingerProblem build_schrodinger(double alpha, double beta, double R, int n, int dim) {
    if (!(alpha > 0) || alpha > 2.0) throw std::domain_error("build_schrodinger: alpha in (0,2]");
    if (beta < 0) throw std::domain_error("build_schrodinger: beta >= 0");
    if (dim != 1) throw std::invalid_argument("build_schrodinger: dim = 1 solves only");
    if (n % 2 == 0) ++n;
    SchrodingerProblem p;
    p.alpha = alpha;
    p.beta = beta;
    p.dim = dim;
    p.domain_R = R;
    p.n = n;
    p.grid = make_velocity_grid(n, R);
    p.potential.resize(n);
    p.weight.resize(n);
    p.w0.resize(n);
    p.xi_w.resize(n);
    for (int i = 0; i < n; ++i) {
        const double v = p.grid.v[i];
        const double av2 = 1.0 + v * v;
        const double grad2 = alpha * alpha * v * v * std::pow(av2, alpha - 2.0);
        const double lap = alpha * (dim * std::pow(av2, 0.5 * alpha - 1.0) +
                                    (alpha - 2.0) * v * v * std::pow(av2, 0.5 * alpha - 2.0));
        p.potential[i] = 0.25 * grad2 - 0.5 * lap;
        p.weight[i] = std::pow(p.grid.av[i], -beta);
        const double e = std::exp(-std::pow(p.grid.av[i], alpha));
        p.xi_w[i] = e;
        p.w0[i] = std::sqrt(e);
    }
    double z = 0.0, zb = 0.0;
    for (int i = 0; i < n; ++i) {
        z += p.grid.w[i] * p.xi_w[i];
        zb += p.grid.w[i] * p.xi_w[i] * p.weight[i];
    }
    p.c_alpha_beta = zb / z;
    return p;
}

double zero_mode_residual(const SchrodingerProblem& p) {
    const auto& g = p.grid;
    double num = 0.0, den = 0.0;
    for (int i = 1; i + 1 < g.n; ++i) {
        const double hl = g.v[i] - g.v[i - 1];
        const double hr = g.v[i + 1] - g.v[i];
        const double cell = 0.5 * (hl + hr);
        const double lap = ((p.w0[i + 1] - p.w0[i]) / hr - (p.w0[i] - p.w0[i - 1]) / hl) / cell;
        const double r = -lap + p.potential[i] * p.w0[i];
        num += cell * r * r;
        den += cell * p.w0[i] * p.w0[i];
    }
    return std::sqrt(num / den);
}

double schrodinger_eigenvalue(const SchrodingerProblem& p) {
    Tridiag a;
    std::vector<double> bdiag, cellw;
    schrodinger_matrices(p, a, bdiag, cellw);
    const Tridiag t = standard_form(a, bdiag);
    auto ev = tridiag_eigenvalues(t);

    // Ritz space from the lowest few states, with the exact zero mode deflated
    // in the B-inner product
    const int m = t.n();
    const int nev = std::min(6, m);
    std::vector<std::vector<double>> basis;
    for (int j = 0; j < nev; ++j) {
        // skip near-degenerate copies; inverse iteration handles isolated values
        if (j > 0 && std::abs(ev[j] - ev[j - 1]) < 1e-13 * (std::abs(ev[j]) + 1.0)) continue;
        basis.push_back(inverse_iteration(t, ev[j]));
    }
    // exact kernel vector in standard-form coordinates: z0 = B^{1/2} w0 (interior)
    std::vector<double> z0(m);
    for (int j = 0; j < m; ++j) z0[j] = std::sqrt(bdiag[j]) * p.w0[j + 1];
    double nz = std::sqrt(dot(z0, z0));
    for (double& v : z0) v /= nz;

    // orthonormalize {z0, basis...}; the deflated space is everything after z0
    std::vector<std::vector<double>> q;
    q.push_back(z0);
    for (auto& v : basis) {
        std::vector<double> u = v;
        for (const auto& e : q) {
            const double proj = dot(u, e);
            for (int i = 0; i < m; ++i) u[i] -= proj * e[i];
        }
        const double nu = std::sqrt(dot(u, u));
        if (nu < 1e-8) continue;
        for (double& x : u) x /= nu;
        q.push_back(u);
    }
    if (q.size() < 2) throw std::runtime_error("spectral: deflation left an empty space");
    // reduced problem on the deflated directions
    const int r = (int)q.size() - 1;
    Eigen::MatrixXd ared(r, r);
    std::vector<double> ty(m);
    std::vector<std::vector<double>> tq(r);
    for (int j = 0; j < r; ++j) {
        tq[j].resize(m);
        t.matvec(q[j + 1].data(), tq[j].data());
    }
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j) ared(i, j) = dot(q[i + 1], tq[j]);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(0.5 * (ared + ared.transpose()));
    return es.eigenvalues()(0);
}

double variational_c_star(const SchrodingerProblem& p) {
    Tridiag a;
    std::vector<double> bdiag, xiw;
    hform_matrices(p.grid, p.xi_w, p.weight, a, bdiag, xiw);
    return hform_second_eigenvalue(a, bdiag);
}

std::pair<double, std::vector<double>> variational_eigenpair(const SchrodingerProblem& p) {
    Tridiag a;
    std::vector<double> bdiag, xiw;
    hform_matrices(p.grid, p.xi_w, p.weight, a, bdiag, xiw);
    return hform_second_eigenpair(a, bdiag);
}

double variational_c_corollary(const SchrodingerProblem& p) {
    Tridiag a;
    std::vector<double> bdiag, xiw;
    hform_matrices(p.grid, p.xi_w, p.weight, a, bdiag, xiw);
    // psi^{-1} integrable against d xi: the quadrature must have a negligible
    // boundary contribution, which holds for stretched-exponential tails
    double inv = 0.0;
    for (int i = 0; i < p.grid.n; ++i) inv += xiw[i] / p.weight[i];
    const double edge = xiw[0] / p.weight[0];
    if (!(edge <= 1e-8 * inv))
        throw std::runtime_error("c_corollary: psi^{-1} quadrature not resolved on this domain");
    return hform_constrained_eigenvalue(a, bdiag, xiw);
}

double sigma0_estimate(const SchrodingerProblem& p, double r_frac) {
    const auto& g = p.grid;
    double q = 1e300;
    bool seen = false;
    for (int i = 0; i < g.n; ++i) {
        if (std::abs(g.v[i]) < r_frac * p.domain_R) continue;
        q = std::min(q, p.potential[i] / p.weight[i]);
        seen = true;
    }
    if (!seen) throw std::invalid_argument("sigma0_estimate: empty tail window");
    return q;
}

SpectralResult compute_c_star(double alpha, double beta, double R, int n) {
    SpectralResult res;
    const auto base = build_schrodinger(alpha, beta, R, n);
    res.c_alpha_beta = base.c_alpha_beta;
    res.c_star = schrodinger_eigenvalue(base) * base.c_alpha_beta;
    res.c_corollary = variational_c_corollary(base) * base.c_alpha_beta;
    res.c_micro_weighted = res.c_corollary / base.c_alpha_beta;
    res.sigma0 = sigma0_estimate(base) * base.c_alpha_beta;
    res.domain_R = R;
    res.n = base.n;
    double spread = 0.0;
    for (double rr : {R, 2.0 * R}) {
        for (int nn : {n, 2 * n}) {
            if (rr == R && nn == n) continue;
            const auto p = build_schrodinger(alpha, beta, rr, nn);
            const double lam = schrodinger_eigenvalue(p) * p.c_alpha_beta;
            spread = std::max(spread, std::abs(lam - res.c_star) / res.c_star);
        }
    }
    res.spread = spread;
    res.converged = spread <= 0.02;
    return res;
}

double c_star_on_grid(const Equilibrium& eq, double beta) {
    Tridiag a;
    std::vector<double> bdiag, xiw;
    hform_matrices(eq.grid, eq.F, eq.grid.av_pow(-beta), a, bdiag, xiw);
    return hform_second_eigenvalue(a, bdiag);
}

double corollary_on_grid(const Equilibrium& eq, double beta) {
    Tridiag a;
    std::vector<double> bdiag, xiw;
    hform_matrices(eq.grid, eq.F, eq.grid.av_pow(-beta), a, bdiag, xiw);
    return hform_constrained_eigenvalue(a, bdiag, xiw);
}

RayleighAuditResult rayleigh_audit(const SchrodingerProblem& p, double c, int n_samples,
                                   std::uint64_t seed) {
    Tridiag a;
    std::vector<double> bdiag, xiw;
    hform_matrices(p.grid, p.xi_w, p.weight, a, bdiag, xiw);
    double nu_total = 0.0;
    for (double x : bdiag) nu_total += x;

    auto quotient = [&](const std::vector<double>& h) {
        // numerator: form value; denominator: nu-variance around the nu-average
        std::vector<double> ah(h.size());
        a.matvec(h.data(), ah.data());
        const double num = dot(h, ah);
        double hbar = 0.0;
        for (std::size_t i = 0; i < h.size(); ++i) hbar += bdiag[i] * h[i];
        hbar /= nu_total;
        double den = 0.0;
        for (std::size_t i = 0; i < h.size(); ++i) {
            const double d = h[i] - hbar;
            den += bdiag[i] * d * d;
        }
        return num / den;
    };

    RayleighAuditResult out;
    FieldSampler sampler(seed);
    double worst = 1e300;
    for (int s = 0; s < n_samples; ++s) {
        auto h = sampler.smooth_profile(p.grid, 8);
        worst = std::min(worst, (quotient(h) - c) / c);
    }
    out.min_margin_rel = worst;
    out.tight_quotient = quotient(variational_eigenpair(p).second);
    return out;
}

} // namespace hypoc
