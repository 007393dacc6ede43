#include "hypoc/collision.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace hypoc {

void validate_spec(const CollisionSpec& spec, double alpha, int dim) {
    if (spec.kind == CollisionKind::fokker_planck) {
        const double required = 2.0 * (1.0 - alpha);
        if (std::abs(spec.beta - required) > 1e-12)
            throw std::invalid_argument(
                "collision: fokker_planck requires beta = 2(1-alpha) = " +
                std::to_string(required) + ", got beta = " + std::to_string(spec.beta));
        return;
    }
    if (!(spec.beta > 0)) throw std::invalid_argument("collision: beta must be positive");
    if (spec.gamma < 0 || spec.gamma > spec.beta || spec.gamma >= dim)
        throw std::invalid_argument("collision: need 0 <= gamma <= beta and gamma < d");
    if (spec.family == KernelFamily::boltzmann && !(spec.beta < dim))
        throw std::invalid_argument("collision: boltzmann kernel needs beta < d");
}

CollisionOperator::CollisionOperator(CollisionSpec spec, const Equilibrium& eq)
    : spec_(spec), eq_(eq), n_(eq.grid.n) {
    validate_spec(spec_, eq_.alpha, eq_.dim);
    const auto& g = eq_.grid;
    m_.resize(n_);
    for (int i = 0; i < n_; ++i) m_[i] = g.w[i] / eq_.F[i];

    if (kind() == CollisionKind::fokker_planck) {
        // flux form with geometric-mean face values: exact kernel at f = F and
        // exact mass conservation with no-flux boundaries
        kdiag_.assign(n_, 0.0);
        koff_.assign(n_ - 1, 0.0);
        for (int i = 0; i + 1 < n_; ++i) {
            const double face = std::sqrt(eq_.F[i] * eq_.F[i + 1]) / g.face_dv(i);
            koff_[i] = -face / (eq_.F[i] * eq_.F[i + 1]);
            kdiag_[i] += face / (eq_.F[i] * eq_.F[i]);
            kdiag_[i + 1] += face / (eq_.F[i + 1] * eq_.F[i + 1]);
        }
        return;
    }

    if (n_ > 2048)
        throw std::invalid_argument("collision: scattering matrices are materialized only for n <= 2048");
    // cell-averaged |s|^{-beta} over one cell, used on the boltzmann diagonal
    diag_cell_.assign(n_, 0.0);
    if (spec_.family == KernelFamily::boltzmann) {
        for (int i = 0; i < n_; ++i) {
            const double left = (i > 0) ? 0.5 * g.face_dv(i - 1) : 0.5 * g.face_dv(i);
            const double right = (i + 1 < n_) ? 0.5 * g.face_dv(i) : 0.5 * g.face_dv(i - 1);
            const double half = 0.5 * (left + right);
            diag_cell_[i] = std::pow(half, -spec_.beta) / (1.0 - spec_.beta);
        }
    }
    nu2_.assign(n_, 0.0);
    for (int i = 0; i < n_; ++i) {
        double s = 0.0;
        for (int j = 0; j < n_; ++j) s += g.w[j] * kernel(i, j) * eq_.F[j];
        nu2_[i] = s;
    }
    kdense_.resize(n_, n_);
    for (int i = 0; i < n_; ++i) {
        for (int j = 0; j < n_; ++j) {
            if (i == j) continue;
            kdense_(i, j) = -g.w[i] * g.w[j] * kernel(i, j);
        }
        kdense_(i, i) = g.w[i] * nu2_[i] / eq_.F[i] - g.w[i] * g.w[i] * kernel(i, i);
    }
    // grid-fitted H2 constants for the boltzmann family (exact for separable)
    if (spec_.family == KernelFamily::boltzmann) {
        double lo = 1e300, hi = 0.0;
        for (int i = 0; i < n_; ++i)
            for (int j = 0; j < n_; ++j) {
                const double b = kernel(i, j);
                lo = std::min(lo, b * std::pow(g.av[i] * g.av[j], spec_.beta));
                if (i != j) {
                    const double dv = std::abs(g.v[i] - g.v[j]);
                    const double cap = std::min(std::pow(dv, -spec_.beta), std::pow(dv, -spec_.gamma));
                    hi = std::max(hi, b / cap);
                }
            }
        spec_.b_lower = lo;
        spec_.b_upper = hi;
    }
}

double CollisionOperator::kernel(int i, int j) const {
    const auto& g = eq_.grid;
    if (spec_.family == KernelFamily::separable)
        return std::pow(g.av[i], -spec_.beta) * std::pow(g.av[j], -spec_.beta);
    if (i == j) return diag_cell_[i];
    return std::pow(std::abs(g.v[i] - g.v[j]), -spec_.beta);
}

void CollisionOperator::apply(const double* f, double* lf) const {
    if (kind() == CollisionKind::fokker_planck) {
        for (int i = 0; i < n_; ++i) {
            double s = kdiag_[i] * f[i];
            if (i > 0) s += koff_[i - 1] * f[i - 1];
            if (i + 1 < n_) s += koff_[i] * f[i + 1];
            lf[i] = -s / m_[i];
        }
        return;
    }
    Eigen::Map<const Eigen::VectorXd> x(f, n_);
    Eigen::Map<Eigen::VectorXd> y(lf, n_);
    y.noalias() = kdense_.selfadjointView<Eigen::Lower>() * x;
    for (int i = 0; i < n_; ++i) lf[i] = -lf[i] / m_[i];
}

std::vector<double> CollisionOperator::apply(const std::vector<double>& f) const {
    if ((int)f.size() != n_) throw std::invalid_argument("collision: field size mismatch");
    std::vector<double> out(n_);
    apply(f.data(), out.data());
    return out;
}

double CollisionOperator::dissipation(const double* f) const {
    if (kind() == CollisionKind::fokker_planck) {
        double s = 0.0;
        for (int i = 0; i < n_; ++i) {
            s += kdiag_[i] * f[i] * f[i];
            if (i + 1 < n_) s += 2.0 * koff_[i] * f[i] * f[i + 1];
        }
        return s;
    }
    Eigen::Map<const Eigen::VectorXd> x(f, n_);
    return x.dot(kdense_.selfadjointView<Eigen::Lower>() * x);
}

double CollisionOperator::pairing_mu(const double* f, const double* g) const {
    std::vector<double> lf(n_);
    apply(f, lf.data());
    double s = 0.0;
    for (int i = 0; i < n_; ++i) s += m_[i] * lf[i] * g[i];
    return s;
}

Nu2Fit CollisionOperator::nu2_profile() const {
    if (kind() != CollisionKind::scattering)
        throw std::logic_error("nu2_profile: scattering operators only");
    Nu2Fit fit;
    fit.nu2 = nu2_;
    double lo = 1e300, hi = 0.0;
    for (int i = 0; i < n_; ++i) {
        const double scaled = nu2_[i] * std::pow(eq_.grid.av[i], spec_.beta);
        lo = std::min(lo, scaled);
        hi = std::max(hi, scaled);
    }
    fit.nu_lower = lo;
    fit.nu_upper = hi;
    return fit;
}

DriftConstants CollisionOperator::drift_constants(double k) const {
    if (!(k > 0)) throw std::invalid_argument("drift_constants: k must be positive");
    DriftConstants dc;
    const double alpha = eq_.alpha;
    const int d = eq_.dim;
    if (kind() == CollisionKind::fokker_planck) {
        dc.c_k = std::abs(k - 2.0) + std::abs(d + k - 2.0) + alpha;
        dc.a_k = dc.c_k * k / 2.0;
        dc.b_k = alpha * k / 4.0;
        dc.ell = 2.0 - alpha;
        dc.R_k = std::pow(2.0 * dc.c_k / alpha, 1.0 / alpha);
        return dc;
    }
    // scattering: a_k is the tightest grid constant with
    // int b(v',v) <v'>^k F' dv' <= 2 a_k <v>^{-beta}
    const auto& g = eq_.grid;
    double a_k = 0.0;
    for (int i = 0; i < n_; ++i) {
        double s = 0.0;
        for (int j = 0; j < n_; ++j)
            s += g.w[j] * kernel(j, i) * std::pow(g.av[j], k) * eq_.F[j];
        a_k = std::max(a_k, 0.5 * s * std::pow(g.av[i], spec_.beta));
    }
    const auto fit = nu2_profile();
    dc.c_k = 0.0;
    dc.a_k = a_k;
    dc.b_k = fit.nu_lower / 4.0;
    dc.ell = spec_.beta;
    dc.R_k = std::pow(4.0 * a_k / fit.nu_lower, 1.0 / k);
    return dc;
}

double CollisionOperator::h1_residual() const {
    if (kind() != CollisionKind::scattering) return 0.0;
    const auto& g = eq_.grid;
    double worst = 0.0;
    for (int i = 0; i < n_; ++i) {
        double s = 0.0;
        for (int j = 0; j < n_; ++j) s += g.w[j] * (kernel(i, j) - kernel(j, i)) * eq_.F[j];
        worst = std::max(worst, std::abs(s));
    }
    return worst;
}

double CollisionOperator::micro_coercivity() const {
    if (kind() != CollisionKind::scattering)
        throw std::logic_error("micro_coercivity: closed formula applies to scattering only");
    return 0.5 * spec_.b_lower / moment_theta_k(eq_, spec_.beta);
}

double CollisionOperator::effective_diffusivity() const {
    const auto& g = eq_.grid;
    if (kind() == CollisionKind::fokker_planck) {
        // D = int G^2 / F dv with G(v) = int_{-inf}^{v} s F(s) ds; accumulate
        // from the nearest edge so G decays with F instead of drowning in the
        // cancellation noise of the full odd moment
        std::vector<double> G(n_, 0.0);
        double acc = 0.0;
        for (int i = 0; i < n_ && g.v[i] <= 0.0; ++i) {
            acc += g.w[i] * g.v[i] * eq_.F[i];
            G[i] = acc;
        }
        acc = 0.0;
        for (int i = n_ - 1; i >= 0 && g.v[i] > 0.0; --i) {
            acc -= g.w[i] * g.v[i] * eq_.F[i];
            G[i] = acc;
        }
        double d = 0.0;
        for (int i = 0; i < n_; ++i) d += g.w[i] * G[i] * G[i] / eq_.F[i];
        return d;
    }
    // conjugate gradients on K q = M (vF); the right side is odd, hence
    // orthogonal to the kernel direction F
    std::vector<double> rhs(n_), q(n_, 0.0), r(n_), p(n_), kp(n_);
    for (int i = 0; i < n_; ++i) rhs[i] = g.w[i] * g.v[i];
    r = rhs;
    p = r;
    double rr = 0.0;
    for (int i = 0; i < n_; ++i) rr += r[i] * r[i];
    const double rr0 = rr;
    for (int it = 0; it < 500 && rr > 1e-24 * rr0; ++it) {
        Eigen::Map<const Eigen::VectorXd> pv(p.data(), n_);
        Eigen::Map<Eigen::VectorXd> kpv(kp.data(), n_);
        kpv.noalias() = kdense_.selfadjointView<Eigen::Lower>() * pv;
        double pkp = 0.0;
        for (int i = 0; i < n_; ++i) pkp += p[i] * kp[i];
        const double a = rr / pkp;
        double rr_new = 0.0;
        for (int i = 0; i < n_; ++i) {
            q[i] += a * p[i];
            r[i] -= a * kp[i];
            rr_new += r[i] * r[i];
        }
        const double b = rr_new / rr;
        rr = rr_new;
        for (int i = 0; i < n_; ++i) p[i] = r[i] + b * p[i];
    }
    double d = 0.0;
    for (int i = 0; i < n_; ++i) d += g.w[i] * g.v[i] * q[i];
    return d;
}

ImplicitFactor factor_implicit(const CollisionOperator& op, double c,
                               const std::vector<double>* absorb) {
    const int n = op.size();
    const auto& m = op.mu_weight();
    ImplicitFactor fac;
    fac.c = c;
    fac.dense = op.dense();
    if (!fac.dense) {
        // LDL^T of the SPD tridiagonal M + cK (+ absorption)
        std::vector<double> diag(n), off(n - 1);
        for (int i = 0; i < n; ++i) {
            diag[i] = m[i] + c * op.tridiag_diag()[i];
            if (absorb) diag[i] += c * m[i] * (*absorb)[i];
        }
        for (int i = 0; i + 1 < n; ++i) off[i] = c * op.tridiag_off()[i];
        fac.d.resize(n);
        fac.l.resize(n - 1);
        fac.d[0] = diag[0];
        for (int i = 1; i < n; ++i) {
            fac.l[i - 1] = off[i - 1] / fac.d[i - 1];
            fac.d[i] = diag[i] - fac.l[i - 1] * off[i - 1];
        }
        return fac;
    }
    Eigen::MatrixXd a = c * op.dense_form();
    for (int i = 0; i < n; ++i) {
        a(i, i) += m[i];
        if (absorb) a(i, i) += c * m[i] * (*absorb)[i];
    }
    fac.llt.compute(a);
    if (fac.llt.info() != Eigen::Success)
        throw std::runtime_error("collision: implicit-step factorization failed");
    return fac;
}

void solve_implicit(const CollisionOperator& op, const ImplicitFactor& fac,
                    const double* r, double* x) {
    const int n = op.size();
    const auto& m = op.mu_weight();
    if (!fac.dense) {
        x[0] = m[0] * r[0];
        for (int i = 1; i < n; ++i) x[i] = m[i] * r[i] - fac.l[i - 1] * x[i - 1];
        x[n - 1] /= fac.d[n - 1];
        for (int i = n - 2; i >= 0; --i) x[i] = x[i] / fac.d[i] - fac.l[i] * x[i + 1];
        return;
    }
    Eigen::VectorXd rhs(n);
    for (int i = 0; i < n; ++i) rhs[i] = m[i] * r[i];
    Eigen::Map<Eigen::VectorXd> out(x, n);
    out = fac.llt.solve(rhs);
}

} // namespace hypoc
