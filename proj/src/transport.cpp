#include "hypoc/transport.hpp"

#include <cmath>
#include <complex>
#include <stdexcept>

namespace hypoc {

Advector::Advector(const SpatialGrid& xg, const VelocityGrid& vg)
    : xg_(xg), vg_(vg), fx_(xg.n, xg.length) {}

const std::vector<double>& Advector::phase_table(double dt) const {
    if (dt == cached_dt_ && !table_.empty()) return table_;
    const int nh = fx_.nh();
    table_.assign((std::size_t)2 * nh * vg_.n, 0.0);
    const int nv = vg_.n;
#pragma omp parallel for schedule(static)
    for (int iv = 0; iv < nv; ++iv) {
        double* row = table_.data() + (std::size_t)2 * nh * iv;
        const double shift = vg_.v[iv] * dt;
        for (int l = 0; l < nh; ++l) {
            const double ph = fx_.xi(l) * shift;
            row[2 * l] = std::cos(ph);
            row[2 * l + 1] = std::sin(ph);
        }
    }
    cached_dt_ = dt;
    return table_;
}

void Advector::advance(DistributionField& f, double dt) const {
    if (f.nx != xg_.n || f.nv != vg_.n) throw std::invalid_argument("advect: grid mismatch");
    if (dt == 0.0) return;
    const auto& tab = phase_table(dt);
    const int nh = fx_.nh();
    const int nv = vg_.n;
    const bool even = (xg_.n % 2 == 0);
#pragma omp parallel
    {
        std::vector<std::complex<double>> spec(nh);
#pragma omp for schedule(static)
        for (int iv = 0; iv < nv; ++iv) {
            double* row = f.row(iv);
            fx_.forward(row, spec.data());
            const double* ph = tab.data() + (std::size_t)2 * nh * iv;
            const int lmax = even ? nh - 1 : nh;
            for (int l = 0; l < lmax; ++l) {
                // translation by v dt: multiply mode l by e^{-i xi_l v dt}
                const std::complex<double> rot(ph[2 * l], -ph[2 * l + 1]);
                spec[l] *= rot;
            }
            // the Nyquist mode of an even grid is kept as a pure cosine
            if (even) spec[nh - 1] = spec[nh - 1].real() * ph[2 * (nh - 1)];
            fx_.inverse(spec.data(), row);
        }
    }
}

DistributionField advect(const DistributionField& f, const SpatialGrid& xg,
                         const VelocityGrid& vg, double dt) {
    Advector a(xg, vg);
    DistributionField out = f;
    a.advance(out, dt);
    return out;
}

KineticStepper::KineticStepper(const SpatialGrid& xg, std::shared_ptr<const CollisionOperator> op,
                               SolverConfig cfg)
    : xg_(xg), op_(std::move(op)), cfg_(cfg), adv_(xg, op_->eq().grid) {
    if (!(cfg_.dt > 0)) throw std::invalid_argument("solver: dt must be positive");
    if (cfg_.t_end < cfg_.dt) throw std::invalid_argument("solver: t_end must be >= dt");
}

void KineticStepper::set_absorption(double a, double R) {
    const auto& g = op_->eq().grid;
    absorb_.assign(g.n, 0.0);
    for (int i = 0; i < g.n; ++i)
        if (std::abs(g.v[i]) < R) absorb_[i] = a;
    factor_dt_ = 0.0; // invalidate
}

const ImplicitFactor& KineticStepper::factor_for(double dt) {
    const double c = (cfg_.scheme == CollisionScheme::crank_nicolson) ? 0.5 * dt : dt;
    if (!factor_ || factor_dt_ != c) {
        factor_ = std::make_unique<ImplicitFactor>(
            factor_implicit(*op_, c, absorb_.empty() ? nullptr : &absorb_));
        factor_dt_ = c;
    }
    return *factor_;
}

void KineticStepper::collide(DistributionField& f, double dt) {
    const auto& fac = factor_for(dt);
    const int nx = f.nx, nv = f.nv;
    const bool cn = (cfg_.scheme == CollisionScheme::crank_nicolson);
    const CollisionOperator& op = *op_;
#pragma omp parallel
    {
        std::vector<double> col(nv), rhs(nv), out(nv);
#pragma omp for schedule(static)
        for (int ix = 0; ix < nx; ++ix) {
            for (int iv = 0; iv < nv; ++iv) col[iv] = f.at(iv, ix);
            if (cn) {
                // (M + c K') f+ = (M - c K') f with K' = K + absorption
                op.apply(col.data(), rhs.data());
                const double c = 0.5 * dt;
                for (int iv = 0; iv < nv; ++iv) {
                    double lf = rhs[iv];
                    if (!absorb_.empty()) lf -= absorb_[iv] * col[iv];
                    rhs[iv] = col[iv] + c * lf;
                }
                solve_implicit(op, fac, rhs.data(), out.data());
            } else {
                solve_implicit(op, fac, col.data(), out.data());
            }
            for (int iv = 0; iv < nv; ++iv) f.at(iv, ix) = out[iv];
        }
    }
}

void KineticStepper::step(DistributionField& f) {
    const double dt = cfg_.dt;
    if (cfg_.splitting == Splitting::strang) {
        adv_.advance(f, 0.5 * dt);
        collide(f, dt);
        adv_.advance(f, 0.5 * dt);
    } else {
        adv_.advance(f, dt);
        collide(f, dt);
    }
    f.time += dt;
}

void run(KineticStepper& stepper, DistributionField& f, double t_end, int output_every,
         const RunHook& hook) {
    if (hook) hook(f, 0);
    const double dt = stepper.config().dt;
    const long nsteps = std::lround(t_end / dt);
    for (long s = 1; s <= nsteps; ++s) {
        stepper.step(f);
        if (hook && (s % output_every == 0 || s == nsteps)) hook(f, (int)s);
    }
}

} // namespace hypoc
