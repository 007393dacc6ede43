#include "hypoc/decay.hpp"

#include "hypoc/rng.hpp"

#include <cmath>
#include <stdexcept>

namespace hypoc {

double nash_ratio_1d(const std::vector<double>& u, double dx) {
    const int n = (int)u.size();
    double l2 = 0, l1 = 0, grad = 0;
    for (int i = 0; i < n; ++i) {
        l2 += u[i] * u[i];
        l1 += std::abs(u[i]);
        const double d = (u[(i + 1) % n] - u[i]) / dx;
        grad += d * d;
    }
    l2 *= dx;
    l1 *= dx;
    grad *= dx;
    if (l1 <= 0 || grad <= 0) return 0.0;
    return l2 / (std::pow(l1, 4.0 / 3.0) * std::pow(grad, 1.0 / 3.0));
}

double nash_ratio_2d(const std::vector<double>& u, int n, double dx) {
    double l2 = 0, l1 = 0, grad = 0;
    auto at = [&](int i, int j) { return u[(std::size_t)((i + n) % n) * n + (j + n) % n]; };
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const double v = at(i, j);
            l2 += v * v;
            l1 += std::abs(v);
            const double dxv = (at(i + 1, j) - v) / dx;
            const double dyv = (at(i, j + 1) - v) / dx;
            grad += dxv * dxv + dyv * dyv;
        }
    const double cell = dx * dx;
    l2 *= cell;
    l1 *= cell;
    grad *= cell;
    if (l1 <= 0 || grad <= 0) return 0.0;
    return l2 / (l1 * std::sqrt(grad)); // exponents 4/(d+2) = 1, 2d/(d+2) = 1 at d = 2
}

double nash_constant(int d, std::uint64_t seed, double safety) {
    if (d != 1 && d != 2) throw std::domain_error("nash_constant: d in {1, 2}");
    std::mt19937_64 gen(seed);
    std::normal_distribution<double> nd;
    std::uniform_real_distribution<double> ud(0.0, 1.0);
    double best = 0.0;
    if (d == 1) {
        const int n = 1024;
        const double len = 40.0, dx = len / n;
        // Gaussian family (the ratio is scale invariant; widths probe the grid)
        for (double sigma : {0.5, 1.0, 2.0, 4.0}) {
            std::vector<double> u(n);
            for (int i = 0; i < n; ++i) {
                const double x = dx * i - 0.5 * len;
                u[i] = std::exp(-0.5 * x * x / (sigma * sigma));
            }
            best = std::max(best, nash_ratio_1d(u, dx));
        }
        // random localized signed bumps
        for (int s = 0; s < 400; ++s) {
            std::vector<double> u(n, 0.0);
            const int nb = 1 + (int)(ud(gen) * 4);
            for (int b = 0; b < nb; ++b) {
                const double c = len * (0.25 + 0.5 * ud(gen));
                const double w = 0.3 + 3.0 * ud(gen);
                const double amp = nd(gen);
                for (int i = 0; i < n; ++i) {
                    const double x = dx * i - c;
                    u[i] += amp * std::exp(-0.5 * x * x / (w * w));
                }
            }
            best = std::max(best, nash_ratio_1d(u, dx));
        }
    } else {
        const int n = 96;
        const double len = 24.0, dx = len / n;
        for (double sigma : {0.8, 1.6, 3.0}) {
            std::vector<double> u((std::size_t)n * n);
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) {
                    const double x = dx * i - 0.5 * len, y = dx * j - 0.5 * len;
                    u[(std::size_t)i * n + j] = std::exp(-0.5 * (x * x + y * y) / (sigma * sigma));
                }
            best = std::max(best, nash_ratio_2d(u, n, dx));
        }
        for (int s = 0; s < 200; ++s) {
            std::vector<double> u((std::size_t)n * n, 0.0);
            const int nb = 1 + (int)(ud(gen) * 3);
            for (int b = 0; b < nb; ++b) {
                const double cx = len * (0.3 + 0.4 * ud(gen)), cy = len * (0.3 + 0.4 * ud(gen));
                const double w = 0.5 + 2.5 * ud(gen);
                const double amp = nd(gen);
                for (int i = 0; i < n; ++i)
                    for (int j = 0; j < n; ++j) {
                        const double x = dx * i - cx, y = dx * j - cy;
                        u[(std::size_t)i * n + j] += amp * std::exp(-0.5 * (x * x + y * y) / (w * w));
                    }
            }
            best = std::max(best, nash_ratio_2d(u, n, dx));
        }
    }
    return best * safety;
}

double phi_inverse(double z, double c_small, int d) {
    if (z < 0) throw std::domain_error("phi_inverse: negative argument");
    return 2.0 * z + std::pow(z / c_small, (double)d / (d + 2));
}

double phi_lower(double y, double c_small, int d) {
    if (y < 0) throw std::domain_error("phi_lower: negative argument");
    if (y == 0) return 0.0;
    // Phi^{-1} is strictly increasing with Phi^{-1}(z) >= 2z, so the root lives
    // in [0, y/2]; plain bisection
    double lo = 0.0, hi = 0.5 * y;
    if (phi_inverse(hi, c_small, d) < y) throw std::runtime_error("phi_lower: bracket failure");
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        (phi_inverse(mid, c_small, d) < y ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

double psi_lower(double y, double c0, double beta, double k) {
    if (y < 0) throw std::domain_error("psi_lower: negative argument");
    return c0 * std::pow(y, 1.0 + beta / k);
}

RateModel assemble_rate_model(int d, double beta, double k, double theta, double theta_k,
                              double kk_moment, double delta, double kappa, double c_nash,
                              double norm0_sq_init, double norm_k_init, double l1_init,
                              double h0) {
    RateModel rm;
    rm.zeta = std::min(0.5 * d, k / beta);
    rm.c_nash = c_nash;
    rm.c_small = theta * std::pow(c_nash, -(d + 2.0) / d) * std::pow(l1_init, -4.0 / d);
    rm.c0 = std::pow(kk_moment * (1.0 + theta_k) * norm_k_init, -2.0 * beta / k);
    rm.z0 = norm0_sq_init;
    rm.h0 = h0;
    rm.delta = delta;
    rm.kappa_rate = kappa;
    const double phi_z0 = phi_lower(rm.z0, rm.c_small, d);
    rm.c1 = std::pow(2.0 * std::pow(phi_z0, 2.0 / (d + 2.0)) + std::pow(rm.c_small, -(double)d / (d + 2)),
                     -(d + 2.0) / d);
    const double inv_zeta = 1.0 / rm.zeta;
    const double m0 = rm.c0 * std::pow(rm.z0, beta / k - inv_zeta);
    const double m1 = rm.c1 * std::pow(rm.z0, 2.0 / d - inv_zeta);
    // superadditivity of x -> x^{1+1/zeta} costs 2^{-1/zeta}
    rm.min_const = std::pow(2.0, -inv_zeta) * std::min(m0, m1);
    rm.c_rate = (kappa / rm.zeta) * rm.min_const * std::pow(2.0 / (1.0 + delta), 1.0 + inv_zeta);
    return rm;
}

double groenwall_bound(double h0, double c_rate, double zeta, double t) {
    return h0 * std::pow(1.0 + c_rate * std::pow(h0, 1.0 / zeta) * t, -zeta);
}

RateFit fit_rate(const std::vector<double>& t, const std::vector<double>& series, double t_lo,
                 double t_hi) {
    RateFit fit;
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int n = 0;
    for (std::size_t i = 0; i < t.size(); ++i) {
        if (t[i] < t_lo || t[i] > t_hi || !(series[i] > 0)) continue;
        const double x = std::log1p(t[i]);
        const double y = std::log(series[i]);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        ++n;
    }
    if (n < 3) throw std::runtime_error("fit_rate: fewer than 3 points in the window");
    const double denom = n * sxx - sx * sx;
    fit.slope = (n * sxy - sx * sy) / denom;
    fit.intercept = (sy - fit.slope * sx) / n;
    double ss = 0;
    for (std::size_t i = 0; i < t.size(); ++i) {
        if (t[i] < t_lo || t[i] > t_hi || !(series[i] > 0)) continue;
        const double x = std::log1p(t[i]);
        const double r = std::log(series[i]) - (fit.intercept + fit.slope * x);
        ss += r * r;
    }
    fit.npts = n;
    if (n > 2) {
        const double var = ss / (n - 2);
        fit.stderr_slope = std::sqrt(var * n / denom);
        fit.ci95 = 1.96 * fit.stderr_slope;
    }
    return fit;
}

} // namespace hypoc
