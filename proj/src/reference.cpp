#include "hypoc/reference.hpp"

#include <cmath>
#include <stdexcept>

namespace hypoc::ref {

std::vector<double> apply_fokker_planck(const Equilibrium& eq, const std::vector<double>& f) {
    const auto& g = eq.grid;
    if ((int)f.size() != g.n) throw std::invalid_argument("ref::apply_fokker_planck: size mismatch");
    std::vector<double> out(g.n, 0.0);
    std::vector<double> flux(g.n - 1);
    for (int i = 0; i + 1 < g.n; ++i) {
        const double face = std::sqrt(eq.F[i] * eq.F[i + 1]) / g.face_dv(i);
        flux[i] = face * (f[i + 1] / eq.F[i + 1] - f[i] / eq.F[i]);
    }
    for (int i = 0; i < g.n; ++i) {
        const double in = (i > 0) ? flux[i - 1] : 0.0;       // no-flux boundaries
        const double outf = (i + 1 < g.n) ? flux[i] : 0.0;
        out[i] = (outf - in) / g.w[i];
    }
    return out;
}

std::vector<double> apply_scattering(const Equilibrium& eq,
                                     const std::function<double(int, int)>& kernel,
                                     const std::vector<double>& f) {
    const auto& g = eq.grid;
    if ((int)f.size() != g.n) throw std::invalid_argument("ref::apply_scattering: size mismatch");
    std::vector<double> out(g.n);
    for (int i = 0; i < g.n; ++i) {
        double s = 0.0;
        for (int j = 0; j < g.n; ++j)
            s += g.w[j] * kernel(i, j) * (f[j] * eq.F[i] - f[i] * eq.F[j]);
        out[i] = s;
    }
    return out;
}

double dissipation_fokker_planck(const Equilibrium& eq, const std::vector<double>& f) {
    const auto& g = eq.grid;
    double s = 0.0;
    for (int i = 0; i + 1 < g.n; ++i) {
        const double dg = f[i + 1] / eq.F[i + 1] - f[i] / eq.F[i];
        s += std::sqrt(eq.F[i] * eq.F[i + 1]) / g.face_dv(i) * dg * dg;
    }
    return s;
}

double dissipation_scattering(const Equilibrium& eq,
                              const std::function<double(int, int)>& kernel,
                              const std::vector<double>& f) {
    const auto& g = eq.grid;
    double s = 0.0;
    for (int i = 0; i < g.n; ++i)
        for (int j = 0; j < g.n; ++j) {
            const double d = f[j] * eq.F[i] - f[i] * eq.F[j];
            s += g.w[i] * g.w[j] * kernel(i, j) * d * d / (eq.F[i] * eq.F[j]);
        }
    return 0.5 * s;
}

double norm_k_sq(const Equilibrium& eq, const std::vector<double>& f, double k) {
    const auto& g = eq.grid;
    double s = 0.0;
    for (int i = 0; i < g.n; ++i) s += g.w[i] * f[i] * f[i] * std::pow(g.av[i], k) / eq.F[i];
    return s;
}

double fp_frequency_fd(const Equilibrium& eq, double v, double h) {
    const double fm = eq.density(v - h), f0 = eq.density(v), fp = eq.density(v + h);
    const double d1 = (fp - fm) / (2.0 * h);
    const double d2 = (fp - 2.0 * f0 + fm) / (h * h);
    return d2 / (2.0 * f0) - d1 * d1 / (4.0 * f0 * f0);
}

namespace {
double simpson(const std::function<double(double)>& f, double a, double b,
               double fa, double fm, double fb) {
    return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

double adapt(const std::function<double(double)>& f, double a, double b, double fa, double fm,
             double fb, double whole, double tol, int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = f(lm), frm = f(rm);
    const double left = simpson(f, a, m, fa, flm, fm);
    const double right = simpson(f, m, b, fm, frm, fb);
    if (depth <= 0 || std::abs(left + right - whole) <= 15.0 * tol)
        return left + right + (left + right - whole) / 15.0;
    return adapt(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
           adapt(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}
} // namespace

double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        double tol, int max_depth) {
    const double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
    return adapt(f, a, b, fa, fm, fb, simpson(f, a, b, fa, fm, fb), tol, max_depth);
}

std::vector<double> translate_dft(const std::vector<double>& row, double length, double shift) {
    const int n = (int)row.size();
    const int half = n / 2;
    const double two_pi = 2.0 * std::acos(-1.0);
    std::vector<double> re(half + 1, 0.0), im(half + 1, 0.0);
    for (int l = 0; l <= half; ++l)
        for (int m = 0; m < n; ++m) {
            const double ph = two_pi * l * m / n;
            re[l] += row[m] * std::cos(ph);
            im[l] -= row[m] * std::sin(ph);
        }
    std::vector<double> out(n);
    for (int j = 0; j < n; ++j) {
        const double x = length * j / n - shift;
        double acc = re[0] / n;
        for (int l = 1; l <= (n - 1) / 2; ++l) {
            const double xi = two_pi * l / length;
            acc += 2.0 / n * (re[l] * std::cos(xi * x) - im[l] * std::sin(xi * x));
        }
        if (n % 2 == 0) { // Nyquist kept as a pure cosine mode
            const double xi = two_pi * half / length;
            acc += re[half] / n * std::cos(xi * x);
        }
        out[j] = acc;
    }
    return out;
}

} // namespace hypoc::ref
