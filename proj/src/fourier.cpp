#include "hypoc/fourier.hpp"

#include <fftw3.h>

#include <cmath>
#include <stdexcept>

namespace hypoc {

Fourier1D::Fourier1D(int n, double length) : n_(n), length_(length) {
    if (n < 2) throw std::invalid_argument("Fourier1D: n must be >= 2");
    std::vector<double> re(n);
    std::vector<std::complex<double>> sp(nh());
    // FFTW_UNALIGNED so the new-array execute functions accept any buffers
    fwd_ = fftw_plan_dft_r2c_1d(n, re.data(), reinterpret_cast<fftw_complex*>(sp.data()),
                                FFTW_ESTIMATE | FFTW_UNALIGNED);
    // PRESERVE_INPUT: 1-d c2r supports it, and some callers reuse the spectrum
    bwd_ = fftw_plan_dft_c2r_1d(n, reinterpret_cast<fftw_complex*>(sp.data()), re.data(),
                                FFTW_ESTIMATE | FFTW_UNALIGNED | FFTW_PRESERVE_INPUT);
    if (!fwd_ || !bwd_) throw std::runtime_error("Fourier1D: plan creation failed");
}

Fourier1D::~Fourier1D() {
    if (fwd_) fftw_destroy_plan(fwd_);
    if (bwd_) fftw_destroy_plan(bwd_);
}

double Fourier1D::xi(int l) const { return 2.0 * std::acos(-1.0) * l / length_; }

double Fourier1D::mult(int l) const {
    if (l == 0) return 1.0;
    if (n_ % 2 == 0 && l == n_ / 2) return 1.0;
    return 2.0;
}

void Fourier1D::forward(const double* in, std::complex<double>* out) const {
    fftw_execute_dft_r2c(fwd_, const_cast<double*>(in), reinterpret_cast<fftw_complex*>(out));
}

void Fourier1D::inverse(const std::complex<double>* in, double* out) const {
    fftw_execute_dft_c2r(bwd_, reinterpret_cast<fftw_complex*>(const_cast<std::complex<double>*>(in)),
                         out);
    const double s = 1.0 / n_;
    for (int i = 0; i < n_; ++i) out[i] *= s;
}

double Fourier1D::weighted_power(const std::complex<double>* u, const std::vector<double>& symbol) const {
    double s = 0.0;
    for (int l = 0; l < nh(); ++l) s += mult(l) * symbol[l] * std::norm(u[l]);
    return s * dx() / n_;
}

} // namespace hypoc
