#pragma once

#include <complex>
#include <vector>

struct fftw_plan_s;

namespace hypoc {

// Periodic transforms on the x-grid. Plans are created once per size; the
// execute calls are thread-safe on caller-owned buffers, so rows can be
// transformed concurrently.
class Fourier1D {
  public:
    Fourier1D(int n, double length);
    ~Fourier1D();
    Fourier1D(const Fourier1D&) = delete;
    Fourier1D& operator=(const Fourier1D&) = delete;

    int n() const { return n_; }
    int nh() const { return n_ / 2 + 1; }
    double length() const { return length_; }
    double dx() const { return length_ / n_; }
    double xi(int l) const; // 2 pi l / L
    // Parseval multiplicity of bin l (1 for DC and Nyquist, else 2)
    double mult(int l) const;

    void forward(const double* in, std::complex<double>* out) const; // unnormalized
    void inverse(const std::complex<double>* in, double* out) const; // normalized by 1/n

    // int |u|^2 dx from spectral coefficients, with symbol weight s(xi):
    // returns (dx/n) sum_l mult_l s(xi_l) |u_l|^2
    double weighted_power(const std::complex<double>* u, const std::vector<double>& symbol) const;

  private:
    int n_ = 0;
    double length_ = 0.0;
    fftw_plan_s* fwd_ = nullptr;
    fftw_plan_s* bwd_ = nullptr;
};

} // namespace hypoc
