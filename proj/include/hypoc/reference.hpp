#pragma once

#include "hypoc/equilibria.hpp"

#include <functional>
#include <vector>

// Serial reference implementations. These are the brute-force counterparts
// of the OpenMP kernels: plain loops, no shared state, written directly from
// the defining formulas. Tests use them as independent oracles and the
// benchmark target compares them against the parallel kernels.
namespace hypoc::ref {

// Fokker-Planck operator in flux form, serial.
std::vector<double> apply_fokker_planck(const Equilibrium& eq, const std::vector<double>& f);

// Scattering operator evaluated straight from the kernel function b(v,v'),
// without the tabulated matrix.
std::vector<double> apply_scattering(const Equilibrium& eq,
                                     const std::function<double(int, int)>& kernel,
                                     const std::vector<double>& f);

// -<L1 f, f>_mu as the face sum  sum sqrt(F_i F_{i+1}) (g_{i+1}-g_i)^2 / dv.
double dissipation_fokker_planck(const Equilibrium& eq, const std::vector<double>& f);

//(1/2) sum_{ij} w_i w_j b_ij (f_j F_i - f_i F_j)^2 / (F_i F_j), the double-sum
// form of the scattering dissipation.
double dissipation_scattering(const Equilibrium& eq,
                              const std::function<double(int, int)>& kernel,
                              const std::vector<double>& f);

// Weighted norm squared int f^2 <v>^k dmu over one velocity column.
double norm_k_sq(const Equilibrium& eq, const std::vector<double>& f, double k);

// nu1 from second-order central differences of F on a fine uniform stencil.
double fp_frequency_fd(const Equilibrium& eq, double v, double h);

// Adaptive Simpson quadrature (refinement-based oracle).
double adaptive_simpson(const std::function<double(double)>& f, double a, double b,
                        double tol, int max_depth = 60);

// Exact translation of one x-row by shift via a direct O(n^2) DFT evaluation.
std::vector<double> translate_dft(const std::vector<double>& row, double length, double shift);

} // namespace hypoc::ref
