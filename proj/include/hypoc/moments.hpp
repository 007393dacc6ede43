#pragma once

#include "hypoc/transport.hpp"

#include <vector>

namespace hypoc {

// Splitting L - T = B + C with C = a 1_{|v|<R} and B dissipative in every
// admissible weighted norm.
struct SplittingSpec {
    double k1 = 0, k2 = 0;
    double a = 0, R = 0, ell = 0;
    double b_k1 = 0; // drift constant of the lower weight
};

// k2 must exceed k1 + 2 ell; a and R are the maxima of the drift constants at
// the two weights.
SplittingSpec make_splitting(const CollisionOperator& op, double k1, double k2);

struct BSeries {
    std::vector<double> t;
    std::vector<double> n_k1_sq, n_k2_sq;
    bool monotone_k1 = true;
    // min over outputs of (closed-form bound - ||f||_{k1}^2) / scale
    double closed_form_min_margin = 0;
};

// Integrates df/dt = (L - T - C) f with the splitting integrator and records
// the weighted norms.
BSeries semigroup_B_decay(const SpatialGrid& xg, std::shared_ptr<const CollisionOperator> op,
                          const SplittingSpec& sp, DistributionField f0, SolverConfig cfg);

// ||f||_{k1}^2 <= ((k2-k1)/(k2-k1+2 ell b_k1 t))^{(k2-k1)/ell} ||f0||_{k2}^2
double closed_form_decay_bound(const SplittingSpec& sp, double norm_k2_sq_init, double t);

struct MomentBound {
    double kk = 1;                // the propagation constant
    double duhamel_integral = 0;  // value of the convolution tail integral
    double p = 0;                 // decay exponent (k2-k1)/(2 ell)
    double prefactor_fit = 0;     // Lemma-style prefactor fitted from trajectories
    double prefactor_explicit = 0;
};

// prefactor implied by the closed-form bound: max{1, ((k2-k1)/(2 ell b_k1))^p}
double explicit_B_prefactor(const SplittingSpec& sp);

// sup over outputs of sqrt(n_k1_sq / n_k2_sq(0)) * (1+t)^p
double fit_B_prefactor(const BSeries& s, double p);

MomentBound duhamel_bound(const SplittingSpec& sp, double prefactor);

struct PropagationAudit {
    double sup_ratio = 0; // sup_t ||f||_k / ||f0||_k
    double bound = 0;     // Duhamel constant
    bool pass = false;
};

PropagationAudit moment_propagation_audit(const std::vector<double>& norm_k_sq_series,
                                          const MomentBound& mb);

} // namespace hypoc
