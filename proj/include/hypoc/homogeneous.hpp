#pragma once

#include "hypoc/collision.hpp"
#include "hypoc/transport.hpp"

#include <cstdint>
#include <vector>

namespace hypoc {

struct HomogeneousRun {
    std::vector<double> t;
    std::vector<double> y;         // int |g - gbar|^2 dmu
    std::vector<double> bound;     // algebraic bound with the spectral constant
    std::vector<double> norm_k_sq; // ||g||^2_{L2(<v>^k dmu)}
    std::vector<double> dissipation;
    std::vector<double> mass;
    double y0 = 0;
    double kk_const = 0; // the K constant entering the bound
    bool y_monotone = true;
    bool mass_conserved = true;
    double min_bound_margin = 0; // min (bound - y)/y0
};

// Relaxation of dg/dt = L1 g on the velocity grid with implicit steps.
// c_wp is the weighted Poincare constant in the <v>^{-beta} normalization and
// kk_moment the weighted-norm propagation constant; both enter the bound.
HomogeneousRun run_homogeneous(std::shared_ptr<const CollisionOperator> op,
                               std::vector<double> g0, double k, double c_wp, double kk_moment,
                               SolverConfig cfg);

// (y0^{-beta/k} + 2 beta C t / (k K^{beta/k}))^{-k/beta}
double algebraic_bound(double y0, double kk_const, double c_const, double beta, double k,
                       double t);

struct WeakPoincareResult {
    double eta = 0, tau = 0;
    double c_tau = 0;      // assembled interpolation constant
    double min_margin = 0; // min over samples of (rhs - lhs)/scale
};

// Interpolation inequality audit: for random bounded h,
//   int |h-h_tilde|^2 dxi <= C_tau (int |grad h|^2 dxi)^{tau/(1+tau)} ||h-h_tilde||_inf^{2/(1+tau)}
// with C_tau assembled from c_wp and the Theta moment of the Holder split.
std::vector<WeakPoincareResult> weak_poincare_audit(const Equilibrium& eq, double beta,
                                                    double c_wp, const std::vector<double>& etas,
                                                    int samples, std::uint64_t seed);

} // namespace hypoc
