#pragma once

#include "hypoc/collision.hpp"
#include "hypoc/field.hpp"
#include "hypoc/fourier.hpp"

#include <vector>

namespace hypoc {

// The explicit constants of the entropy-production estimate.
struct StepConstants {
    double theta = 0;    // velocity variance along one axis
    double c2 = 0;       // Theta_{beta+2} / Theta
    double c4 = 0;       // Theta_{beta+4} / Theta
    double cf = 0;       // ||L(vF)||_{L^2(<v>^beta dmu)} / sqrt(Theta)
    double c_micro = 0;  // micro-coercivity constant of the operator in play
    double theta_k = 0;  // Theta_k for the configured weight
    double theta_mbeta = 0; // Theta_{-beta} (normalization of the nu-average)
};

StepConstants step_constants(const Equilibrium& eq, const CollisionOperator& op,
                             double beta, double k, double c_micro);

// delta maximizing the smallest eigenvalue kappa of the 2x2 form
//   Q(X,Y) = (C - delta C2) X^2 - delta (C4 + CF) X Y + delta Y^2
// by golden-section search on (0,1). Throws if no delta gives kappa > 0.
std::pair<double, double> choose_delta(const StepConstants& c);

double quadratic_form_min_eigenvalue(const StepConstants& c, double delta);

// Per-snapshot hypocoercivity state.
struct HypoState {
    double t = 0;
    double mass = 0, l1 = 0;
    double norm0_sq = 0;   // ||f||^2
    double norm_k_sq = 0;  // ||f||_k^2
    double macro_sq = 0;   // ||Pi f||^2
    double micro0_sq = 0;  // ||(I-Pi) f||^2
    double micro_sq = 0;   // ||(I-Pi) f||^2_{-beta}
    double pairing = 0;    // <AT Pi f, Pi f>
    double entropy = 0;    // H[f]
    double production = 0; // D[f]
    // production pieces: term_l = -<Lf,f>; the inner_* factors carry no delta,
    // D = term_l + delta (pairing + inner_at2 - inner_ta - inner_al)
    double term_l = 0, inner_at2 = 0, inner_ta = 0, inner_al = 0;
};

// Computes projections, the elliptic solves behind A, the modified entropy and
// all five production terms. A is applied through moment extraction plus exact
// Fourier-symbol solves; it is never formed as a matrix.
class Diagnostics {
  public:
    Diagnostics(const SpatialGrid& xg, const Equilibrium& eq, double beta, double k);

    const SpatialGrid& xgrid() const { return xg_; }
    double theta() const { return theta_; }

    std::vector<double> rho(const DistributionField& f) const;
    std::vector<double> first_moment(const DistributionField& f) const;
    std::vector<double> second_moment(const DistributionField& f) const;
    DistributionField project_pi(const DistributionField& f) const;

    // u - theta lap u = rho, exact per Fourier mode
    std::vector<double> solve_elliptic(const std::vector<double>& rho, double theta) const;
    // Theta ||grad u||^2 + Theta^2 ||lap u||^2, spectral
    double pairing_atpi(const std::vector<double>& rho, double theta) const;

    // w with A f = w F, i.e. w - theta lap w = -d/dx int v f dv
    std::vector<double> a_weight(const DistributionField& f) const;
    DistributionField apply_A(const DistributionField& f) const;
    DistributionField apply_TA(const DistributionField& f) const;

    double norm0_sq(const DistributionField& f) const;
    double norm_k_sq(const DistributionField& f) const;
    double micro_norm_sq(const DistributionField& f) const; // ||(I-Pi)f||^2_{-beta}

    double entropy(const DistributionField& f, double delta) const;

    // full snapshot; op supplies the collision terms
    HypoState evaluate(const DistributionField& f, const CollisionOperator& op,
                       double delta) const;

    // antipodal autocorrelation of the centered density; near zero until the
    // spreading bulk wraps around the torus
    double wrap_correlation(const DistributionField& f) const;

    const Equilibrium& eq() const { return eq_; }
    double beta() const { return beta_; }
    double k() const { return k_; }

  private:
    double column_dot(const std::vector<double>& a, const std::vector<double>& b) const;

    SpatialGrid xg_;
    Equilibrium eq_;
    double beta_ = 0, k_ = 0, theta_ = 0;
    Fourier1D fx_;
    std::vector<double> av_k_, av_mbeta_; // <v>^k, <v>^{-beta}
    std::vector<double> sym_one_;         // elliptic symbol 1/(1+theta xi^2)
};

} // namespace hypoc
