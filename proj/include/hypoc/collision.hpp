#pragma once

#include "hypoc/equilibria.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Dense>

#include <vector>

namespace hypoc {

enum class CollisionKind { fokker_planck, scattering };
enum class KernelFamily { separable, boltzmann };

struct CollisionSpec {
    CollisionKind kind = CollisionKind::fokker_planck;
    double beta = 1.0;   // kernel decay exponent
    double gamma = 0.0;  // local singularity exponent (boltzmann upper bound in H2)
    KernelFamily family = KernelFamily::separable;
    // H2 constants; exact for the separable family, grid-fitted for boltzmann
    double b_lower = 1.0;
    double b_upper = 1.0;
};

void validate_spec(const CollisionSpec& spec, double alpha, int dim);

struct DriftConstants {
    double a_k = 0, b_k = 0, c_k = 0, R_k = 0, ell = 0;
};

struct Nu2Fit {
    std::vector<double> nu2;
    double nu_lower = 0, nu_upper = 0;
};

// Discrete collision operator on one velocity column, kept in the symmetric
// form L = -M^{-1} K with M = diag(w_i / F_i) (the L^2(dmu) weights) and K
// symmetric positive semi-definite. One representation serves application,
// dissipation, and the implicit solves, and makes self-adjointness exact.
class CollisionOperator {
  public:
    CollisionOperator(CollisionSpec spec, const Equilibrium& eq);

    const CollisionSpec& spec() const { return spec_; }
    const Equilibrium& eq() const { return eq_; }
    int size() const { return n_; }
    const std::vector<double>& mu_weight() const { return m_; }

    // kernel value b(v_i, v_j); the boltzmann diagonal carries the cell average
    double kernel(int i, int j) const;

    void apply(const double* f, double* lf) const;
    std::vector<double> apply(const std::vector<double>& f) const;

    // -<L f, f>_mu = f^T K f
    double dissipation(const double* f) const;

    // <L f, g>_mu = -(K f) . g
    double pairing_mu(const double* f, const double* g) const;

    Nu2Fit nu2_profile() const;
    DriftConstants drift_constants(double k) const;

    // residual of the local mass conservation hypothesis, max_i |sum_j w_j (b_ij - b_ji) F_j|
    double h1_residual() const;

    // micro-coercivity constant (b_lower/2) / Theta_beta for the scattering case
    double micro_coercivity() const;

    // diffusion-limit coefficient  D = <(-L)^{-1}(vF), vF>_mu ; sets the torus
    // size needed to keep a run inside the pre-wrap window
    double effective_diffusivity() const;

    bool dense() const { return kind() == CollisionKind::scattering; }
    CollisionKind kind() const { return spec_.kind; }
    const Eigen::MatrixXd& dense_form() const { return kdense_; }
    const std::vector<double>& tridiag_diag() const { return kdiag_; }
    const std::vector<double>& tridiag_off() const { return koff_; }

  private:
    CollisionSpec spec_;
    Equilibrium eq_;
    int n_ = 0;
    std::vector<double> m_;              // M_i = w_i / F_i
    std::vector<double> kdiag_, koff_;   // K tridiagonal (fokker_planck)
    Eigen::MatrixXd kdense_;             // K dense (scattering)
    std::vector<double> nu2_;            // scattering frequency on the grid
    std::vector<double> diag_cell_;      // cell-averaged kernel on the diagonal
};

// Factorization of (M + c K + c diag(M_i absorb_i)); c = dt for implicit Euler,
// dt/2 for Crank-Nicolson. The absorb vector implements the localized
// absorption a 1_{|v|<R} used by the split semigroup runs.
struct ImplicitFactor {
    bool dense = false;
    double c = 0;
    std::vector<double> d, l; // LDL^T of the SPD tridiagonal
    Eigen::LLT<Eigen::MatrixXd> llt;
};

ImplicitFactor factor_implicit(const CollisionOperator& op, double c,
                               const std::vector<double>* absorb = nullptr);

// Solves (M + cK + ...) x = M r in place; thread-safe for a shared factorization.
void solve_implicit(const CollisionOperator& op, const ImplicitFactor& fac,
                    const double* r, double* x);

} // namespace hypoc
