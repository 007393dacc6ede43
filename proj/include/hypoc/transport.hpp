#pragma once

#include "hypoc/collision.hpp"
#include "hypoc/field.hpp"
#include "hypoc/fourier.hpp"

#include <functional>
#include <memory>
#include <vector>

namespace hypoc {

enum class Splitting { lie, strang };
enum class CollisionScheme { implicit_euler, crank_nicolson };

struct SolverConfig {
    double dt = 1e-3;
    double t_end = 1.0;
    Splitting splitting = Splitting::strang;
    CollisionScheme scheme = CollisionScheme::crank_nicolson;
    int output_every = 10;
};

// Exact free streaming on the torus: each v-row is translated by v dt through
// a phase shift of its x-modes. Rows are independent, so the multiply runs in
// parallel. Phase tables are cached per dt (dt is fixed along a run).
class Advector {
  public:
    Advector(const SpatialGrid& xg, const VelocityGrid& vg);

    void advance(DistributionField& f, double dt) const;
    const Fourier1D& fourier() const { return fx_; }

  private:
    const std::vector<double>& phase_table(double dt) const;

    SpatialGrid xg_;
    VelocityGrid vg_;
    Fourier1D fx_;
    // cached cos/sin of xi_l * v * dt, laid out per row; rebuilt when dt changes
    mutable double cached_dt_ = 0.0;
    mutable std::vector<double> table_; // 2 * nh per row: (cos, sin) pairs
};

// One-line wrapper used by tests.
DistributionField advect(const DistributionField& f, const SpatialGrid& xg,
                         const VelocityGrid& vg, double dt);

// Splitting integrator for  d f/dt = (L - T - absorb) f.
class KineticStepper {
  public:
    KineticStepper(const SpatialGrid& xg, std::shared_ptr<const CollisionOperator> op,
                   SolverConfig cfg);

    // localized absorption a 1_{|v|<R}; used for the split-semigroup runs
    void set_absorption(double a, double R);

    void collide(DistributionField& f, double dt);
    void step(DistributionField& f);

    const SpatialGrid& xgrid() const { return xg_; }
    const CollisionOperator& op() const { return *op_; }
    const SolverConfig& config() const { return cfg_; }
    const Advector& advector() const { return adv_; }

  private:
    const ImplicitFactor& factor_for(double dt);

    SpatialGrid xg_;
    std::shared_ptr<const CollisionOperator> op_;
    SolverConfig cfg_;
    Advector adv_;
    std::vector<double> absorb_; // empty = none
    double factor_dt_ = 0.0;
    std::unique_ptr<ImplicitFactor> factor_;
};

using RunHook = std::function<void(const DistributionField&, int step_index)>;

// Runs until t_end; invokes the hook at t = 0 and after every output_every steps.
void run(KineticStepper& stepper, DistributionField& f, double t_end, int output_every,
         const RunHook& hook);

} // namespace hypoc
