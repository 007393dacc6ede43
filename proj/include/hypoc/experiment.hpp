#pragma once

#include "hypoc/config.hpp"
#include "hypoc/decay.hpp"
#include "hypoc/diagnostics.hpp"
#include "hypoc/homogeneous.hpp"
#include "hypoc/moments.hpp"
#include "hypoc/report.hpp"
#include "hypoc/spectral.hpp"

#include <memory>
#include <optional>
#include <string>

namespace hypoc {

// Shared context of one configured experiment: grids, equilibrium, collision
// operator, and the constants every mode consumes.
struct ExperimentContext {
    ExperimentConfig cfg;
    SpatialGrid xg;
    VelocityGrid vg;
    Equilibrium eq;
    std::shared_ptr<const CollisionOperator> op;
    double c_micro = 0;
    StepConstants constants;
    double delta = 0, kappa = 0;
};

ExperimentContext make_context(const ExperimentConfig& cfg);

struct KineticOutcome {
    StepConstants constants;
    double delta = 0, kappa = 0;
    SplittingSpec splitting;
    MomentBound moment_bound;
    RateModel rates;
    std::vector<HypoState> series;
    std::vector<double> wrap_corr;
    double t_wrap = 0; // first output time with wrap correlation above threshold
    RateFit fit;
    int bound_violations = 0;
    AuditLog audits;
    std::string csv_path, report_path;
};

KineticOutcome run_kinetic(const ExperimentContext& ctx, const std::string& out_dir,
                           bool write_files = true);

struct HomogeneousOutcome {
    HomogeneousRun run;
    double c_wp = 0; // weighted Poincare constant on the run grid
    double bound_tail_slope = 0;
    AuditLog audits;
    std::string csv_path, report_path;
};

HomogeneousOutcome run_homogeneous_mode(const ExperimentContext& ctx, const std::string& out_dir,
                                        bool write_files = true);

struct SpectralOutcome {
    SpectralResult result;
    double zero_mode_res = 0;
    AuditLog audits;
    std::string report_path;
};

SpectralOutcome run_spectral_mode(const ExperimentConfig& cfg, const std::string& out_dir,
                                  bool write_files = true);

struct SweepPoint {
    double value = 0;
    double zeta_pred = 0;
    double zeta_fit = 0, ci95 = 0;
    int bound_violations = 0;
    double t_wrap = 0;
};

struct SweepOutcome {
    std::vector<SweepPoint> points;
    AuditLog audits;
    std::string table_path;
};

SweepOutcome run_sweep(const ExperimentConfig& cfg, const std::string& out_dir,
                       bool write_files = true);

// randomized audit battery, no time integration (the `audit` subcommand and
// the --check-only flag)
AuditLog run_audit_battery(const ExperimentContext& ctx, int heavy_samples = 500);

// |central difference of H + D| measured along short runs at dt and dt/2
struct EntropyIdentityStudy {
    double err_coarse = 0, err_fine = 0, ratio = 0;
};

EntropyIdentityStudy entropy_identity_study(const ExperimentContext& ctx, double t_probe);

// builds the initial state rho_bump(x) (1 + amp p(v)) F(v)
DistributionField initial_state(const ExperimentContext& ctx);

// CLI entry: dispatches on cfg.mode, writes outputs, returns the exit code
// (0 iff all audits pass).
int run_experiment(ExperimentConfig cfg, const std::string& out_override,
                   std::optional<std::uint64_t> seed_override, bool check_only);

} // namespace hypoc
