#pragma once

#include "hypoc/collision.hpp"
#include "hypoc/diagnostics.hpp"
#include "hypoc/report.hpp"

#include <cstdint>
#include <memory>

namespace hypoc {

// Randomized inequality audits on seeded fields; no time integration. Each
// audit appends the worst signed margin across its sample batch. These back
// both the `audit` subcommand and the acceptance suite.

// self-adjointness, negative semi-definiteness, kernel exactness, mass
// conservation, and the dissipation identities against serial double-sum oracles
void audit_operator_identities(const CollisionOperator& op, int n_fields, std::uint64_t seed,
                               AuditLog& log);

// Lyapunov drift inequality on random fields
void audit_drift_inequality(const CollisionOperator& op, double k, int n_fields,
                            std::uint64_t seed, AuditLog& log);

// -<Lf,f> >= C ||(I-Pi)f||^2_{-beta} on random (x,v) fields
void audit_micro_coercivity(const CollisionOperator& op, const Diagnostics& diag, double c_micro,
                            int n_fields, std::uint64_t seed, AuditLog& log);

// projection algebra, elliptic residual, pairing identity
void audit_projection_and_elliptic(const Diagnostics& diag, const SpatialGrid& xg,
                                   int n_fields, std::uint64_t seed, AuditLog& log);

// Cauchy-Schwarz production-term bounds and the positivity of <TAf, f>
void audit_production_bounds(const CollisionOperator& op, const Diagnostics& diag,
                             const StepConstants& sc, int n_fields, std::uint64_t seed,
                             AuditLog& log);

// entropy equivalence (1 -+ delta)/2 ||f||^2 sandwich
void audit_entropy_equivalence(const Diagnostics& diag, double delta, int n_fields,
                               std::uint64_t seed, AuditLog& log);

// D >= kappa (micro^2 + pairing) on random fields
void audit_entropy_production(const CollisionOperator& op, const Diagnostics& diag, double delta,
                              double kappa, int n_fields, std::uint64_t seed, AuditLog& log);

// pure Holder inequalities: the split-semigroup step, the Psi chain, and the
// homogeneous interpolation identity
void audit_holder_steps(const Equilibrium& eq, double beta, double k, double ell, int n_fields,
                        std::uint64_t seed, AuditLog& log);

// ||C f||_{k2} <= a <R>^{k2/2} ||f||_0
void audit_absorption_bound(const Equilibrium& eq, double a, double big_r, double k2,
                            int n_fields, std::uint64_t seed, AuditLog& log);

// discrete Nash inequality with the certified constant on localized bumps
void audit_nash(int d, double c_nash, int n_fields, std::uint64_t seed, AuditLog& log);

// variance-style centering: int |h - htilde|^2 dnu >= int |h - hhat|^2 dnu
void audit_centering(const Equilibrium& eq, double beta, int n_fields, std::uint64_t seed,
                     AuditLog& log);

} // namespace hypoc
