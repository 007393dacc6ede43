// Acceptance suite: one check per criterion, each printing a pass/fail line.
// Exit code 0 iff every criterion passes.

#include "hypoc/audits.hpp"
#include "hypoc/config.hpp"
#include "hypoc/experiment.hpp"
#include "hypoc/moments.hpp"
#include "hypoc/reference.hpp"
#include "hypoc/rng.hpp"
#include "hypoc/spectral.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

using namespace hypoc;

namespace {

struct Criterion {
    int id;
    std::string name;
    std::function<bool(std::string&)> run;
};

double now_s() {
    return std::chrono::duration<double>(
               std::chrono::steady_clock::now().time_since_epoch())
        .count();
}

ExperimentConfig base_config() {
    ExperimentConfig cfg;
    cfg.mode = Mode::kinetic;
    cfg.alpha = 0.5;
    cfg.k = 2.0;
    cfg.d = 1;
    cfg.collision.kind = CollisionKind::fokker_planck;
    cfg.collision.beta = 1.0;
    cfg.grid.x_points = 256;
    cfg.grid.v_points = 257;
    cfg.solver.dt = 1e-3;
    cfg.solver.t_end = 20.0;
    cfg.solver.output_every = 100;
    cfg.output.seed = 20260810;
    return cfg;
}

bool log_ok(const AuditLog& log, std::string& detail) {
    bool ok = true;
    double worst = 1e300;
    std::string worst_name;
    for (const auto& a : log.entries()) {
        const double rel = a.margin / (a.scale > 0 ? a.scale : 1.0);
        if (rel < worst) {
            worst = rel;
            worst_name = a.name;
        }
        if (!a.pass) {
            ok = false;
            detail += " FAIL[" + a.name + " margin=" + format_g17(a.margin) + "]";
        }
    }
    if (ok) detail += " worst margin " + format_g17(worst) + " (" + worst_name + ")";
    return ok;
}

// --- criterion 1: operator identities --------------------------------------
bool criterion1(std::string& detail) {
    auto eq = build_equilibrium(0.5, 1, make_velocity_grid(257, velocity_cutoff(0.5, 11.0)), 11.0);
    AuditLog log;
    {
        CollisionSpec s;
        s.kind = CollisionKind::fokker_planck;
        s.beta = 1.0;
        CollisionOperator op(s, eq);
        audit_operator_identities(op, 50, 101, log);
    }
    {
        CollisionSpec s;
        s.kind = CollisionKind::scattering;
        s.beta = 1.0;
        CollisionOperator op(s, eq);
        audit_operator_identities(op, 50, 102, log);
    }
    return log_ok(log, detail);
}

// --- criterion 2: micro-coercivity ------------------------------------------
bool criterion2(std::string& detail) {
    auto eq = build_equilibrium(0.5, 1, make_velocity_grid(257, velocity_cutoff(0.5, 11.0)), 11.0);
    auto xg = make_spatial_grid(32, 60.0);
    Diagnostics diag(xg, eq, 1.0, 2.0);
    AuditLog log;
    {
        CollisionSpec s;
        s.kind = CollisionKind::scattering;
        s.beta = 1.0;
        CollisionOperator op(s, eq);
        audit_micro_coercivity(op, diag, op.micro_coercivity(), 200, 201, log);
    }
    {
        CollisionSpec s;
        s.kind = CollisionKind::fokker_planck;
        s.beta = 1.0;
        CollisionOperator op(s, eq);
        audit_micro_coercivity(op, diag, corollary_on_grid(eq, 1.0), 200, 202, log);
    }
    return log_ok(log, detail);
}

// --- criterion 3: spectral threshold ----------------------------------------
bool criterion3(std::string& detail) {
    bool ok = true;
    auto res = compute_c_star(0.5, 1.0, 16384.0, 2401);
    detail += " c_star=" + format_g17(res.c_star) + " spread=" + format_g17(res.spread);
    if (!(res.c_star > 0.0 && res.c_star <= 0.0625)) {
        ok = false;
        detail += " FAIL[cap]";
    }
    if (!res.converged) {
        ok = false;
        detail += " FAIL[2% stability]";
    }
    double prev = 0.0;
    for (double R : {64.0, 128.0, 256.0, 512.0}) {
        const double lam = schrodinger_eigenvalue(build_schrodinger(0.5, 0.5, R, 1201));
        if (prev > 0.0 && !(lam < 0.7 * prev)) {
            ok = false;
            detail += " FAIL[gap drop at R=" + format_g17(R) + "]";
        }
        prev = lam;
    }
    detail += " last_gap=" + format_g17(prev);
    return ok;
}

// --- criterion 4: entropy production along the pinned run -------------------
bool criterion4(std::string& detail) {
    auto cfg = base_config();
    auto ctx = make_context(cfg);
    auto res = run_kinetic(ctx, "acceptance_out");
    bool ok = true;
    if (!(res.t_wrap > cfg.solver.t_end)) {
        ok = false;
        detail += " FAIL[torus window closed at t=" + format_g17(res.t_wrap) + "]";
    }
    double m_prop2 = 1e300;
    bool h_monotone = true;
    for (const auto& a : res.audits.entries()) {
        if (a.name.rfind("prop2", 0) == 0) {
            m_prop2 = a.margin;
            if (!a.pass) ok = false;
        }
        if (a.name.rfind("H monotone", 0) == 0 && !a.pass) {
            h_monotone = false;
            ok = false;
        }
    }
    detail += " prop2 margin=" + format_g17(m_prop2) + (h_monotone ? " H monotone" : " FAIL[H]");
    auto study = entropy_identity_study(ctx, 1.0);
    detail += " dH/dt ratio=" + format_g17(study.ratio);
    if (!(study.ratio >= 3.2 && study.ratio <= 4.8)) {
        ok = false;
        detail += " FAIL[O(dt^2) ratio]";
    }
    return ok;
}

// --- criterion 5: rate trend over the k sweep --------------------------------
bool criterion5(std::string& detail) {
    auto cfg = base_config();
    cfg.mode = Mode::rates_sweep;
    cfg.sweep_axis = "k";
    cfg.sweep_values = {0.25, 0.5, 1.0, 2.0, 4.0};
    cfg.solver.dt = 0.02;
    cfg.solver.t_end = 480.0;
    cfg.solver.output_every = 200;
    cfg.output.prefix = "sweep";
    auto res = run_sweep(cfg, "acceptance_out");
    bool ok = true;
    std::ostringstream os;
    for (const auto& p : res.points) {
        os << " k=" << p.value << ":slope=" << -p.zeta_fit;
        if (!(p.zeta_fit >= 0.7 * p.zeta_pred)) {
            ok = false;
            os << "(FAIL vs -0.7*zeta=" << -0.7 * p.zeta_pred << ")";
        }
        if (p.bound_violations != 0) {
            ok = false;
            os << "(FAIL bound violations=" << p.bound_violations << ")";
        }
    }
    for (std::size_t i = 0; i + 1 < res.points.size(); ++i)
        if (res.points[i + 1].zeta_fit < res.points[i].zeta_fit - 0.08) {
            ok = false;
            os << " FAIL[ordering at k=" << res.points[i + 1].value << "]";
        }
    if (!res.audits.all_pass()) {
        ok = false;
        os << " FAIL[run audits]";
        for (const auto& a : res.audits.entries())
            if (!a.pass) os << " [" << a.name << "]";
    }
    detail += os.str();
    return ok;
}

// --- criterion 6: moment propagation ----------------------------------------
bool criterion6(std::string& detail) {
    auto cfg = base_config();
    bool ok = true;

    // split-semigroup trajectory with per-step outputs
    auto eq = build_equilibrium(0.5, 1, make_velocity_grid(257, velocity_cutoff(0.5, 11.0)), 11.0);
    auto op = std::make_shared<CollisionOperator>(cfg.collision, eq);
    auto sp = make_splitting(*op, cfg.k, cfg.k + 2.0 * (2.0 - cfg.alpha) + 2.0);
    SolverConfig bcfg;
    bcfg.dt = 5e-3;
    bcfg.t_end = 20.0;
    bcfg.output_every = 1;
    auto xg = make_spatial_grid(8, 60.0);
    auto f0 = make_field(xg, eq.grid);
    FieldSampler sampler(601);
    auto p = sampler.velocity_field(eq, 6, true);
    auto q = sampler.spatial_profile(xg);
    for (int iv = 0; iv < f0.nv; ++iv)
        for (int ix = 0; ix < f0.nx; ++ix) f0.at(iv, ix) = (2.0 + q[ix]) * p[iv];
    auto bs = semigroup_B_decay(xg, op, sp, f0, bcfg);
    if (!bs.monotone_k1) {
        ok = false;
        detail += " FAIL[k1 norm not monotone]";
    }
    detail += " closed-form margin=" + format_g17(bs.closed_form_min_margin);
    if (!(bs.closed_form_min_margin >= -1e-8)) {
        ok = false;
        detail += " FAIL[closed-form bound]";
    }

    // propagation along a kinetic run
    cfg.solver.dt = 2e-3;
    cfg.solver.t_end = 5.0;
    cfg.grid.x_points = 128;
    cfg.solver.output_every = 25;
    cfg.output.prefix = "moments";
    auto ctx = make_context(cfg);
    auto res = run_kinetic(ctx, "acceptance_out");
    for (const auto& a : res.audits.entries())
        if (a.name.rfind("moment propagation", 0) == 0) {
            detail += " sup<=K_k margin=" + format_g17(a.margin);
            if (!a.pass) {
                ok = false;
                detail += " FAIL[K_k]";
            }
        }
    detail += " K_k=" + format_g17(res.moment_bound.kk);
    return ok;
}

// --- criterion 7: homogeneous algebraic bound --------------------------------
bool criterion7(std::string& detail) {
    auto cfg = base_config();
    cfg.mode = Mode::homogeneous;
    cfg.solver.dt = 0.01;
    cfg.solver.t_end = 50.0;
    cfg.solver.output_every = 10;
    cfg.output.prefix = "homog";
    auto ctx = make_context(cfg);
    auto res = run_homogeneous_mode(ctx, "acceptance_out");
    bool ok = res.audits.all_pass();
    detail += " bound margin=" + format_g17(res.run.min_bound_margin) +
              " tail slope=" + format_g17(res.bound_tail_slope);
    if (!ok)
        for (const auto& a : res.audits.entries())
            if (!a.pass) detail += " FAIL[" + a.name + "]";
    return ok;
}

// --- criterion 8: pure inequality audits -------------------------------------
bool criterion8(std::string& detail) {
    auto eq = build_equilibrium(0.5, 1, make_velocity_grid(257, velocity_cutoff(0.5, 11.0)), 11.0);
    CollisionSpec s;
    s.kind = CollisionKind::fokker_planck;
    s.beta = 1.0;
    auto op = std::make_shared<CollisionOperator>(s, eq);
    auto xg = make_spatial_grid(32, 60.0);
    Diagnostics diag(xg, eq, 1.0, 2.0);
    auto sc = step_constants(eq, *op, 1.0, 2.0, corollary_on_grid(eq, 1.0));
    AuditLog log;
    audit_holder_steps(eq, 1.0, 2.0, 1.5, 500, 801, log);
    audit_nash(1, nash_constant(1), 500, 802, log);
    audit_production_bounds(*op, diag, sc, 500, 803, log);
    audit_centering(eq, 1.0, 500, 804, log);
    return log_ok(log, detail);
}

} // namespace

int main(int argc, char** argv) {
    std::vector<Criterion> criteria = {
        {1, "operator identities and dissipation oracles (<10s)", criterion1},
        {2, "micro-coercivity for L2 (closed constant) and L1 (spectral constant) (<30s)",
         criterion2},
        {3, "spectral threshold: cap, 2% stability, vanishing gap below threshold (<60s)",
         criterion3},
        {4, "entropy production along the pinned kinetic run + O(dt^2) identity", criterion4},
        {5, "rate trend over the k sweep with the Groenwall bound", criterion5},
        {6, "moment propagation: Duhamel constant, monotone split semigroup (<2min)", criterion6},
        {7, "homogeneous algebraic bound with the spectral constant (<1min)", criterion7},
        {8, "pure inequality audits: Holder, Nash, Cauchy-Schwarz, centering", criterion8},
    };
    const double caps[9] = {0, 10.0, 30.0, 60.0, 0, 0, 120.0, 60.0, 0};

    int only = 0;
    if (argc > 1) only = std::atoi(argv[1]);
    bool all_ok = true;
    for (const auto& c : criteria) {
        if (only && c.id != only) continue;
        std::string detail;
        const double t0 = now_s();
        bool ok = false;
        try {
            ok = c.run(detail);
        } catch (const std::exception& e) {
            detail += std::string(" exception: ") + e.what();
        }
        const double dt = now_s() - t0;
        if (caps[c.id] > 0 && dt > caps[c.id]) {
            ok = false;
            detail += " FAIL[runtime cap]";
        }
        std::printf("[%s] criterion %d: %s  (%.1fs)%s\n", ok ? "PASS" : "FAIL", c.id,
                    c.name.c_str(), dt, detail.c_str());
        std::fflush(stdout);
        all_ok = all_ok && ok;
    }
    return all_ok ? 0 : 1;
}
