// Batch driver: kinetic runs, homogeneous relaxation, spectral constants,
// rate sweeps, and the randomized audit battery. Exit code 0 iff every audit
// passes.

#include "hypoc/config.hpp"
#include "hypoc/experiment.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <optional>
#include <string>

namespace {

struct CommonArgs {
    std::string config_path;
    std::string out_dir;
    std::uint64_t seed = 0;
    bool has_seed = false;
    bool check_only = false;
};

void attach(CLI::App* cmd, CommonArgs& args) {
    cmd->add_option("--config", args.config_path, "configuration file")->required();
    cmd->add_option("--out", args.out_dir, "output directory (overrides [output] dir)");
    auto* seed_opt = cmd->add_option("--seed", args.seed, "random seed (overrides [output] seed)");
    cmd->add_flag("--check-only", args.check_only,
                  "run the randomized audits on seeded fields, no time integration");
    cmd->final_callback([seed_opt, &args] { args.has_seed = seed_opt->count() > 0; });
}

int dispatch(const CommonArgs& args, std::optional<hypoc::Mode> forced_mode) {
    hypoc::ExperimentConfig cfg = hypoc::parse_config(args.config_path);
    if (forced_mode) cfg.mode = *forced_mode;
    std::optional<std::uint64_t> seed;
    if (args.has_seed) seed = args.seed;
    return hypoc::run_experiment(cfg, args.out_dir, seed, args.check_only);
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"kinetic hypocoercivity verification suite"};
    app.require_subcommand(1);

    CommonArgs sim, hom, spec, sweep, audit;
    auto* c_sim = app.add_subcommand("simulate", "kinetic run with the full inequality audit");
    attach(c_sim, sim);
    auto* c_hom = app.add_subcommand("homogeneous", "velocity-space Fokker-Planck relaxation");
    attach(c_hom, hom);
    auto* c_spec = app.add_subcommand("spectral", "weighted Poincare constants and threshold study");
    attach(c_spec, spec);
    auto* c_sweep = app.add_subcommand("sweep", "rate sweep over a config axis");
    attach(c_sweep, sweep);
    auto* c_audit = app.add_subcommand("audit", "randomized audit battery without time integration");
    attach(c_audit, audit);

    CLI11_PARSE(app, argc, argv);

    try {
        if (c_sim->parsed()) return dispatch(sim, hypoc::Mode::kinetic);
        if (c_hom->parsed()) return dispatch(hom, hypoc::Mode::homogeneous);
        if (c_spec->parsed()) return dispatch(spec, hypoc::Mode::spectral);
        if (c_sweep->parsed()) return dispatch(sweep, hypoc::Mode::rates_sweep);
        if (c_audit->parsed()) {
            CommonArgs a = audit;
            a.check_only = true;
            return dispatch(a, std::nullopt);
        }
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
    return 2;
}
