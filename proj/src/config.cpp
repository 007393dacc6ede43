#include "hypoc/config.hpp"

#include "hypoc/grid.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace hypoc {

namespace {

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

using KvMap = std::map<std::string, std::string>;

KvMap parse_kv(const std::string& text, const std::string& origin) {
    KvMap kv;
    std::istringstream in(text);
    std::string line, section;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']')
                throw ConfigError(origin + ":" + std::to_string(lineno) + ": malformed section header");
            section = trim(line.substr(1, line.size() - 2));
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError(origin + ":" + std::to_string(lineno) + ": expected key = value");
        const std::string key = trim(line.substr(0, eq));
        const std::string val = trim(line.substr(eq + 1));
        if (key.empty()) throw ConfigError(origin + ":" + std::to_string(lineno) + ": empty key");
        kv[section.empty() ? key : section + "." + key] = val;
    }
    return kv;
}

class Reader {
  public:
    explicit Reader(KvMap kv) : kv_(std::move(kv)) {}

    bool has(const std::string& key) const { return kv_.count(key) > 0; }

    std::string str(const std::string& key, const std::string& dflt) {
        auto it = kv_.find(key);
        if (it == kv_.end()) return dflt;
        used_.insert(key);
        return it->second;
    }

    double num(const std::string& key, double dflt) {
        auto it = kv_.find(key);
        if (it == kv_.end()) return dflt;
        used_.insert(key);
        try {
            std::size_t pos = 0;
            const double v = std::stod(it->second, &pos);
            if (pos != it->second.size()) throw std::invalid_argument("trailing characters");
            return v;
        } catch (const std::exception&) {
            throw ConfigError(key + ": not a number: '" + it->second + "'");
        }
    }

    int integer(const std::string& key, int dflt) {
        const double v = num(key, dflt);
        if (v != std::floor(v)) throw ConfigError(key + ": expected an integer");
        return (int)v;
    }

    std::vector<double> numbers(const std::string& key) {
        auto it = kv_.find(key);
        if (it == kv_.end()) return {};
        used_.insert(key);
        std::vector<double> out;
        std::istringstream ss(it->second);
        std::string tok;
        while (std::getline(ss, tok, ',')) {
            tok = trim(tok);
            if (tok.empty()) continue;
            try {
                out.push_back(std::stod(tok));
            } catch (const std::exception&) {
                throw ConfigError(key + ": not a number list: '" + it->second + "'");
            }
        }
        return out;
    }

    void check_all_used() const {
        for (const auto& [key, val] : kv_)
            if (!used_.count(key)) throw ConfigError(key + ": unknown configuration key");
    }

  private:
    KvMap kv_;
    std::set<std::string> used_;
};

} // namespace

ExperimentConfig parse_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("config: cannot open '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config_text(ss.str(), path);
}

ExperimentConfig parse_config_text(const std::string& text, const std::string& origin) {
    Reader r(parse_kv(text, origin));
    ExperimentConfig cfg;

    const std::string mode = r.str("experiment.mode", "kinetic");
    if (mode == "kinetic")
        cfg.mode = Mode::kinetic;
    else if (mode == "homogeneous")
        cfg.mode = Mode::homogeneous;
    else if (mode == "spectral")
        cfg.mode = Mode::spectral;
    else if (mode == "rates-sweep")
        cfg.mode = Mode::rates_sweep;
    else
        throw ConfigError("experiment.mode: unknown mode '" + mode + "'");

    cfg.alpha = r.num("experiment.alpha", cfg.alpha);
    cfg.k = r.num("experiment.k", cfg.k);
    cfg.d = r.integer("experiment.d", cfg.d);

    const std::string kind = r.str("collision.kind", "fokker_planck");
    if (kind == "fokker_planck")
        cfg.collision.kind = CollisionKind::fokker_planck;
    else if (kind == "scattering")
        cfg.collision.kind = CollisionKind::scattering;
    else
        throw ConfigError("collision.kind: unknown kind '" + kind + "'");
    cfg.collision.beta = r.num("collision.beta", 2.0 * (1.0 - cfg.alpha));
    cfg.collision.gamma = r.num("collision.gamma", 0.0);
    const std::string fam = r.str("collision.kernel", "separable");
    if (fam == "separable")
        cfg.collision.family = KernelFamily::separable;
    else if (fam == "boltzmann")
        cfg.collision.family = KernelFamily::boltzmann;
    else
        throw ConfigError("collision.kernel: unknown family '" + fam + "'");

    cfg.grid.x_points = r.integer("grid.x_points", cfg.grid.x_points);
    cfg.grid.v_points = r.integer("grid.v_points", cfg.grid.v_points);
    cfg.grid.x_extent = r.num("grid.x_extent", cfg.grid.x_extent);
    cfg.grid.v_cutoff = r.num("grid.v_cutoff", cfg.grid.v_cutoff);
    cfg.grid.k_max = r.num("grid.k_max", cfg.grid.k_max);

    cfg.solver.dt = r.num("solver.dt", cfg.solver.dt);
    cfg.solver.t_end = r.num("solver.t_end", cfg.solver.t_end);
    const std::string split = r.str("solver.splitting", "strang");
    if (split == "strang")
        cfg.solver.splitting = Splitting::strang;
    else if (split == "lie")
        cfg.solver.splitting = Splitting::lie;
    else
        throw ConfigError("solver.splitting: unknown splitting '" + split + "'");
    const std::string scheme = r.str("solver.collision_solver", "crank_nicolson");
    if (scheme == "crank_nicolson")
        cfg.solver.scheme = CollisionScheme::crank_nicolson;
    else if (scheme == "implicit_euler")
        cfg.solver.scheme = CollisionScheme::implicit_euler;
    else
        throw ConfigError("solver.collision_solver: unknown solver '" + scheme + "'");
    cfg.solver.output_every = r.integer("solver.output_every", cfg.solver.output_every);

    cfg.output.dir = r.str("output.dir", cfg.output.dir);
    cfg.output.prefix = r.str("output.prefix", cfg.output.prefix);
    const double seed = r.num("output.seed", (double)cfg.output.seed);
    if (seed < 0 || seed != std::floor(seed)) throw ConfigError("output.seed: expected a nonnegative integer");
    cfg.output.seed = (std::uint64_t)seed;

    cfg.init.bump_sigma = r.num("init.bump_sigma", cfg.init.bump_sigma);
    cfg.init.perturbation = r.num("init.perturbation", cfg.init.perturbation);

    cfg.spectral_R = r.num("spectral.R", cfg.spectral_R);
    cfg.spectral_n = r.integer("spectral.n", cfg.spectral_n);

    cfg.sweep_axis = r.str("sweep.axis", cfg.sweep_axis);
    cfg.sweep_values = r.numbers("sweep.values");

    r.check_all_used();
    validate_config(cfg);
    return cfg;
}

void validate_config(ExperimentConfig& cfg) {
    if (!(cfg.alpha > 0) || cfg.alpha > 2.0)
        throw ConfigError("experiment.alpha: must lie in (0, 2]");
    if (!(cfg.k > 0)) throw ConfigError("experiment.k: must be positive");
    if (cfg.d != 1)
        throw ConfigError("experiment.d: only d = 1 simulations are supported (formulas stay d-generic)");
    try {
        validate_spec(cfg.collision, cfg.alpha, cfg.d);
    } catch (const std::exception& e) {
        throw ConfigError(std::string("collision: ") + e.what());
    }
    if (cfg.grid.x_points < 8 || cfg.grid.x_points % 2 != 0)
        throw ConfigError("grid.x_points: must be even and >= 8");
    if (cfg.grid.v_points < 33) throw ConfigError("grid.v_points: must be >= 33");
    if (cfg.grid.v_points % 2 == 0) throw ConfigError("grid.v_points: must be odd");
    if (!(cfg.solver.dt > 0)) throw ConfigError("solver.dt: must be positive");
    if (cfg.solver.t_end < cfg.solver.dt) throw ConfigError("solver.t_end: must be >= dt");
    if (cfg.solver.output_every < 1) throw ConfigError("solver.output_every: must be >= 1");

    // derived tail requirement: the largest weight exponent in the experiment
    const double ell = (cfg.collision.kind == CollisionKind::fokker_planck)
                           ? 2.0 - cfg.alpha
                           : cfg.collision.beta;
    const double k2 = cfg.k + 2.0 * ell + 2.0;
    const double needed = std::max({k2, cfg.collision.beta + 4.0, 10.0});
    if (cfg.grid.k_max == 0) cfg.grid.k_max = needed + 1.0;
    if (cfg.grid.k_max < needed)
        throw ConfigError("grid.k_max: must cover the weights in play (need >= " +
                          std::to_string(needed) + ")");
    if (cfg.grid.v_cutoff == 0)
        cfg.grid.v_cutoff = velocity_cutoff(cfg.alpha, cfg.grid.k_max);
    // x_extent == 0 means "derive from the measured diffusivity"; that needs
    // the assembled collision operator and happens in make_context
    if (cfg.grid.x_extent < 0) throw ConfigError("grid.x_extent: must be positive (0 = auto)");
}

std::string to_text(const ExperimentConfig& cfg) {
    std::ostringstream os;
    os.precision(17);
    os << "[experiment]\n";
    os << "mode = "
       << (cfg.mode == Mode::kinetic       ? "kinetic"
           : cfg.mode == Mode::homogeneous ? "homogeneous"
           : cfg.mode == Mode::spectral    ? "spectral"
                                           : "rates-sweep")
       << "\n";
    os << "alpha = " << cfg.alpha << "\nk = " << cfg.k << "\nd = " << cfg.d << "\n";
    os << "\n[collision]\n";
    os << "kind = " << (cfg.collision.kind == CollisionKind::fokker_planck ? "fokker_planck" : "scattering")
       << "\n";
    os << "kernel = " << (cfg.collision.family == KernelFamily::separable ? "separable" : "boltzmann")
       << "\n";
    os << "beta = " << cfg.collision.beta << "\ngamma = " << cfg.collision.gamma << "\n";
    os << "\n[grid]\n";
    os << "x_points = " << cfg.grid.x_points << "\nv_points = " << cfg.grid.v_points << "\n";
    os << "x_extent = " << cfg.grid.x_extent << "\nv_cutoff = " << cfg.grid.v_cutoff << "\n";
    os << "k_max = " << cfg.grid.k_max << "\n";
    os << "\n[solver]\n";
    os << "dt = " << cfg.solver.dt << "\nt_end = " << cfg.solver.t_end << "\n";
    os << "splitting = " << (cfg.solver.splitting == Splitting::strang ? "strang" : "lie") << "\n";
    os << "collision_solver = "
       << (cfg.solver.scheme == CollisionScheme::crank_nicolson ? "crank_nicolson" : "implicit_euler")
       << "\n";
    os << "output_every = " << cfg.solver.output_every << "\n";
    os << "\n[init]\n";
    os << "bump_sigma = " << cfg.init.bump_sigma << "\nperturbation = " << cfg.init.perturbation
       << "\n";
    os << "\n[output]\n";
    os << "dir = " << cfg.output.dir << "\nprefix = " << cfg.output.prefix << "\n";
    os << "seed = " << cfg.output.seed << "\n";
    if (cfg.mode == Mode::spectral) {
        os << "\n[spectral]\n";
        os << "R = " << cfg.spectral_R << "\nn = " << cfg.spectral_n << "\n";
    }
    if (cfg.mode == Mode::rates_sweep) {
        os << "\n[sweep]\n";
        os << "axis = " << cfg.sweep_axis << "\nvalues =";
        for (std::size_t i = 0; i < cfg.sweep_values.size(); ++i)
            os << (i ? "," : " ") << cfg.sweep_values[i];
        os << "\n";
    }
    return os.str();
}

} // namespace hypoc
