#pragma once

#include "hypoc/collision.hpp"
#include "hypoc/transport.hpp"

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace hypoc {

struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

enum class Mode { kinetic, homogeneous, spectral, rates_sweep };

struct GridConfig {
    int x_points = 256;
    int v_points = 257;
    double x_extent = 0;  // 0 = derived from the heat-width rule
    double v_cutoff = 0;  // 0 = derived from the tail rule
    double k_max = 0;     // 0 = derived from the weights in play
};

struct OutputConfig {
    std::string dir = "out";
    std::string prefix = "run";
    std::uint64_t seed = 12345;
};

struct InitConfig {
    double bump_sigma = 0;      // 0 = L/24
    double perturbation = 0.5;  // amplitude of the random velocity perturbation
};

struct ExperimentConfig {
    Mode mode = Mode::kinetic;
    double alpha = 0.5;
    double k = 2.0;
    int d = 1;
    CollisionSpec collision;
    GridConfig grid;
    SolverConfig solver;
    OutputConfig output;
    InitConfig init;
    // spectral mode
    double spectral_R = 16384;
    int spectral_n = 4801;
    // sweep mode
    std::string sweep_axis = "k";
    std::vector<double> sweep_values;
};

// Flat key-value text format with [sections]; '#' starts a comment.
ExperimentConfig parse_config(const std::string& path);
ExperimentConfig parse_config_text(const std::string& text, const std::string& origin = "<text>");

// Cross-field consistency; fills the derived grid quantities. Throws
// ConfigError naming the offending field.
void validate_config(ExperimentConfig& cfg);

std::string to_text(const ExperimentConfig& cfg); // resolved config echo

} // namespace hypoc
