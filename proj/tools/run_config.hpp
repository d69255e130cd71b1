#pragma once

#include <limits>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "cusp/separatrix.hpp"

namespace cusp::cli {

class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Every key has a default, so no config file is needed.  The same names are
// accepted as --key options and as `key = value` lines in the --config file.
struct RunConfig {
    // integrator
    double rel_tol = 1e-10;
    double abs_tol = 1e-12;
    double max_step = std::numeric_limits<double>::infinity();
    std::size_t max_steps = 5'000'000;

    // shooting
    double offset = 1e-8;
    double H_floor = 1e-6;
    double r_max = 2000.0;
    double r_min = -200.0;
    double calibration_F = -1.0;

    // separatrix / curvature / asymptotics
    std::size_t barrier_samples = 10000;
    double isocline_H_min = 0.05;
    double isocline_H_max = 1.0;
    std::size_t isocline_points = 200;
    double cusp_r = -30.0;
    double flat_r = 500.0;
    double residual_r_max = 100.0;   // residual maxima are taken over [cusp_r, residual_r_max]

    // evolution
    std::vector<double> t_grid{10.0, 1.0, 0.0, -0.01, -0.2, -0.7};
    std::vector<double> delta_grid{-0.7, -0.5, -0.3, -0.2, -0.1, -0.05, -0.03, -0.02, -0.01, 0.0};
    double delta_width = 1e-4;
    std::size_t crossing_samples = 200000;
    double psi_y_max = 1e3;
    std::size_t psi_points = 1000;
    std::vector<double> history_F{-1.0, -10.0};
    double history_t_min = -0.9;
    double history_t_max = 100.0;
    std::size_t history_points = 401;

    // blow-up
    std::vector<double> shadow_r{10.0, 20.0, 40.0};

    // output
    std::string output_dir = "cusp_out";
    std::string format = "csv";

    /// Throws ConfigError.
    void validate() const;

    ShootConfig shoot() const;

    /// Sorted (key, value) pairs with values printed as parsed.
    std::vector<std::pair<std::string, std::string>> snapshot() const;
};

/// Registers every key on `app` (options fall through to subcommands).
void register_options(CLI::App& app, RunConfig& cfg);

/// Environment variable that overrides output_dir (the --out flag wins over it).
inline constexpr const char* kOutDirEnv = "CUSP_OUT_DIR";

}  // namespace cusp::cli
