#include "run_config.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace cusp::cli {

namespace {

void require(bool ok, const std::string& what) {
    if (!ok) throw ConfigError("invalid config: " + what);
}

std::string num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string list(const std::vector<double>& v) {
    std::string out = "[";
    for (std::size_t i = 0; i < v.size(); ++i) out += (i ? ", " : "") + num(v[i]);
    return out + "]";
}

}  // namespace

void RunConfig::validate() const {
    IntegratorControls c;
    c.rel_tol = rel_tol;
    c.abs_tol = abs_tol;
    c.max_step = max_step;
    c.max_steps = max_steps;
    try {
        c.validate();
        shoot().validate();
    } catch (const std::invalid_argument& e) {
        throw ConfigError(std::string("invalid config: ") + e.what());
    }
    require(barrier_samples >= 100, "barrier_samples must be at least 100");
    require(isocline_H_min > 0.0 && isocline_H_min < isocline_H_max, "need 0 < isocline_H_min < isocline_H_max");
    require(isocline_points >= 2, "isocline_points must be at least 2");
    require(cusp_r < 0.0 && flat_r > 0.0, "need cusp_r < 0 < flat_r");
    require(residual_r_max > cusp_r, "need residual_r_max > cusp_r");
    require(!t_grid.empty(), "t_grid is empty");
    for (double t : t_grid) require(std::isfinite(t) && t > -1.0, "t_grid values must exceed -1");
    require(delta_grid.size() >= 2, "delta_grid needs at least two values");
    for (double t : delta_grid) require(std::isfinite(t) && t > -1.0, "delta_grid values must exceed -1");
    require(delta_width > 0.0, "delta_width must be positive");
    require(crossing_samples >= 1000, "crossing_samples must be at least 1000");
    require(psi_y_max > 1.0 && psi_points >= 10, "need psi_y_max > 1 and psi_points >= 10");
    for (double F : history_F) require(F < 0.0, "history_F anchors must be negative");
    require(history_t_min > -1.0 && history_t_min <= 0.0 && history_t_max > 0.0,
            "need -1 < history_t_min <= 0 < history_t_max");
    require(history_points >= 3, "history_points must be at least 3");
    require(!shadow_r.empty(), "shadow_r is empty");
    for (double r : shadow_r) require(r > 0.0 && r <= r_max, "shadow_r values must lie in (0, r_max]");
    require(format == "csv" || format == "json" || format == "plot", "format must be csv, json or plot");
    require(!output_dir.empty(), "output_dir is empty");
}

ShootConfig RunConfig::shoot() const {
    ShootConfig s;
    s.offset = offset;
    s.H_floor = H_floor;
    s.r_max = r_max;
    s.r_min = r_min;
    s.calibration_F = calibration_F;
    s.controls.rel_tol = rel_tol;
    s.controls.abs_tol = abs_tol;
    s.controls.max_step = max_step;
    s.controls.max_steps = max_steps;
    return s;
}

std::vector<std::pair<std::string, std::string>> RunConfig::snapshot() const {
    std::vector<std::pair<std::string, std::string>> v{
        {"rel_tol", num(rel_tol)},
        {"abs_tol", num(abs_tol)},
        {"max_step", num(max_step)},
        {"max_steps", std::to_string(max_steps)},
        {"offset", num(offset)},
        {"H_floor", num(H_floor)},
        {"r_max", num(r_max)},
        {"r_min", num(r_min)},
        {"calibration_F", num(calibration_F)},
        {"barrier_samples", std::to_string(barrier_samples)},
        {"isocline_H_min", num(isocline_H_min)},
        {"isocline_H_max", num(isocline_H_max)},
        {"isocline_points", std::to_string(isocline_points)},
        {"cusp_r", num(cusp_r)},
        {"flat_r", num(flat_r)},
        {"residual_r_max", num(residual_r_max)},
        {"t_grid", list(t_grid)},
        {"delta_grid", list(delta_grid)},
        {"delta_width", num(delta_width)},
        {"crossing_samples", std::to_string(crossing_samples)},
        {"psi_y_max", num(psi_y_max)},
        {"psi_points", std::to_string(psi_points)},
        {"history_F", list(history_F)},
        {"history_t_min", num(history_t_min)},
        {"history_t_max", num(history_t_max)},
        {"history_points", std::to_string(history_points)},
        {"shadow_r", list(shadow_r)},
        {"output_dir", output_dir},
        {"format", format},
    };
    std::sort(v.begin(), v.end());
    return v;
}

void register_options(CLI::App& app, RunConfig& cfg) {
    auto* g = "Run configuration";
    app.add_option("--rel_tol", cfg.rel_tol, "integrator relative tolerance")->group(g)->capture_default_str();
    app.add_option("--abs_tol", cfg.abs_tol, "integrator absolute tolerance")->group(g)->capture_default_str();
    app.add_option("--max_step", cfg.max_step, "largest step in r")->group(g)->capture_default_str();
    app.add_option("--max_steps", cfg.max_steps, "step budget per leg")->group(g)->capture_default_str();
    app.add_option("--offset", cfg.offset, "shooting offset from the saddle")->group(g)->capture_default_str();
    app.add_option("--H_floor", cfg.H_floor, "stop the flat-end leg when H drops below this")->group(g)->capture_default_str();
    app.add_option("--r_max", cfg.r_max, "calibrated r where the flat-end leg ends")->group(g)->capture_default_str();
    app.add_option("--r_min", cfg.r_min, "calibrated lower r bound of the cusp leg")->group(g)->capture_default_str();
    app.add_option("--calibration_F", cfg.calibration_F, "F value placed at r = 0")->group(g)->capture_default_str();
    app.add_option("--barrier_samples", cfg.barrier_samples, "dense samples for the barrier checks")->group(g)->capture_default_str();
    app.add_option("--isocline_H_min", cfg.isocline_H_min)->group(g)->capture_default_str();
    app.add_option("--isocline_H_max", cfg.isocline_H_max)->group(g)->capture_default_str();
    app.add_option("--isocline_points", cfg.isocline_points)->group(g)->capture_default_str();
    app.add_option("--cusp_r", cfg.cusp_r, "r where the cusp-end ratios are read")->group(g)->capture_default_str();
    app.add_option("--flat_r", cfg.flat_r, "r where the flat-end ratios are read")->group(g)->capture_default_str();
    app.add_option("--residual_r_max", cfg.residual_r_max)->group(g)->capture_default_str();
    app.add_option("--t_grid", cfg.t_grid, "times for crossings and Psi scans")->group(g)->delimiter(',')->capture_default_str();
    app.add_option("--delta_grid", cfg.delta_grid, "coarse grid of negative times for the threshold scan")
        ->group(g)->delimiter(',')->capture_default_str();
    app.add_option("--delta_width", cfg.delta_width, "bracket width for the thresholds")->group(g)->capture_default_str();
    app.add_option("--crossing_samples", cfg.crossing_samples)->group(g)->capture_default_str();
    app.add_option("--psi_y_max", cfg.psi_y_max)->group(g)->capture_default_str();
    app.add_option("--psi_points", cfg.psi_points)->group(g)->capture_default_str();
    app.add_option("--history_F", cfg.history_F, "anchors of the pointwise histories, by their F value")
        ->group(g)->delimiter(',')->capture_default_str();
    app.add_option("--history_t_min", cfg.history_t_min)->group(g)->capture_default_str();
    app.add_option("--history_t_max", cfg.history_t_max)->group(g)->capture_default_str();
    app.add_option("--history_points", cfg.history_points)->group(g)->capture_default_str();
    app.add_option("--shadow_r", cfg.shadow_r, "orbit samples used to pick the tracked point")
        ->group(g)->delimiter(',')->capture_default_str();
    app.add_option("--output_dir", cfg.output_dir, "output directory")->group(g)->capture_default_str();
    app.add_option("--format", cfg.format, "csv | json | plot")->group(g)->capture_default_str();
}

}  // namespace cusp::cli
