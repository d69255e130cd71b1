#include "cusp/separatrix.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace cusp {

std::string to_string(IsoclineKind k) {
    switch (k) {
        case IsoclineKind::vertical: return "vertical";
        case IsoclineKind::horizontal: return "horizontal";
        case IsoclineKind::oblique: return "oblique";
    }
    return "unknown";
}

namespace {

double isocline_scale(IsoclineKind kind) {
    switch (kind) {
        case IsoclineKind::vertical: return 1.0;
        case IsoclineKind::horizontal: return 0.5;
        case IsoclineKind::oblique: return 2.0;
    }
    return 0.0;
}

}  // namespace

double isocline_F(IsoclineKind kind, double H) {
    if (H == 0.0) throw std::domain_error("isocline_F: H = 0");
    return isocline_scale(kind) * (2.0 * H - 1.0 / (2.0 * H));
}

IsoclineSlopes isocline_slopes_at_saddle() {
    auto slope = [](IsoclineKind k) {
        const double H = 0.5;
        return isocline_scale(k) * (2.0 + 1.0 / (2.0 * H * H));
    };
    return {slope(IsoclineKind::vertical), slope(IsoclineKind::horizontal), slope(IsoclineKind::oblique)};
}

double oblique_barrier_margin(double H) {
    if (H == 0.0) throw std::domain_error("oblique_barrier_margin: H = 0");
    return -2.0 * H * H + 1.0 / (2.0 * H * H) - 1.5;
}

void ShootConfig::validate() const {
    if (!(offset > 0.0)) throw std::invalid_argument("shooting offset must be positive");
    if (direction != 1 && direction != -1) throw std::invalid_argument("shooting direction must be +1 or -1");
    if (!(H_floor > 0.0)) throw std::invalid_argument("H_floor must be positive");
    if (!(saddle_radius > 0.0) || saddle_radius >= offset) {
        throw std::invalid_argument("saddle_radius must be positive and below the offset");
    }
    if (!(r_min < 0.0 && r_max > 0.0)) throw std::invalid_argument("calibrated range must contain 0");
    controls.validate();
}

std::array<double, 2> unstable_direction() {
    const double slope = 3.0 + std::sqrt(5.0);
    const double n = std::hypot(1.0, slope);
    return {1.0 / n, slope / n};
}

Trajectory shoot_separatrix(const ShootConfig& cfg) {
    cfg.validate();
    const auto u = unstable_direction();
    const double sgn = static_cast<double>(cfg.direction);
    const PhasePoint start{kSaddle.H + sgn * cfg.offset * u[0], kSaddle.F + sgn * cfg.offset * u[1]};

    auto band_guard = [](double, const PhaseState& y) { return !(y[kH] > 0.0 && y[kH] < 0.5); };

    // Forward to the calibration level.
    IntegratorControls first = cfg.controls;
    first.direction = Direction::forward;
    first.r_min = -std::numeric_limits<double>::max();
    first.r_max = 1e4;
    first.stops = {stop_F_below(cfg.calibration_F), stop_H_below(cfg.H_floor), {"left_band", band_guard}};
    Trajectory head = integrate(start, 0.0, first);
    if (head.end_high().stop_name == "left_band") {
        throw SeparatrixError("shoot_separatrix: orbit left 0 < H < 1/2 (offset or direction wrong)");
    }
    const auto rc = head.first_crossing(kF, cfg.calibration_F);
    if (!rc) throw SeparatrixError("shoot_separatrix: calibration level of F never reached");

    // Forward from there to the calibrated r_max or the H floor.
    Trajectory forward = head;
    if (head.end_high().stop_name != "H_below_floor") {
        IntegratorControls second = first;
        second.r_max = *rc + cfg.r_max;
        second.stops = {stop_H_below(cfg.H_floor), {"left_band", band_guard}};
        Trajectory tail = integrate_state(head.states().back(), head.r_back(), second);
        if (tail.end_high().stop_name == "left_band") {
            throw SeparatrixError("shoot_separatrix: orbit left 0 < H < 1/2 on the forward leg");
        }
        forward = Trajectory::join(head, tail);
    }

    // Backward into the saddle.
    IntegratorControls back = cfg.controls;
    back.direction = Direction::backward;
    back.r_min = *rc + cfg.r_min;
    back.r_max = std::numeric_limits<double>::max();
    back.stops = {stop_near(kSaddle, cfg.saddle_radius), {"left_band", band_guard}};
    Trajectory backward = integrate(start, 0.0, back);
    if (backward.end_low().stop_name == "left_band") {
        throw SeparatrixError("shoot_separatrix: orbit left 0 < H < 1/2 on the backward leg");
    }

    Trajectory s = Trajectory::join(backward, forward);
    s.shift(-*rc);
    if (backward.end_low().reason == Termination::stop_predicate) s.set_low_limit(kSaddle);
    return s;
}

ShootingStability shooting_stability(const ShootConfig& cfg, const Trajectory& base, double r_lo, double r_hi,
                                     std::size_t samples) {
    ShootConfig half = cfg;
    half.offset = 0.5 * cfg.offset;
    half.saddle_radius = std::min(cfg.saddle_radius, 0.5 * half.offset);
    half.r_max = std::min(cfg.r_max, r_hi + 1.0);
    const Trajectory other = shoot_separatrix(half);

    ShootingStability out;
    out.offset = cfg.offset;
    out.r_lo = std::max({r_lo, base.r_front(), other.r_front()});
    out.r_hi = std::min({r_hi, base.r_back(), other.r_back()});
    for (std::size_t i = 0; i < samples; ++i) {
        const double r = out.r_lo + (out.r_hi - out.r_lo) * static_cast<double>(i) / static_cast<double>(samples - 1);
        out.max_dH = std::max(out.max_dH, std::abs(base.eval(kH, r) - other.eval(kH, r)));
    }
    return out;
}

std::vector<double> dense_sample_grid(const Trajectory& traj, std::size_t min_samples) {
    std::vector<double> out;
    if (traj.size() < 2) {
        if (!traj.empty()) out.push_back(traj.r_front());
        return out;
    }
    const std::size_t steps = traj.size() - 1;
    const std::size_t per_step = std::max<std::size_t>(2, (min_samples + steps - 1) / steps);
    out.reserve(steps * per_step + 1);
    for (std::size_t i = 0; i < steps; ++i) {
        const double a = traj.r(i), b = traj.r(i + 1);
        for (std::size_t k = 0; k < per_step; ++k) {
            out.push_back(a + (b - a) * static_cast<double>(k) / static_cast<double>(per_step));
        }
    }
    out.push_back(traj.r_back());
    return out;
}

namespace {

template <typename Margin>
BarrierReport scan(const Trajectory& traj, const std::vector<double>& grid, std::string curve, std::string claim,
                   Margin margin) {
    BarrierReport rep;
    rep.curve = std::move(curve);
    rep.claim = std::move(claim);
    rep.r = grid;
    rep.margin.reserve(grid.size());
    rep.min_margin = std::numeric_limits<double>::infinity();
    for (double r : grid) {
        const PhaseState y = traj.eval(r);
        const double m = margin(y);
        rep.margin.push_back(m);
        if (!(m >= rep.min_margin)) {
            rep.min_margin = m;
            rep.min_at = r;
        }
    }
    return rep;
}

}  // namespace

std::vector<BarrierReport> certify_barriers(const Trajectory& traj, std::size_t min_samples) {
    const std::vector<double> grid = dense_sample_grid(traj, min_samples);
    std::vector<BarrierReport> out;

    // Margins are written through W = H F - H^2 + 1/2, which stays accurate where
    // H F -> -1/2 and the literal polynomials lose every digit.
    out.push_back(scan(traj, grid, "horizontal_isocline", "S stays below F = H - 1/(4H)",
                       [](const PhaseState& y) { return (0.5 - 2.0 * y[kW]) / (2.0 * y[kH]); }));
    {
        auto rep = scan(traj, grid, "oblique_isocline", "S stays above F = 4H - 1/H",
                        [](const PhaseState& y) { return y[kF] - 4.0 * y[kH] + 1.0 / y[kH]; });
        double flux = std::numeric_limits<double>::infinity();
        for (double r : grid) {
            const double H = traj.eval(kH, r);
            if (H > 0.0 && H < 0.5) flux = std::min(flux, oblique_barrier_margin(H));
        }
        rep.flux_min = flux;
        out.push_back(std::move(rep));
    }
    out.push_back(scan(traj, grid, "vertical_isocline", "S stays right of F = 2H - 1/(2H)",
                       [](const PhaseState& y) { return (y[kH] * y[kH] - y[kW]) / y[kH]; }));
    out.push_back(scan(traj, grid, "dF_zero", "F' < 0 along S",
                       [](const PhaseState& y) { return 0.5 - 2.0 * y[kW]; }));
    out.push_back(scan(traj, grid, "sec_rx_zero", "H^2 - H F - 1/2 < 0 along S",
                       [](const PhaseState& y) { return y[kW]; }));
    return out;
}

OrbitChecks check_orbit(const Trajectory& traj) {
    OrbitChecks c;
    c.samples = traj.size();
    int side = 0;
    for (std::size_t i = 0; i < traj.size(); ++i) {
        const PhaseState& y = traj.state(i);
        const double H = y[kH], F = y[kF], W = y[kW];
        if (!(H > 0.0 && H < 0.5)) ++c.band_violations;
        if (F > 0.0) ++c.F_positive;
        const double dF = 2.0 * W - 0.5;
        if (!(dF > -0.5 && dF < 0.0)) ++c.dF_out_of_range;
        const double dH = W - H * H;
        if (!(dH < 0.0)) ++c.dH_nonnegative;
        if (i > 0 && !(H < traj.state(i - 1)[kH])) ++c.H_not_decreasing;
        const int s = dH < 0.0 ? -1 : (dH > 0.0 ? 1 : 0);
        if (side == 0) side = s;
        if (s != side) c.vertical_side_constant = false;
    }
    return c;
}

std::vector<IsoclineApproach> isocline_approach(const Trajectory& traj, const std::vector<double>& r_values) {
    std::vector<IsoclineApproach> out;
    for (double r : r_values) {
        if (!traj.contains(r)) continue;
        const PhaseState y = traj.eval(r);
        IsoclineApproach a;
        a.r = r;
        a.H = y[kH];
        a.to_vertical = (y[kW] - y[kH] * y[kH]) / y[kH];
        a.to_horizontal = (2.0 * y[kW] - 0.5) / (2.0 * y[kH]);
        out.push_back(a);
    }
    return out;
}

}  // namespace cusp
