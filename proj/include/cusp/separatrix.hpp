#pragma once

// The bounded-H orbit S leaving the saddle (1/2, 0) into {H < 1/2, F < 0},
// the three isocline hyperbolas, and the barrier checks along S.

#include <optional>
#include <string>
#include <vector>

#include "cusp/phase_core.hpp"

namespace cusp {

enum class IsoclineKind { vertical, horizontal, oblique };

std::string to_string(IsoclineKind k);

/// F on the isocline branch: c (2H - 1/(2H)) with c = 1, 1/2, 2.
double isocline_F(IsoclineKind kind, double H);

struct IsoclineSlopes {
    double vertical = 0.0;
    double horizontal = 0.0;
    double oblique = 0.0;
};

/// dF/dH of each isocline at H = 1/2.
IsoclineSlopes isocline_slopes_at_saddle();

/// <nu, (H', F')> on the oblique isocline: -2H^2 + 1/(2H^2) - 3/2.
double oblique_barrier_margin(double H);

struct ShootConfig {
    double offset = 1e-8;
    int direction = -1;            // -1: along -v, into {H < 1/2, F < 0}
    IntegratorControls controls;   // tolerances and step limits; r range is set here
    double H_floor = 1e-6;
    double r_max = 2000.0;         // calibrated r at which the forward leg ends
    double r_min = -200.0;         // calibrated lower bound for the backward leg
    double saddle_radius = 1e-9;
    double calibration_F = -1.0;

    void validate() const;
};

class SeparatrixError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Shoots S, calibrated so r = 0 where F = calibration_F.  The low end carries
/// the saddle as its limit point.
Trajectory shoot_separatrix(const ShootConfig& cfg = {});

/// Unit vector along the unstable eigendirection (1, 3+sqrt5).
std::array<double, 2> unstable_direction();

struct ShootingStability {
    double offset = 0.0;
    double max_dH = 0.0;   // over the common calibrated range, sampled on a grid
    double r_lo = 0.0;
    double r_hi = 0.0;
};

/// Compares S for offset and offset/2, matched at the calibration point.
ShootingStability shooting_stability(const ShootConfig& cfg, const Trajectory& base, double r_lo, double r_hi,
                                     std::size_t samples = 2000);

struct BarrierReport {
    std::string curve;
    std::string claim;                 // which side S stays on
    std::vector<double> r;             // sample abscissas
    std::vector<double> margin;        // signed margin, positive where the claim holds
    double min_margin = 0.0;
    double min_at = 0.0;
    std::optional<double> flux_min;    // normal product on the curve itself, when defined

    bool barrier() const { return min_margin > 0.0; }
    std::string verdict() const { return barrier() ? "barrier" : "violated"; }
};

/// Sample abscissas: every node plus interior dense-output points, at least `min_samples`.
std::vector<double> dense_sample_grid(const Trajectory& traj, std::size_t min_samples);

/// The five named curves: horizontal, oblique and vertical isoclines, {F' = 0}
/// and {H^2 - H F - 1/2 = 0}.
std::vector<BarrierReport> certify_barriers(const Trajectory& traj, std::size_t min_samples = 10000);

struct OrbitChecks {
    std::size_t samples = 0;
    std::size_t band_violations = 0;        // 0 < H < 1/2
    std::size_t F_positive = 0;             // F <= 0
    std::size_t dF_out_of_range = 0;        // -1/2 < F' < 0
    std::size_t dH_nonnegative = 0;         // H' < 0
    std::size_t H_not_decreasing = 0;       // between consecutive nodes
    bool vertical_side_constant = true;

    bool ok() const {
        return band_violations == 0 && F_positive == 0 && dF_out_of_range == 0 && dH_nonnegative == 0 &&
               H_not_decreasing == 0 && vertical_side_constant;
    }
};

OrbitChecks check_orbit(const Trajectory& traj);

/// Distances of the terminal sample to the vertical and horizontal isoclines,
/// measured along F.  Reported only.
struct IsoclineApproach {
    double r = 0.0;
    double H = 0.0;
    double to_vertical = 0.0;
    double to_horizontal = 0.0;
};

std::vector<IsoclineApproach> isocline_approach(const Trajectory& traj, const std::vector<double>& r_values);

}  // namespace cusp
