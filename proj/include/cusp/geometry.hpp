#pragma once

// Metric profiles h, f and curvature of g = dr^2 + e^{2h(r)}(dx^2 + dy^2)
// along an orbit of the phase system.

#include <optional>
#include <string>
#include <vector>

#include "cusp/phase_core.hpp"

namespace cusp {

struct DecayFit {
    double alpha = 0.0;      // slope of log|F| against r
    double intercept = 0.0;
    double r_lo = 0.0;
    double r_hi = 0.0;
    std::size_t samples = 0;
    bool valid = false;
};

/// Least-squares fit of log|F| = intercept + alpha r over the nodes in [r_lo, r_hi].
DecayFit fit_cusp_decay(const Trajectory& traj, double r_lo, double r_hi);

struct MetricProfile {
    std::vector<double> r;
    std::vector<double> h;
    std::vector<double> f;
    double h_anchor = 0.0;
    double f0 = 0.0;
    double f_tail = 0.0;     // estimate of \int_{-inf}^{r_front} F
    double h_tail = 0.0;     // estimate of \int_{-inf}^{r_front} (H - 1/2)
    DecayFit decay;

    /// Limit of h - r/2 at the cusp end.
    double cusp_offset() const;
};

/// h(r) = h_anchor + \int_0^r H and f(r) = f0 + \int_{-inf}^r F, evaluated at the
/// trajectory nodes.  The tail below the first node is closed with the fitted
/// exponential rate.  Throws std::invalid_argument if r = 0 is not covered.
MetricProfile reconstruct_profiles(const Trajectory& traj, double h_anchor = 0.0, double f0 = 0.0);

/// h and f at an arbitrary r (interpolant based).
double profile_h(const Trajectory& traj, const MetricProfile& prof, double r);
double profile_f(const Trajectory& traj, const MetricProfile& prof, double r);

/// \int_{-inf}^r (H - 1/2) and \int_{-inf}^r F, each closed with the fitted tail.
double cusp_h_deviation(const Trajectory& traj, const MetricProfile& prof, double r);
double cusp_f_deviation(const Trajectory& traj, const MetricProfile& prof, double r);

struct CurvatureSample {
    double r = 0.0;
    double sec_xy = 0.0;
    double sec_rx = 0.0;        // = sec_ry
    double R = 0.0;
    double Ric_rr = 0.0;
    double Ric_tangential = 0.0;
    double laplacian_f = 0.0;
    double grad_f_sq = 0.0;
    double sec_rx_alt = 0.0;    // -(F' + 1/2)/2 from the literal field
};

/// Curvature of the state; eps = +1.  Uses W, so small curvatures keep their digits.
CurvatureSample curvature_at(double r, const PhaseState& y);

std::vector<CurvatureSample> curvatures(const Trajectory& traj);

struct SolitonResidual {
    double r = 0.0;
    double trace_identity = 0.0;    // R + Delta f + 3/2
    double gradient_identity = 0.0; // R' - 2 Ric_rr F
    double Q = 0.0;                 // R + F^2 + f
    double Q_drift = 0.0;           // Q - Q(0)
};

/// Residuals at the nodes within [r_lo, r_hi].  The first two come from the
/// literal field in (H, F); Q uses the profile.
std::vector<SolitonResidual> soliton_residuals(const Trajectory& traj, const MetricProfile& prof,
                                               double r_lo = -1e300, double r_hi = 1e300);

struct RatioEntry {
    std::string name;
    std::string target_name;
    double target = 0.0;
    double r = 0.0;
    double measured = 0.0;
    double residual = 0.0;       // measured - target
    bool available = false;
    std::string note;
};

struct AsymptoticsReport {
    std::string end;             // "-inf" or "+inf"
    std::vector<RatioEntry> ratios;
    std::optional<DecayFit> decay;
    std::vector<std::pair<double, double>> trend;  // (r, |H r - 1|) on the flat end
    bool trend_decreasing = false;

    const RatioEntry* find(const std::string& name) const;
};

struct AsymptoticsConfig {
    double cusp_r = -30.0;
    double flat_r = 500.0;
    double fit_lo = -30.0;
    double fit_hi = -10.0;
    std::size_t trend_points = 12;
};

/// Two reports: cusp end first, flat end second.
std::vector<AsymptoticsReport> check_asymptotics(const Trajectory& traj, const MetricProfile& prof,
                                                 const AsymptoticsConfig& cfg = {});

}  // namespace cusp
