#pragma once

// Curvature growth under the Ricci flow g(t) = (t+1) phi_t^* g0 of the soliton:
// dR/dt, its zero set C_t in the phase plane, crossings of C_t with S, the
// barrier function Psi_t on the branch of C_t, and pointwise histories R(t).

#include <optional>
#include <string>
#include <vector>

#include "cusp/geometry.hpp"
#include "cusp/separatrix.hpp"

namespace cusp {

class TimeParam {
public:
    explicit TimeParam(double t);
    double t() const { return t_; }
    double s() const { return s_; }

private:
    double t_;
    double s_;
};

/// (2/s^2) [(2HF - H^2 + 1) + s F^2 (-2HF + 2H^2 - 1)].
double dRdt(PhasePoint p, const TimeParam& t);

/// (2xy - x^2 + 1) + s y^2 (-2xy + 2x^2 - 1).
double Ct(double x, double y, const TimeParam& t);

/// C_t on an orbit state, written as H^2 + 2W(1 - s F^2).
double Ct_state(const PhaseState& y, const TimeParam& t);

/// dR/dt on an orbit state: 2 C_t / s^2.
double dRdt_state(const PhaseState& y, const TimeParam& t);

std::array<double, 2> grad_Ct(double x, double y, const TimeParam& t);

/// Root x > 0 of C_t(x, y) = 0 on the branch y <= -1/sqrt(s).  Evaluated as
/// sqrt(k) / (sqrt(k (y^2 + 2) + 1) + |y| sqrt(k)) with k = s y^2 - 1, which is
/// the displayed root without its cancellation.  Throws std::domain_error off the branch.
double ct_branch_x(double y, const TimeParam& t);

/// Upper end -1/sqrt(s) of the branch domain.
double ct_branch_y_end(const TimeParam& t);

/// Psi_t(y) = -y (x^2 + s(6x^2y^2 - 12x^3y + 5xy + 8x^4 - 6x^2 + 1)) at x = x(y).
double psi(double y, const TimeParam& t);

/// psi_t(x, y) as a polynomial, before restricting to the branch.
double psi_xy(double x, double y, const TimeParam& t);

/// Leading term of Psi_t as y -> -inf: -t / (4 |y|).
double psi_tail_leading(double y, const TimeParam& t);

struct PsiScanConfig {
    double y_max = 1e3;      // |y| range end
    std::size_t points = 1000;
};

struct PsiScan {
    double t = 0.0;
    std::vector<double> y;
    std::vector<double> psi;
    double min_value = 0.0;
    double min_at = 0.0;
    double tail_coefficient = 0.0;    // c in Psi ~ c/|y|
    double tail_measured = 0.0;       // |y| Psi at the far grid end
    bool tail_positive = false;
    bool positive = false;

    std::string verdict() const { return positive ? "positive" : "sign-changing"; }
};

PsiScan scan_psi(const TimeParam& t, const PsiScanConfig& cfg = {});

struct Crossing {
    double r = 0.0;
    double H = 0.0;
    double F = 0.0;
    int from_sign = 0;   // sign of C_t just below r
};

struct CrossingConfig {
    std::size_t min_samples = 200000;
    double r_tol = 1e-9;
    double noise_factor = 100.0;   // sign certified when |C| exceeds this multiple of the tolerance-level error
};

struct CrossingReport {
    double t = 0.0;
    std::vector<Crossing> crossings;
    std::vector<std::pair<double, int>> sign_pattern;  // (r where the run starts, sign) for certified runs
    double certified_from = 0.0;
    double certified_to = 0.0;     // signs beyond this r are below the noise bound
    std::size_t samples = 0;
    std::size_t uncertain_samples = 0;

    std::size_t count() const { return crossings.size(); }
};

CrossingReport find_crossings(const Trajectory& S, const TimeParam& t, const CrossingConfig& cfg = {});

struct ThresholdBracket {
    std::string name;
    double lo = 0.0;   // largest t known on the "holds" side
    double hi = 0.0;   // smallest t known on the "fails" side
    bool found = false;
    std::size_t evaluations = 0;
};

struct DeltaScan {
    std::vector<double> t_grid;
    std::vector<std::size_t> crossing_counts;
    std::vector<std::string> psi_verdicts;
    ThresholdBracket crossing_threshold;   // zero crossings below, crossings above
    ThresholdBracket barrier_threshold;    // Psi positive below, sign change above
};

DeltaScan scan_delta_threshold(const Trajectory& S, const std::vector<double>& t_grid, double width = 1e-4,
                               const CrossingConfig& ccfg = {}, const PsiScanConfig& pcfg = {});

struct HistorySample {
    double t = 0.0;
    double r = 0.0;
    double R = 0.0;
    double dRdt = 0.0;
};

struct PointwiseHistory {
    double r0 = 0.0;
    std::vector<HistorySample> samples;
    bool truncated = false;       // r(t) left the computed part of S
    std::optional<double> last_sign_change;   // largest t where dR/dt changes sign
};

/// Follows the point r0 under dr/dt = F(r) and evaluates R[g(t)] = R(r(t))/(t+1).
PointwiseHistory pointwise_R_history(double r0, const std::vector<double>& t_grid, const Trajectory& S,
                                     double rel_tol = 1e-10, double abs_tol = 1e-12);

}  // namespace cusp
