#pragma once

// Resolution of the contact between C_t and the flat-end orbit at infinity:
// chart at infinity, repeated blow-ups x -> x y of the tracked point on the
// divisor y = 0, translations recentring it, until the curve leaves the point.

#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "cusp/exact_poly.hpp"
#include "cusp/univariate.hpp"

namespace cusp {

class BlowupError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// H' and F' as polynomials in (x, y) = (H, F).
ExactPoly phase_P();
ExactPoly phase_Q();

/// (2xy - x^2 + 1) + s y^2 (-2xy + 2x^2 - 1), the zero set of dR/dt.
ExactPoly ct_polynomial();

/// H' = 0, where the orbit is vertical.
ExactPoly vertical_isocline_polynomial();

enum class CurveChoice { ct, vertical_isocline };
enum class SMode { generic, s_one };

std::string to_string(CurveChoice c);
std::string to_string(SMode m);
CurveChoice parse_curve_choice(const std::string& s);
SMode parse_s_mode(const std::string& s);

ExactPoly curve_polynomial(CurveChoice c);

struct Step {
    enum class Kind { chart, fix_s, blowup, translate };
    Kind kind = Kind::chart;
    Rational value = 0;     // fix_s: s; translate: the point moved to x = 0
    int cancelled = 0;      // chart/blowup: power of y removed from the field
    int curve_power = 0;    // chart/blowup: power of y removed from the curve

    friend bool operator==(const Step& a, const Step& b) {
        return a.kind == b.kind && a.value == b.value && a.cancelled == b.cancelled && a.curve_power == b.curve_power;
    }
};

std::string to_string(Step::Kind k);

struct BlowupState {
    ExactPoly P;   // x' component
    ExactPoly Q;   // y' component
    ExactPoly curve;
    std::vector<Step> log;

    int blowups() const;
    /// Total power of y extracted from the curve since the chart (inclusive).
    int curve_power_total() const;
};

/// X = -x/y, Y = -1/y; the field is multiplied by Y^(d-1) and common powers of Y removed.
BlowupState chart_to_infinity(const ExactPoly& curve);
BlowupState fix_s(const BlowupState& st, const Rational& s);
/// x -> x y, then N = P - x Q, M = y Q with the common power of y cancelled.
BlowupState blowup_once(const BlowupState& st);
/// Moves x = a to the origin.
BlowupState translate(const BlowupState& st, const Rational& a);

/// Rebuilds a state from its log.
BlowupState replay(const std::vector<Step>& log, const ExactPoly& curve);

/// Zeros of P(x, 0), i.e. singular points of the field on the divisor.
/// Throws BlowupError if the field vanishes on the whole divisor or depends on s.
std::vector<RealRoot> divisor_critical_points(const BlowupState& st);

struct CurveIntersection {
    std::vector<RationalFunctionS> exact;   // roots rational in s
    std::vector<RealRoot> algebraic;        // s-free irrational roots
    bool contains(const Rational& a) const;
};

/// Zeros of curve(x, 0).
CurveIntersection curve_divisor_intersection(const BlowupState& st);

/// Image of a phase point (H, F) in the coordinates of `log` (exact).
struct ChartPoint {
    Rational x;
    Rational y;
};
ChartPoint push_forward(const std::vector<Step>& log, const Rational& H, const Rational& F);
/// Inverse of the blow-up and translation steps: maps back to chart coordinates (X, Y).
ChartPoint pull_back_to_chart(const std::vector<Step>& log, const Rational& x, const Rational& y);

struct ShadowSample {
    double r = 0.0;
    double H = 0.0;
    double F = 0.0;
};

struct StageRecord {
    int blowup = 0;                          // 0 = chart, before any blow-up
    std::vector<RealRoot> critical_points;
    Rational tracked;
    std::vector<double> shadow_distance;     // per candidate, at the largest-r sample
    CurveIntersection curve;
    bool separated = false;
    int cancelled = 0;
    int curve_power = 0;
    std::optional<Rational> translation;     // applied after this stage
};

struct BlowupReport {
    SMode mode = SMode::generic;
    CurveChoice curve = CurveChoice::ct;
    std::vector<StageRecord> stages;
    int blowups = 0;
    int contact_order = 0;
    std::vector<std::pair<int, Rational>> translations;   // (after blow-up, a)
    std::optional<int> rhythm;             // common spacing of the translations, if regular
    Rational final_point;                  // tracked point before recentring
    RationalFunctionS abscissa;            // curve point relative to the tracked point
    BlowupState final_state;               // recentred so the tracked point is x = 0
};

struct SequenceConfig {
    SMode mode = SMode::generic;
    CurveChoice curve = CurveChoice::ct;
    int max_blowups = 32;
    std::vector<ShadowSample> shadow;      // points of S used to pick among several candidates
};

BlowupReport run_sequence(const SequenceConfig& cfg);

/// Canonical text form of a state: log lines then sorted terms with exact coefficients.
void write_state(std::ostream& os, const BlowupState& st);
BlowupState read_state(std::istream& is);
std::string state_to_string(const BlowupState& st);

/// Canonical summary of a report (stable across runs).
std::string report_to_string(const BlowupReport& rep);

}  // namespace cusp
