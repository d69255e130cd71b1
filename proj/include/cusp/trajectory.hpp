#pragma once

// Orbit storage: nodes in increasing r plus the per-step interpolants, so the
// orbit can be evaluated and integrated anywhere at integrator order.

#include <array>
#include <cstddef>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "cusp/dop853.hpp"

namespace cusp {

struct PhasePoint {
    double H = 0.0;
    double F = 0.0;
};

/// (H, F, W) with W = H F - H^2 + eps/2.
using PhaseState = StateN<3>;

inline constexpr std::size_t kH = 0;
inline constexpr std::size_t kF = 1;
inline constexpr std::size_t kW = 2;

enum class Direction { forward, backward };

struct StopPredicate {
    std::string name;
    std::function<bool(double r, const PhaseState& y)> hit;
};

struct IntegratorControls {
    double rel_tol = 1e-10;
    double abs_tol = 1e-12;
    double max_step = std::numeric_limits<double>::infinity();
    double r_min = -1e6;
    double r_max = 1e6;
    Direction direction = Direction::forward;
    std::size_t max_steps = 5'000'000;
    // W is carried as a separate component and decays like 2/r^4 on the flat end;
    // its absolute tolerance is abs_tol times this factor so it keeps relative accuracy.
    double gap_abs_scale = 1e-8;
    std::vector<StopPredicate> stops;

    /// Throws std::invalid_argument when the invariants do not hold.
    void validate() const;

    StepControls step_controls() const { return {rel_tol, abs_tol, max_step, {1.0, 1.0, gap_abs_scale}}; }
};

/// Stop predicate factories.
StopPredicate stop_H_below(double floor);
StopPredicate stop_abs_F_above(double ceiling);
StopPredicate stop_F_below(double level);
StopPredicate stop_near(PhasePoint p, double radius);

enum class Termination { r_limit, stop_predicate, max_steps, none };

std::string to_string(Termination t);

struct LegEnd {
    Termination reason = Termination::none;
    std::string stop_name;  // set when reason == stop_predicate
};

class Trajectory {
public:
    Trajectory() = default;

    /// Builds from one integration leg.  Nodes and steps are given in integration
    /// order; backward legs are reversed so r increases.
    static Trajectory from_leg(std::vector<double> r, std::vector<PhaseState> y, std::vector<DenseStep<3>> steps,
                               Direction dir, LegEnd end, double rel_tol, double abs_tol);

    /// Concatenates a backward leg and a forward leg sharing their first node.
    static Trajectory join(const Trajectory& backward, const Trajectory& forward);

    std::size_t size() const { return r_.size(); }
    bool empty() const { return r_.empty(); }

    double r(std::size_t i) const { return r_[i]; }
    const PhaseState& state(std::size_t i) const { return y_[i]; }
    PhasePoint point(std::size_t i) const { return {y_[i][kH], y_[i][kF]}; }
    const std::vector<double>& r_values() const { return r_; }
    const std::vector<PhaseState>& states() const { return y_; }
    const std::vector<DenseStep<3>>& steps() const { return steps_; }

    double r_front() const { return r_.front(); }
    double r_back() const { return r_.back(); }
    bool contains(double r) const { return !r_.empty() && r >= r_.front() && r <= r_.back(); }

    /// Index of the step whose closed interval holds r.  Throws std::out_of_range.
    std::size_t locate(double r) const;

    PhaseState eval(double r) const;
    double eval(std::size_t component, double r) const;
    PhasePoint point_at(double r) const;

    /// \int_a^b of one component, using the interpolants.
    double integral(std::size_t component, double a, double b) const;

    /// Running integral of one component from `origin`, evaluated at each node.
    std::vector<double> cumulative_integral(std::size_t component, double origin) const;

    /// Moves the whole orbit by dr along r.
    void shift(double dr);

    /// First r (scanning in increasing r) where the component crosses `level`,
    /// refined on the interpolant to `tol`.
    std::optional<double> first_crossing(std::size_t component, double level, double tol = 1e-13) const;

    double rel_tol() const { return rel_tol_; }
    double abs_tol() const { return abs_tol_; }
    double gap_abs_tol() const { return gap_abs_tol_; }
    void set_gap_abs_tol(double v) { gap_abs_tol_ = v; }
    const LegEnd& end_low() const { return end_low_; }
    const LegEnd& end_high() const { return end_high_; }

    /// Point the low end converges to, when the leg was stopped next to it.
    const std::optional<PhasePoint>& low_limit() const { return low_limit_; }
    void set_low_limit(PhasePoint p) { low_limit_ = p; }

private:
    std::vector<double> r_;
    std::vector<PhaseState> y_;
    std::vector<DenseStep<3>> steps_;
    double rel_tol_ = 0.0;
    double abs_tol_ = 0.0;
    double gap_abs_tol_ = 0.0;
    LegEnd end_low_;
    LegEnd end_high_;
    std::optional<PhasePoint> low_limit_;
};

}  // namespace cusp
