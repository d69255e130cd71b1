#include "cusp/trajectory.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace cusp {

void IntegratorControls::validate() const {
    if (!(rel_tol > 0.0) || !(abs_tol > 0.0)) throw std::invalid_argument("tolerances must be positive");
    if (!(max_step > 0.0)) throw std::invalid_argument("max_step must be positive");
    if (!(r_min < r_max)) throw std::invalid_argument("r_min must be below r_max");
    if (max_steps == 0) throw std::invalid_argument("max_steps must be positive");
    if (!(gap_abs_scale > 0.0)) throw std::invalid_argument("gap_abs_scale must be positive");
}

StopPredicate stop_H_below(double floor) {
    return {"H_below_floor", [floor](double, const PhaseState& y) { return y[kH] < floor; }};
}

StopPredicate stop_abs_F_above(double ceiling) {
    return {"abs_F_above_ceiling", [ceiling](double, const PhaseState& y) { return std::abs(y[kF]) > ceiling; }};
}

StopPredicate stop_F_below(double level) {
    return {"F_below_level", [level](double, const PhaseState& y) { return y[kF] <= level; }};
}

StopPredicate stop_near(PhasePoint p, double radius) {
    return {"near_point", [p, radius](double, const PhaseState& y) {
                return std::hypot(y[kH] - p.H, y[kF] - p.F) < radius;
            }};
}

std::string to_string(Termination t) {
    switch (t) {
        case Termination::r_limit: return "r_limit";
        case Termination::stop_predicate: return "stop_predicate";
        case Termination::max_steps: return "max_steps";
        case Termination::none: return "none";
    }
    return "unknown";
}

Trajectory Trajectory::from_leg(std::vector<double> r, std::vector<PhaseState> y, std::vector<DenseStep<3>> steps,
                                Direction dir, LegEnd end, double rel_tol, double abs_tol) {
    if (r.size() != y.size() || (!r.empty() && steps.size() + 1 != r.size())) {
        throw std::invalid_argument("Trajectory: inconsistent leg sizes");
    }
    Trajectory t;
    if (dir == Direction::backward) {
        std::reverse(r.begin(), r.end());
        std::reverse(y.begin(), y.end());
        std::reverse(steps.begin(), steps.end());
        t.end_low_ = end;
    } else {
        t.end_high_ = end;
    }
    for (std::size_t i = 1; i < r.size(); ++i) {
        if (!(r[i] > r[i - 1])) throw std::invalid_argument("Trajectory: r not strictly increasing");
    }
    t.r_ = std::move(r);
    t.y_ = std::move(y);
    t.steps_ = std::move(steps);
    t.rel_tol_ = rel_tol;
    t.abs_tol_ = abs_tol;
    return t;
}

Trajectory Trajectory::join(const Trajectory& backward, const Trajectory& forward) {
    if (backward.empty()) return forward;
    if (forward.empty()) return backward;
    if (backward.r_back() != forward.r_front()) throw std::invalid_argument("Trajectory::join: legs do not meet");
    Trajectory t = backward;
    t.r_.insert(t.r_.end(), forward.r_.begin() + 1, forward.r_.end());
    t.y_.insert(t.y_.end(), forward.y_.begin() + 1, forward.y_.end());
    t.steps_.insert(t.steps_.end(), forward.steps_.begin(), forward.steps_.end());
    t.end_high_ = forward.end_high_;
    t.rel_tol_ = std::max(backward.rel_tol_, forward.rel_tol_);
    t.abs_tol_ = std::max(backward.abs_tol_, forward.abs_tol_);
    t.gap_abs_tol_ = std::max(backward.gap_abs_tol_, forward.gap_abs_tol_);
    return t;
}

std::size_t Trajectory::locate(double r) const {
    if (!contains(r)) throw std::out_of_range("Trajectory: r outside the computed range");
    if (steps_.empty()) return 0;
    auto it = std::upper_bound(r_.begin(), r_.end(), r);
    std::size_t i = static_cast<std::size_t>(it - r_.begin());
    if (i == 0) return 0;
    return std::min(i - 1, steps_.size() - 1);
}

PhaseState Trajectory::eval(double r) const {
    const std::size_t i = locate(r);
    if (steps_.empty()) return y_.front();
    return steps_[i].eval(r);
}

double Trajectory::eval(std::size_t component, double r) const {
    const std::size_t i = locate(r);
    if (steps_.empty()) return y_.front()[component];
    return steps_[i].eval(component, r);
}

PhasePoint Trajectory::point_at(double r) const {
    const PhaseState s = eval(r);
    return {s[kH], s[kF]};
}

namespace {

// \int_{r_i}^{r} over step i, oriented in increasing r.
double step_integral_from_low(const DenseStep<3>& st, std::size_t k, double r) {
    if (st.r_start <= st.r_end) return st.integral_from_start(k, r);
    // The step runs downward: \int_{r_end}^{r} = \int_{r_start}^{r} - \int_{r_start}^{r_end}.
    return st.integral_from_start(k, r) - st.integral_from_start(k, st.r_end);
}

}  // namespace

double Trajectory::integral(std::size_t component, double a, double b) const {
    if (a == b) return 0.0;
    if (a > b) return -integral(component, b, a);
    const std::size_t ia = locate(a);
    const std::size_t ib = locate(b);
    if (steps_.empty()) return 0.0;
    if (ia == ib) {
        return step_integral_from_low(steps_[ia], component, b) - step_integral_from_low(steps_[ia], component, a);
    }
    const auto& sa = steps_[ia];
    double acc = step_integral_from_low(sa, component, sa.hi()) - step_integral_from_low(sa, component, a);
    for (std::size_t i = ia + 1; i < ib; ++i) {
        acc += step_integral_from_low(steps_[i], component, steps_[i].hi());
    }
    acc += step_integral_from_low(steps_[ib], component, b);
    return acc;
}

std::vector<double> Trajectory::cumulative_integral(std::size_t component, double origin) const {
    std::vector<double> out(r_.size(), 0.0);
    if (r_.empty()) return out;
    std::vector<double> from_front(r_.size(), 0.0);
    for (std::size_t i = 0; i < steps_.size(); ++i) {
        from_front[i + 1] = from_front[i] + step_integral_from_low(steps_[i], component, steps_[i].hi());
    }
    double at_origin = 0.0;
    if (origin != r_.front()) {
        const std::size_t io = locate(origin);
        at_origin = from_front[io] + step_integral_from_low(steps_[io], component, origin);
    }
    for (std::size_t i = 0; i < r_.size(); ++i) out[i] = from_front[i] - at_origin;
    return out;
}

void Trajectory::shift(double dr) {
    for (double& r : r_) r += dr;
    for (auto& st : steps_) {
        st.r_start += dr;
        st.r_end += dr;
    }
}

std::optional<double> Trajectory::first_crossing(std::size_t component, double level, double tol) const {
    for (std::size_t i = 0; i + 1 < r_.size(); ++i) {
        const double g0 = y_[i][component] - level;
        const double g1 = y_[i + 1][component] - level;
        if (g0 == 0.0) return r_[i];
        if ((g0 < 0.0) == (g1 < 0.0) && g1 != 0.0) continue;
        double lo = r_[i], hi = r_[i + 1];
        double glo = g0;
        while (hi - lo > tol) {
            const double mid = 0.5 * (lo + hi);
            if (mid <= lo || mid >= hi) break;
            const double gm = steps_[i].eval(component, mid) - level;
            if ((gm < 0.0) == (glo < 0.0) && gm != 0.0) {
                lo = mid;
                glo = gm;
            } else {
                hi = mid;
            }
        }
        return 0.5 * (lo + hi);
    }
    return std::nullopt;
}

}  // namespace cusp
