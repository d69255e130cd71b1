#include "cusp/phase_core.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace cusp {

SolitonSign soliton_sign_from_int(int value) {
    switch (value) {
        case -1: return SolitonSign::shrinking;
        case 0: return SolitonSign::steady;
        case 1: return SolitonSign::expanding;
        default: throw std::invalid_argument("soliton sign must be -1, 0 or +1");
    }
}

PhaseVelocity vector_field(PhasePoint p, SolitonSign eps) {
    const double e = eps_value(eps);
    return {p.H * p.F - 2.0 * p.H * p.H + 0.5 * e, 2.0 * p.H * p.F - 2.0 * p.H * p.H + 0.5 * e};
}

CriticalPointSet critical_points(SolitonSign eps) {
    // H' = F' forces H F = 0; H = 0 leaves eps = 0, F = 0 leaves H^2 = eps/4.
    CriticalPointSet out;
    switch (eps) {
        case SolitonSign::expanding:
            out.points = {{0.5, 0.0}, {-0.5, 0.0}};
            out.description = "two saddles at (+-1/2, 0)";
            break;
        case SolitonSign::shrinking:
            out.description = "no critical points";
            break;
        case SolitonSign::steady:
            out.degenerate_line = true;
            out.description = "every point of the line H = 0";
            break;
    }
    return out;
}

Jacobian2 linearize(PhasePoint p) {
    return {p.F - 4.0 * p.H, p.H, 2.0 * p.F - 4.0 * p.H, 2.0 * p.H};
}

std::array<EigenPair, 2> eigen_saddle(const Jacobian2& j) {
    const double tr = j.trace();
    const double disc = tr * tr - 4.0 * j.det();
    const double scale = std::max({std::abs(j.a11), std::abs(j.a12), std::abs(j.a21), std::abs(j.a22), 1e-300});
    if (disc < 0.0) throw std::domain_error("eigen_saddle: complex eigenvalues");
    if (std::sqrt(disc) <= 1e-14 * scale) throw std::domain_error("eigen_saddle: repeated eigenvalue");

    // Cancellation-free pair: the larger-magnitude root first, the other from the product.
    const double sq = std::sqrt(disc);
    const double big = 0.5 * (tr >= 0.0 ? tr + sq : tr - sq);
    double l1 = big;
    double l2 = j.det() / big;
    if (l2 > l1) std::swap(l1, l2);

    auto vector_for = [&](double lambda) -> std::array<double, 2> {
        // Rows of (J - lambda I); pick the better conditioned one.
        const double r1a = j.a11 - lambda, r1b = j.a12;
        const double r2a = j.a21, r2b = j.a22 - lambda;
        double vx, vy;
        if (std::abs(r1a) + std::abs(r1b) >= std::abs(r2a) + std::abs(r2b)) {
            vx = r1b;
            vy = -r1a;
        } else {
            vx = r2b;
            vy = -r2a;
        }
        if (std::abs(vx) > 1e-14 * (std::abs(vx) + std::abs(vy))) return {1.0, vy / vx};
        return {0.0, 1.0};
    };
    return {EigenPair{l1, vector_for(l1)}, EigenPair{l2, vector_for(l2)}};
}

void augmented_rhs(const PhaseState& y, PhaseState& dy, SolitonSign eps) {
    const double H = y[kH], F = y[kF], W = y[kW];
    dy[kH] = W - H * H;
    dy[kF] = 2.0 * W - 0.5 * eps_value(eps);
    dy[kW] = W * (F - H) + H * H * H;
}

PhaseState augment(PhasePoint p, SolitonSign eps) {
    return {p.H, p.F, p.H * p.F - p.H * p.H + 0.5 * eps_value(eps)};
}

Trajectory integrate(PhasePoint start, double r0, const IntegratorControls& controls, SolitonSign eps) {
    return integrate_state(augment(start, eps), r0, controls, eps);
}

Trajectory integrate_state(const PhaseState& start, double r0, const IntegratorControls& controls, SolitonSign eps) {
    controls.validate();
    const bool fwd = controls.direction == Direction::forward;
    const double limit = fwd ? controls.r_max : controls.r_min;
    for (double v : start) {
        if (!std::isfinite(v)) throw IntegrationError("integrate: non-finite start", r0);
    }

    std::vector<double> rs{r0};
    std::vector<PhaseState> ys{start};
    std::vector<DenseStep<3>> steps;
    LegEnd end;

    if ((fwd && r0 >= limit) || (!fwd && r0 <= limit)) {
        end.reason = Termination::r_limit;
        Trajectory t = Trajectory::from_leg(rs, ys, steps, controls.direction, end, controls.rel_tol, controls.abs_tol);
        t.set_gap_abs_tol(controls.abs_tol * controls.gap_abs_scale);
        return t;
    }

    Dop853<3> stepper([eps](double, const PhaseState& y, PhaseState& dy) { augmented_rhs(y, dy, eps); }, r0, start,
                      controls.step_controls(), fwd ? 1.0 : -1.0);

    for (;;) {
        if (steps.size() >= controls.max_steps) {
            end.reason = Termination::max_steps;
            break;
        }
        steps.push_back(stepper.step(limit));
        rs.push_back(stepper.r());
        ys.push_back(stepper.y());
        if (stepper.r() == limit) {
            end.reason = Termination::r_limit;
            break;
        }
        bool stopped = false;
        for (const auto& s : controls.stops) {
            if (s.hit(stepper.r(), stepper.y())) {
                end.reason = Termination::stop_predicate;
                end.stop_name = s.name;
                stopped = true;
                break;
            }
        }
        if (stopped) break;
    }
    Trajectory t = Trajectory::from_leg(std::move(rs), std::move(ys), std::move(steps), controls.direction, end,
                                        controls.rel_tol, controls.abs_tol);
    t.set_gap_abs_tol(controls.abs_tol * controls.gap_abs_scale);
    return t;
}

}  // namespace cusp
