#include "cusp/evolution.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace cusp {

TimeParam::TimeParam(double t) : t_(t), s_(t + 1.0) {
    if (!(t > -1.0) || !std::isfinite(t)) throw std::domain_error("TimeParam: flow exists only for t > -1");
}

double Ct(double x, double y, const TimeParam& t) {
    return (2.0 * x * y - x * x + 1.0) + t.s() * y * y * (-2.0 * x * y + 2.0 * x * x - 1.0);
}

double dRdt(PhasePoint p, const TimeParam& t) {
    return 2.0 / (t.s() * t.s()) * Ct(p.H, p.F, t);
}

double Ct_state(const PhaseState& y, const TimeParam& t) {
    return y[kH] * y[kH] + 2.0 * y[kW] * (1.0 - t.s() * y[kF] * y[kF]);
}

double dRdt_state(const PhaseState& y, const TimeParam& t) {
    return 2.0 / (t.s() * t.s()) * Ct_state(y, t);
}

std::array<double, 2> grad_Ct(double x, double y, const TimeParam& t) {
    const double s = t.s();
    return {2.0 * y - 2.0 * x + s * y * y * (-2.0 * y + 4.0 * x),
            2.0 * x + 2.0 * s * y * (-3.0 * x * y + 2.0 * x * x - 1.0)};
}

double ct_branch_y_end(const TimeParam& t) { return -1.0 / std::sqrt(t.s()); }

double ct_branch_x(double y, const TimeParam& t) {
    double k = t.s() * y * y - 1.0;
    if (k < 0.0 && k > -8.0 * std::numeric_limits<double>::epsilon()) k = 0.0;  // rounding at the branch end
    if (!(y < 0.0) || k < 0.0) throw std::domain_error("ct_branch_x: y outside (-inf, -1/sqrt(t+1)]");
    const double rk = std::sqrt(k);
    return rk / (std::sqrt(k * (y * y + 2.0) + 1.0) + std::abs(y) * rk);
}

double psi_xy(double x, double y, const TimeParam& t) {
    const double s = t.s();
    const double x2 = x * x;
    return -y * (x2 + s * (6.0 * x2 * y * y - 12.0 * x2 * x * y + 5.0 * x * y + 8.0 * x2 * x2 - 6.0 * x2 + 1.0));
}

double psi(double y, const TimeParam& t) { return psi_xy(ct_branch_x(y, t), y, t); }

double psi_tail_leading(double y, const TimeParam& t) { return -t.t() / (4.0 * std::abs(y)); }

PsiScan scan_psi(const TimeParam& t, const PsiScanConfig& cfg) {
    if (cfg.points < 2) throw std::invalid_argument("scan_psi: need at least two points");
    PsiScan out;
    out.t = t.t();
    const double a = std::abs(ct_branch_y_end(t));
    const double b = std::max(cfg.y_max, a * 1.000001);
    out.y.reserve(cfg.points);
    out.psi.reserve(cfg.points);
    out.min_value = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < cfg.points; ++i) {
        const double frac = static_cast<double>(i) / static_cast<double>(cfg.points - 1);
        double y = -a * std::pow(b / a, frac);
        if (i == 0) y = ct_branch_y_end(t);
        const double v = psi(y, t);
        out.y.push_back(y);
        out.psi.push_back(v);
        if (v < out.min_value) {
            out.min_value = v;
            out.min_at = y;
        }
    }
    out.tail_coefficient = -t.t() / 4.0;
    out.tail_measured = std::abs(out.y.back()) * out.psi.back();
    out.tail_positive = out.tail_coefficient > 0.0;
    out.positive = out.min_value > 0.0 && out.tail_positive;
    return out;
}

namespace {

struct CSample {
    double r;
    double c;
    int sign;
};

struct NoiseModel {
    double rel;
    double abs;
    double abs_gap;
    double factor;
};

NoiseModel noise_model(const Trajectory& S, double factor) {
    const double rel = S.rel_tol() > 0.0 ? S.rel_tol() : 1e-10;
    const double abs = S.abs_tol() > 0.0 ? S.abs_tol() : 1e-12;
    const double gap = S.gap_abs_tol() > 0.0 ? S.gap_abs_tol() : abs;
    return {rel, abs, gap, factor};
}

// First-order size of the error in C = H^2 + 2W(1 - sF^2) given per-component
// errors of size rel |y_i| + abs_i, inflated by the factor.
double c_noise(const PhaseState& y, const TimeParam& t, const NoiseModel& m) {
    const double H = std::abs(y[kH]), F = std::abs(y[kF]), W = std::abs(y[kW]);
    const double dH = m.rel * H + m.abs;
    const double dF = m.rel * F + m.abs;
    const double dW = m.rel * W + m.abs_gap;
    return m.factor * (2.0 * H * dH + 2.0 * (1.0 + t.s() * F * F) * dW + 4.0 * W * t.s() * F * dF);
}

double bisect_zero(const Trajectory& S, const TimeParam& t, double lo, double hi, double tol) {
    double clo = Ct_state(S.eval(lo), t);
    for (int it = 0; it < 200 && hi - lo > tol; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        const double cm = Ct_state(S.eval(mid), t);
        if ((cm > 0.0) == (clo > 0.0)) {
            lo = mid;
            clo = cm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

// Minimizes sign * C on [a, b] by golden section.
double golden_extremum(const Trajectory& S, const TimeParam& t, double a, double b, int sign) {
    const double g = 0.5 * (std::sqrt(5.0) - 1.0);
    auto f = [&](double r) { return sign * Ct_state(S.eval(r), t); };
    double c = b - g * (b - a), d = a + g * (b - a);
    double fc = f(c), fd = f(d);
    for (int it = 0; it < 200 && (b - a) > 1e-12 * std::max(1.0, std::abs(a)); ++it) {
        if (fc < fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - g * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + g * (b - a);
            fd = f(d);
        }
    }
    return 0.5 * (a + b);
}

Crossing make_crossing(const Trajectory& S, double r, int from_sign) {
    const PhaseState y = S.eval(r);
    return {r, y[kH], y[kF], from_sign};
}

}  // namespace

CrossingReport find_crossings(const Trajectory& S, const TimeParam& t, const CrossingConfig& cfg) {
    CrossingReport rep;
    rep.t = t.t();
    const std::vector<double> grid = dense_sample_grid(S, cfg.min_samples);
    const NoiseModel noise_m = noise_model(S, cfg.noise_factor);

    std::vector<CSample> samples;
    samples.reserve(grid.size());
    for (double r : grid) {
        const PhaseState y = S.eval(r);
        const double c = Ct_state(y, t);
        const double noise = c_noise(y, t, noise_m);
        const int sign = std::abs(c) > noise ? (c > 0.0 ? 1 : -1) : 0;
        samples.push_back({r, c, sign});
    }
    rep.samples = samples.size();

    bool any = false;
    std::size_t last = 0;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const CSample& cur = samples[i];
        if (cur.sign == 0) {
            ++rep.uncertain_samples;
            continue;
        }
        if (!any) {
            rep.certified_from = cur.r;
            rep.sign_pattern.emplace_back(cur.r, cur.sign);
            any = true;
            last = i;
            continue;
        }
        const CSample& prev = samples[last];
        if (cur.sign != prev.sign) {
            const double r = bisect_zero(S, t, prev.r, cur.r, cfg.r_tol);
            rep.crossings.push_back(make_crossing(S, r, prev.sign));
            rep.sign_pattern.emplace_back(r, cur.sign);
        } else if (i == last + 1 && i + 1 < samples.size() && samples[i + 1].sign == cur.sign) {
            // A dip of |C| between same-signed neighbours may hide a tangential pair.
            const double cm = cur.sign * cur.c;
            if (cm < cur.sign * prev.c && cm <= cur.sign * samples[i + 1].c) {
                const double a = prev.r, b = samples[i + 1].r;
                const double rm = golden_extremum(S, t, a, b, cur.sign);
                const PhaseState ym = S.eval(rm);
                const double c_min = Ct_state(ym, t);
                if (cur.sign * c_min < -c_noise(ym, t, noise_m)) {
                    const double r1 = bisect_zero(S, t, a, rm, cfg.r_tol);
                    const double r2 = bisect_zero(S, t, rm, b, cfg.r_tol);
                    rep.crossings.push_back(make_crossing(S, r1, cur.sign));
                    rep.sign_pattern.emplace_back(r1, -cur.sign);
                    rep.crossings.push_back(make_crossing(S, r2, -cur.sign));
                    rep.sign_pattern.emplace_back(r2, cur.sign);
                }
            }
        }
        last = i;
        rep.certified_to = cur.r;
    }
    return rep;
}

namespace {

template <typename Pred>
ThresholdBracket bisect_threshold(std::string name, double lo, double hi, double width, Pred holds) {
    ThresholdBracket b;
    b.name = std::move(name);
    b.lo = lo;
    b.hi = hi;
    b.found = true;
    while (b.hi - b.lo > width) {
        const double mid = 0.5 * (b.lo + b.hi);
        ++b.evaluations;
        if (holds(mid)) {
            b.lo = mid;
        } else {
            b.hi = mid;
        }
    }
    return b;
}

}  // namespace

DeltaScan scan_delta_threshold(const Trajectory& S, const std::vector<double>& t_grid, double width,
                               const CrossingConfig& ccfg, const PsiScanConfig& pcfg) {
    DeltaScan out;
    out.t_grid = t_grid;
    std::sort(out.t_grid.begin(), out.t_grid.end());
    for (double t : out.t_grid) {
        const TimeParam tp(t);
        out.crossing_counts.push_back(find_crossings(S, tp, ccfg).count());
        out.psi_verdicts.push_back(scan_psi(tp, pcfg).verdict());
    }

    auto bracket = [&](auto holds_at_index, auto holds, std::string name) {
        ThresholdBracket b;
        b.name = name;
        std::optional<std::size_t> last_hold;
        for (std::size_t i = 0; i < out.t_grid.size(); ++i) {
            if (holds_at_index(i)) last_hold = i;
        }
        if (!last_hold || *last_hold + 1 >= out.t_grid.size()) return b;
        const std::size_t i = *last_hold;
        return bisect_threshold(name, out.t_grid[i], out.t_grid[i + 1], width, holds);
    };

    out.crossing_threshold = bracket([&](std::size_t i) { return out.crossing_counts[i] == 0; },
                                     [&](double t) { return find_crossings(S, TimeParam(t), ccfg).count() == 0; },
                                     "crossing");
    out.barrier_threshold = bracket([&](std::size_t i) { return out.psi_verdicts[i] == "positive"; },
                                    [&](double t) { return scan_psi(TimeParam(t), pcfg).positive; }, "psi_barrier");
    return out;
}

PointwiseHistory pointwise_R_history(double r0, const std::vector<double>& t_grid, const Trajectory& S,
                                     double rel_tol, double abs_tol) {
    if (!S.contains(r0)) throw std::out_of_range("pointwise_R_history: r0 outside the orbit");
    PointwiseHistory hist;
    hist.r0 = r0;

    std::vector<double> grid = t_grid;
    std::sort(grid.begin(), grid.end());
    for (double t : grid) {
        if (!(t > -1.0)) throw std::domain_error("pointwise_R_history: t must exceed -1");
    }

    auto sample = [&](double t, double r) {
        const TimeParam tp(t);
        const PhaseState y = S.eval(r);
        return HistorySample{t, r, curvature_at(r, y).R / tp.s(), dRdt_state(y, tp)};
    };

    auto run = [&](double direction, std::vector<double> targets) {
        std::vector<HistorySample> got;
        bool left = false;
        auto rhs = [&](double, const StateN<1>& y, StateN<1>& dy) {
            double r = y[0];
            if (!S.contains(r)) {
                left = true;
                r = std::clamp(r, S.r_front(), S.r_back());
            }
            dy[0] = S.eval(kF, r);
        };
        Dop853<1> stepper(rhs, 0.0, {r0}, {rel_tol, abs_tol, std::numeric_limits<double>::infinity(), {}}, direction);
        for (double target : targets) {
            if (target == 0.0) {
                got.push_back(sample(0.0, r0));
                continue;
            }
            while (stepper.r() != target && !left) stepper.step(target);
            if (left || !S.contains(stepper.y()[0])) {
                hist.truncated = true;
                break;
            }
            got.push_back(sample(target, stepper.y()[0]));
        }
        return got;
    };

    std::vector<double> neg, pos;
    for (double t : grid) (t < 0.0 ? neg : pos).push_back(t);
    std::reverse(neg.begin(), neg.end());
    std::vector<HistorySample> below = neg.empty() ? std::vector<HistorySample>{} : run(-1.0, neg);
    std::vector<HistorySample> above = pos.empty() ? std::vector<HistorySample>{} : run(1.0, pos);
    std::reverse(below.begin(), below.end());
    hist.samples = std::move(below);
    hist.samples.insert(hist.samples.end(), above.begin(), above.end());

    for (std::size_t i = 1; i < hist.samples.size(); ++i) {
        const bool a = hist.samples[i - 1].dRdt > 0.0;
        const bool b = hist.samples[i].dRdt > 0.0;
        if (a != b) hist.last_sign_change = hist.samples[i].t;
    }
    return hist;
}

}  // namespace cusp
