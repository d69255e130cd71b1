#include "cusp/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace cusp {

DecayFit fit_cusp_decay(const Trajectory& traj, double r_lo, double r_hi) {
    DecayFit fit;
    fit.r_lo = std::max(r_lo, traj.r_front());
    fit.r_hi = std::min(r_hi, traj.r_back());
    if (traj.size() < 2 || !(fit.r_lo < fit.r_hi)) return fit;
    // Dense samples: near the saddle the steps are long and nodes are sparse.
    constexpr std::size_t kSamples = 400;
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    std::size_t n = 0;
    for (std::size_t i = 0; i < kSamples; ++i) {
        const double r = fit.r_lo + (fit.r_hi - fit.r_lo) * static_cast<double>(i) / (kSamples - 1);
        const double F = traj.eval(kF, r);
        if (F == 0.0) continue;
        const double v = std::log(std::abs(F));
        sx += r;
        sy += v;
        sxx += r * r;
        sxy += r * v;
        ++n;
    }
    fit.samples = n;
    if (n < 3) return fit;
    const double dn = static_cast<double>(n);
    const double den = dn * sxx - sx * sx;
    if (den <= 0.0) return fit;
    fit.alpha = (dn * sxy - sx * sy) / den;
    fit.intercept = (sy - fit.alpha * sx) / dn;
    fit.valid = std::isfinite(fit.alpha);
    return fit;
}

double MetricProfile::cusp_offset() const {
    if (r.empty()) return std::numeric_limits<double>::quiet_NaN();
    return h.front() - 0.5 * r.front() - h_tail;
}

MetricProfile reconstruct_profiles(const Trajectory& traj, double h_anchor, double f0) {
    if (traj.size() < 2) throw std::invalid_argument("reconstruct_profiles: trajectory too short");
    for (std::size_t i = 1; i < traj.size(); ++i) {
        if (!(traj.r(i) > traj.r(i - 1))) throw std::invalid_argument("reconstruct_profiles: r not increasing");
    }
    if (!traj.contains(0.0)) throw std::invalid_argument("reconstruct_profiles: r = 0 outside the orbit");

    MetricProfile p;
    p.h_anchor = h_anchor;
    p.f0 = f0;
    p.r = traj.r_values();

    const PhaseState& front = traj.state(0);
    if (front[kF] != 0.0) {
        // Near the saddle both F and H - 1/2 decay like e^{alpha r}.
        p.decay = fit_cusp_decay(traj, traj.r_front(), traj.r_front() + 4.0);
        if (p.decay.valid && p.decay.alpha > 0.0) {
            p.f_tail = front[kF] / p.decay.alpha;
            p.h_tail = (front[kH] - 0.5) / p.decay.alpha;
        }
    }

    const std::vector<double> ih = traj.cumulative_integral(kH, 0.0);
    const std::vector<double> iF = traj.cumulative_integral(kF, traj.r_front());
    p.h.resize(ih.size());
    p.f.resize(iF.size());
    for (std::size_t i = 0; i < ih.size(); ++i) {
        p.h[i] = h_anchor + ih[i];
        p.f[i] = f0 + p.f_tail + iF[i];
    }
    return p;
}

double profile_h(const Trajectory& traj, const MetricProfile& prof, double r) {
    return prof.h_anchor + traj.integral(kH, 0.0, r);
}

double profile_f(const Trajectory& traj, const MetricProfile& prof, double r) {
    return prof.f0 + prof.f_tail + traj.integral(kF, traj.r_front(), r);
}

double cusp_h_deviation(const Trajectory& traj, const MetricProfile& prof, double r) {
    return prof.h_tail + traj.integral(kH, traj.r_front(), r) - 0.5 * (r - traj.r_front());
}

double cusp_f_deviation(const Trajectory& traj, const MetricProfile& prof, double r) {
    return prof.f_tail + traj.integral(kF, traj.r_front(), r);
}

CurvatureSample curvature_at(double r, const PhaseState& y) {
    const double H = y[kH], F = y[kF], W = y[kW];
    CurvatureSample c;
    c.r = r;
    c.sec_xy = -H * H;
    c.sec_rx = -W;
    c.R = -4.0 * W - 2.0 * H * H;
    c.Ric_rr = -2.0 * W;
    c.Ric_tangential = -(W + H * H);
    c.laplacian_f = 2.0 * H * F + 2.0 * W - 0.5;
    c.grad_f_sq = F * F;
    const PhaseVelocity v = vector_field({H, F});
    c.sec_rx_alt = -0.5 * (v.dF + 0.5);
    return c;
}

std::vector<CurvatureSample> curvatures(const Trajectory& traj) {
    std::vector<CurvatureSample> out;
    out.reserve(traj.size());
    for (std::size_t i = 0; i < traj.size(); ++i) out.push_back(curvature_at(traj.r(i), traj.state(i)));
    return out;
}

namespace {

struct LiteralResiduals {
    double trace;
    double gradient;
};

LiteralResiduals literal_residuals(double H, double F) {
    const PhaseVelocity v = vector_field({H, F});
    const double dH = v.dH, dF = v.dF;
    const double R = -4.0 * dH - 6.0 * H * H;
    const double lap = 2.0 * H * F + dF;
    const double ddH = dH * F + H * dF - 4.0 * H * dH;
    const double dR = -4.0 * ddH - 12.0 * H * dH;
    const double ric_rr = -2.0 * (H * H + dH);
    return {R + lap + 1.5, dR - 2.0 * ric_rr * F};
}

double Q_at(double R, double F, double f) { return R + F * F + f; }

}  // namespace

std::vector<SolitonResidual> soliton_residuals(const Trajectory& traj, const MetricProfile& prof, double r_lo,
                                               double r_hi) {
    if (prof.r.size() != traj.size()) throw std::invalid_argument("soliton_residuals: profile not co-sampled");
    const double Q0 = traj.contains(0.0)
                          ? Q_at(curvature_at(0.0, traj.eval(0.0)).R, traj.eval(kF, 0.0), profile_f(traj, prof, 0.0))
                          : Q_at(curvature_at(traj.r(0), traj.state(0)).R, traj.state(0)[kF], prof.f[0]);
    std::vector<SolitonResidual> out;
    for (std::size_t i = 0; i < traj.size(); ++i) {
        const double r = traj.r(i);
        if (r < r_lo || r > r_hi) continue;
        const PhaseState& y = traj.state(i);
        const LiteralResiduals lit = literal_residuals(y[kH], y[kF]);
        SolitonResidual s;
        s.r = r;
        s.trace_identity = lit.trace;
        s.gradient_identity = lit.gradient;
        s.Q = Q_at(curvature_at(r, y).R, y[kF], prof.f[i]);
        s.Q_drift = s.Q - Q0;
        out.push_back(s);
    }
    return out;
}

const RatioEntry* AsymptoticsReport::find(const std::string& name) const {
    for (const auto& e : ratios) {
        if (e.name == name) return &e;
    }
    return nullptr;
}

namespace {

RatioEntry make_entry(std::string name, std::string target_name, double target, double r) {
    RatioEntry e;
    e.name = std::move(name);
    e.target_name = std::move(target_name);
    e.target = target;
    e.r = r;
    return e;
}

void fill(RatioEntry& e, double measured, std::string note = {}) {
    e.measured = measured;
    e.residual = measured - e.target;
    e.available = std::isfinite(measured);
    e.note = std::move(note);
}

}  // namespace

std::vector<AsymptoticsReport> check_asymptotics(const Trajectory& traj, const MetricProfile& prof,
                                                 const AsymptoticsConfig& cfg) {
    const double golden = 3.0 + std::sqrt(5.0);
    std::vector<AsymptoticsReport> out(2);

    AsymptoticsReport& cusp = out[0];
    cusp.end = "-inf";
    {
        const double r = cfg.cusp_r;
        std::vector<RatioEntry> e{
            make_entry("h/(r/2)", "1", 1.0, r),
            make_entry("(h-r/2)/(f-f0)", "3+sqrt(5)", golden, r),
            make_entry("(f-f0)/(h-r/2)", "3+sqrt(5)", golden, r),
            make_entry("(H-1/2)/F", "3+sqrt(5)", golden, r),
            make_entry("F/(H-1/2)", "3+sqrt(5)", golden, r),
        };
        if (traj.contains(r)) {
            const PhaseState y = traj.eval(r);
            const double dh = cusp_h_deviation(traj, prof, r);
            const double df = cusp_f_deviation(traj, prof, r);
            fill(e[0], profile_h(traj, prof, r) / (0.5 * r));
            fill(e[1], dh / df, "h - r/2 taken relative to its limit at the cusp");
            fill(e[2], df / dh, "h - r/2 taken relative to its limit at the cusp");
            fill(e[3], (y[kH] - 0.5) / y[kF]);
            fill(e[4], y[kF] / (y[kH] - 0.5));
        } else {
            for (auto& x : e) x.note = "r outside the computed range";
        }
        cusp.ratios = std::move(e);
        const DecayFit fit = fit_cusp_decay(traj, cfg.fit_lo, cfg.fit_hi);
        if (fit.valid) cusp.decay = fit;
    }

    AsymptoticsReport& flat = out[1];
    flat.end = "+inf";
    {
        const double r = cfg.flat_r;
        std::vector<RatioEntry> e{
            make_entry("H*r", "1", 1.0, r),
            make_entry("F/(-r/2)", "1", 1.0, r),
            make_entry("H*F", "-1/2", -0.5, r),
            make_entry("F'", "-1/2", -0.5, r),
            make_entry("h/ln(r)", "1", 1.0, r),
            make_entry("f/(-r^2/4)", "1", 1.0, r),
            make_entry("H/F", "0", 0.0, r),
        };
        if (traj.contains(r)) {
            const PhaseState y = traj.eval(r);
            const double H = y[kH], F = y[kF], W = y[kW];
            fill(e[0], H * r);
            fill(e[1], F / (-0.5 * r));
            fill(e[2], W + H * H - 0.5);
            fill(e[3], 2.0 * W - 0.5);
            fill(e[4], profile_h(traj, prof, r) / std::log(r), "no rate is asserted for this ratio");
            fill(e[5], profile_f(traj, prof, r) / (-0.25 * r * r));
            fill(e[6], H / F);
        } else {
            for (auto& x : e) x.note = "r outside the computed range";
        }
        flat.ratios = std::move(e);

        const double lo = r / 10.0;
        if (traj.contains(lo) && traj.contains(r) && cfg.trend_points >= 2) {
            flat.trend_decreasing = true;
            double prev = std::numeric_limits<double>::infinity();
            for (std::size_t i = 0; i < cfg.trend_points; ++i) {
                const double rr = lo * std::pow(10.0, static_cast<double>(i) / static_cast<double>(cfg.trend_points - 1));
                const double dev = std::abs(traj.eval(kH, rr) * rr - 1.0);
                flat.trend.emplace_back(rr, dev);
                if (!(dev < prev)) flat.trend_decreasing = false;
                prev = dev;
            }
        }
    }
    return out;
}

}  // namespace cusp
