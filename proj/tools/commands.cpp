#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <iostream>

#include "cusp/blowup.hpp"
#include "cusp/evolution.hpp"

namespace cusp::cli {

using nlohmann::json;

namespace {

std::string tag(double t) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%g", t);
    return buf;
}

json num(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

json leg_end(const LegEnd& e) {
    json j{{"reason", to_string(e.reason)}};
    if (!e.stop_name.empty()) j["stop"] = e.stop_name;
    return j;
}

json curvature_json(const CurvatureSample& c) {
    return {{"r", num(c.r)},           {"sec_xy", num(c.sec_xy)},
            {"sec_rx", num(c.sec_rx)}, {"R", num(c.R)},
            {"Ric_rr", num(c.Ric_rr)}, {"Ric_tangential", num(c.Ric_tangential)},
            {"laplacian_f", num(c.laplacian_f)}, {"grad_f_sq", num(c.grad_f_sq)}};
}

double max_abs_curvature(const CurvatureSample& c) {
    return std::max({std::abs(c.sec_xy), std::abs(c.sec_rx), std::abs(c.R), std::abs(c.Ric_rr),
                     std::abs(c.Ric_tangential)});
}

}  // namespace

Context::Context(RunConfig cfg, bool quiet) : cfg_(std::move(cfg)), out_(cfg_.output_dir), quiet_(quiet) {}

const Trajectory& Context::S() {
    if (!S_) S_ = shoot_separatrix(cfg_.shoot());
    return *S_;
}

const MetricProfile& Context::profile() {
    if (!profile_) profile_ = reconstruct_profiles(S());
    return *profile_;
}

void Context::say(const std::string& line) const {
    if (!quiet_) std::cout << line << '\n';
}

void Context::warn(const std::string& line) {
    std::cerr << "warning: " << line << '\n';
    status_ = std::max(status_, static_cast<int>(kRangeWarning));
}

void cmd_separatrix(Context& ctx) {
    const RunConfig& cfg = ctx.cfg();
    const Trajectory& S = ctx.S();
    const MetricProfile& prof = ctx.profile();

    Table samples{{"r", "H", "F", "h", "f"}, {}};
    for (std::size_t i = 0; i < S.size(); ++i) {
        samples.rows.push_back({S.r(i), S.state(i)[kH], S.state(i)[kF], prof.h[i], prof.f[i]});
    }
    ctx.out().write_table("separatrix", samples, cfg.format, {{1, 2}, {0, 1}, {0, 2}, {0, 3}, {0, 4}});

    Table iso{{"H", "F_vertical", "F_horizontal", "F_oblique"}, {}};
    for (std::size_t i = 0; i < cfg.isocline_points; ++i) {
        const double H = cfg.isocline_H_min +
                         (cfg.isocline_H_max - cfg.isocline_H_min) * static_cast<double>(i) / (cfg.isocline_points - 1);
        iso.rows.push_back({H, isocline_F(IsoclineKind::vertical, H), isocline_F(IsoclineKind::horizontal, H),
                            isocline_F(IsoclineKind::oblique, H)});
    }
    ctx.out().write_table("isoclines", iso, cfg.format, {{0, 1}, {0, 2}, {0, 3}});

    const std::vector<BarrierReport> barriers = certify_barriers(S, cfg.barrier_samples);
    json jb = json::array();
    bool all = true;
    for (const auto& b : barriers) {
        json e{{"curve", b.curve},
               {"claim", b.claim},
               {"verdict", b.verdict()},
               {"min_margin", num(b.min_margin)},
               {"min_at", num(b.min_at)},
               {"samples", b.r.size()}};
        if (b.flux_min) e["flux_min"] = num(*b.flux_min);
        jb.push_back(e);
        all = all && b.barrier();
        ctx.say("barrier " + b.curve + ": " + b.verdict());
    }
    ctx.out().write_json("barriers.json", jb);

    const auto saddle = eigen_saddle(linearize(kSaddle));
    const OrbitChecks chk = check_orbit(S);
    const ShootingStability stab = shooting_stability(cfg.shoot(), S, std::max(S.r_front(), cfg.cusp_r),
                                                      std::min(S.r_back(), cfg.residual_r_max));
    json rep{
        {"saddle",
         {{"H", kSaddle.H},
          {"F", kSaddle.F},
          {"eigenvalues", {saddle[0].value, saddle[1].value}},
          {"eigenvectors", {{saddle[0].vector[0], saddle[0].vector[1]}, {saddle[1].vector[0], saddle[1].vector[1]}}}}},
        {"orbit",
         {{"r_front", S.r_front()},
          {"r_back", S.r_back()},
          {"nodes", S.size()},
          {"end_low", leg_end(S.end_low())},
          {"end_high", leg_end(S.end_high())},
          {"H_back", S.state(S.size() - 1)[kH]},
          {"F_back", S.state(S.size() - 1)[kF]}}},
        {"checks",
         {{"samples", chk.samples},
          {"band_violations", chk.band_violations},
          {"F_positive", chk.F_positive},
          {"dF_out_of_range", chk.dF_out_of_range},
          {"dH_nonnegative", chk.dH_nonnegative},
          {"H_not_decreasing", chk.H_not_decreasing},
          {"vertical_side_constant", chk.vertical_side_constant},
          {"ok", chk.ok()}}},
        {"shooting_stability", {{"offset", stab.offset}, {"max_dH", stab.max_dH}, {"r_lo", stab.r_lo}, {"r_hi", stab.r_hi}}},
        {"all_barriers", all},
    };
    ctx.out().write_json("separatrix_report.json", rep);
    ctx.say("separatrix: r in [" + fmt17(S.r_front()) + ", " + fmt17(S.r_back()) + "], " + std::to_string(S.size()) +
            " nodes");
    if (!all || !chk.ok()) throw std::runtime_error("separatrix checks failed");
}

void cmd_curvature(Context& ctx) {
    const RunConfig& cfg = ctx.cfg();
    const Trajectory& S = ctx.S();
    const MetricProfile& prof = ctx.profile();

    const std::vector<CurvatureSample> cs = curvatures(S);
    Table t{{"r", "sec_xy", "sec_rx", "R", "Ric_rr", "Ric_tangential", "laplacian_f", "grad_f_sq", "sec_rx_alt"}, {}};
    std::size_t pinch_violations = 0;
    double max_sec_rx_gap = 0.0;
    for (const auto& c : cs) {
        t.rows.push_back({c.r, c.sec_xy, c.sec_rx, c.R, c.Ric_rr, c.Ric_tangential, c.laplacian_f, c.grad_f_sq, c.sec_rx_alt});
        if (!(c.sec_xy > -0.25 && c.sec_xy < 0.0 && c.sec_rx > -0.25 && c.sec_rx < 0.0)) ++pinch_violations;
        max_sec_rx_gap = std::max(max_sec_rx_gap, std::abs(c.sec_rx - c.sec_rx_alt));
    }
    ctx.out().write_table("curvature", t, cfg.format, {{0, 1}, {0, 2}, {0, 3}});

    const auto res = soliton_residuals(S, prof, cfg.cusp_r, cfg.residual_r_max);
    Table rt{{"r", "trace_identity", "gradient_identity", "Q", "Q_drift"}, {}};
    double max_trace = 0.0, max_grad = 0.0, max_drift = 0.0;
    for (const auto& r : res) {
        rt.rows.push_back({r.r, r.trace_identity, r.gradient_identity, r.Q, r.Q_drift});
        max_trace = std::max(max_trace, std::abs(r.trace_identity));
        max_grad = std::max(max_grad, std::abs(r.gradient_identity));
        max_drift = std::max(max_drift, std::abs(r.Q_drift));
    }
    ctx.out().write_table("soliton_residuals", rt, cfg.format, {{0, 4}});

    const CurvatureSample saddle = curvature_at(0.0, augment(kSaddle));
    const CurvatureSample& low = cs.front();
    const CurvatureSample& high = cs.back();
    json rep{{"saddle", curvature_json(saddle)},
             {"backward_terminal", curvature_json(low)},
             {"forward_terminal", curvature_json(high)},
             {"pinching_violations", pinch_violations},
             {"max_sec_rx_formula_gap", max_sec_rx_gap},
             {"residuals",
              {{"r_lo", cfg.cusp_r},
               {"r_hi", cfg.residual_r_max},
               {"max_trace_identity", max_trace},
               {"max_gradient_identity", max_grad},
               {"max_Q_drift", max_drift}}}};
    ctx.out().write_json("curvature_report.json", rep);
    ctx.say("curvature: saddle R = " + fmt17(saddle.R) + ", pinching violations " + std::to_string(pinch_violations));

    if (std::abs(low.sec_xy + 0.25) >= 1e-6) ctx.warn("cusp end not reached: sec_xy at the first sample is " + fmt17(low.sec_xy));
    if (max_abs_curvature(high) >= 1e-6) {
        ctx.warn("flat end not reached: curvature at the last sample is " + fmt17(max_abs_curvature(high)));
    }
    if (S.r_front() > cfg.cusp_r || S.r_back() < cfg.residual_r_max) ctx.warn("residual range exceeds the orbit");
}

void cmd_asymptotics(Context& ctx) {
    const RunConfig& cfg = ctx.cfg();
    AsymptoticsConfig acfg;
    acfg.cusp_r = cfg.cusp_r;
    acfg.flat_r = cfg.flat_r;
    const auto reps = check_asymptotics(ctx.S(), ctx.profile(), acfg);
    json out = json::array();
    bool missing = false;
    for (const auto& rep : reps) {
        json ratios = json::array();
        for (const auto& e : rep.ratios) {
            json je{{"name", e.name},        {"target_name", e.target_name}, {"target", num(e.target)},
                    {"r", num(e.r)},         {"measured", num(e.measured)},  {"residual", num(e.residual)},
                    {"available", e.available}};
            if (!e.note.empty()) je["note"] = e.note;
            ratios.push_back(je);
            missing = missing || !e.available;
            if (e.available) ctx.say(rep.end + " " + e.name + " = " + fmt17(e.measured) + " (target " + e.target_name + ")");
        }
        json jr{{"end", rep.end}, {"ratios", ratios}};
        if (rep.decay) {
            jr["decay"] = {{"alpha", rep.decay->alpha},
                           {"expected", (std::sqrt(5.0) - 1.0) / 2.0},
                           {"r_lo", rep.decay->r_lo},
                           {"r_hi", rep.decay->r_hi},
                           {"samples", rep.decay->samples}};
        }
        if (!rep.trend.empty()) {
            json tr = json::array();
            for (const auto& [r, d] : rep.trend) tr.push_back({r, d});
            jr["trend"] = tr;
            jr["trend_decreasing"] = rep.trend_decreasing;
        }
        out.push_back(jr);
    }
    ctx.out().write_json("asymptotics.json", out);
    if (missing) ctx.warn("some asymptotic ratios fall outside the computed orbit");
}

void cmd_evolve(Context& ctx) {
    const RunConfig& cfg = ctx.cfg();
    const Trajectory& S = ctx.S();
    CrossingConfig ccfg;
    ccfg.min_samples = cfg.crossing_samples;
    PsiScanConfig pcfg;
    pcfg.y_max = cfg.psi_y_max;
    pcfg.points = cfg.psi_points;

    Table ct{{"t", "index", "r", "H", "F", "from_sign"}, {}};
    json per_t = json::array();
    for (double t : cfg.t_grid) {
        const TimeParam tp(t);
        const CrossingReport cr = find_crossings(S, tp, ccfg);
        for (std::size_t i = 0; i < cr.crossings.size(); ++i) {
            const Crossing& c = cr.crossings[i];
            ct.rows.push_back({t, static_cast<double>(i), c.r, c.H, c.F, static_cast<double>(c.from_sign)});
        }
        const PsiScan ps = scan_psi(tp, pcfg);
        Table pt{{"y", "x", "psi"}, {}};
        for (std::size_t i = 0; i < ps.y.size(); ++i) pt.rows.push_back({ps.y[i], ct_branch_x(ps.y[i], tp), ps.psi[i]});
        ctx.out().write_table("psi_t" + tag(t), pt, cfg.format, {{0, 2}, {1, 0}});

        json pattern = json::array();
        for (const auto& [r, s] : cr.sign_pattern) pattern.push_back({r, s});
        json cj = json::array();
        for (const auto& c : cr.crossings) cj.push_back(c.r);
        per_t.push_back({{"t", t},
                         {"crossings", cr.count()},
                         {"crossing_r", cj},
                         {"certified_from", num(cr.certified_from)},
                         {"certified_to", num(cr.certified_to)},
                         {"samples", cr.samples},
                         {"uncertain_samples", cr.uncertain_samples},
                         {"sign_pattern", pattern},
                         {"psi_verdict", ps.verdict()},
                         {"psi_min", num(ps.min_value)},
                         {"psi_min_at", num(ps.min_at)},
                         {"psi_tail_coefficient", num(ps.tail_coefficient)},
                         {"psi_tail_measured", num(ps.tail_measured)}});
        ctx.say("t = " + tag(t) + ": " + std::to_string(cr.count()) + " crossing(s), psi " + ps.verdict());
    }
    ctx.out().write_table("crossings", ct, cfg.format, {{0, 2}});

    const DeltaScan ds = scan_delta_threshold(S, cfg.delta_grid, cfg.delta_width, ccfg, pcfg);
    auto bracket = [](const ThresholdBracket& b) {
        return json{{"name", b.name}, {"found", b.found}, {"lo", num(b.lo)}, {"hi", num(b.hi)}, {"evaluations", b.evaluations}};
    };
    json dj{{"t_grid", ds.t_grid},
            {"crossing_counts", ds.crossing_counts},
            {"psi_verdicts", ds.psi_verdicts},
            {"crossing_threshold", bracket(ds.crossing_threshold)},
            {"barrier_threshold", bracket(ds.barrier_threshold)}};
    ctx.out().write_json("delta.json", dj);
    if (ds.crossing_threshold.found) {
        ctx.say("crossing threshold in [" + fmt17(ds.crossing_threshold.lo) + ", " + fmt17(ds.crossing_threshold.hi) + "]");
    }

    std::vector<double> grid(cfg.history_points);
    const double a = std::log1p(cfg.history_t_min), b = std::log1p(cfg.history_t_max);
    for (std::size_t i = 0; i < grid.size(); ++i) {
        grid[i] = std::expm1(a + (b - a) * static_cast<double>(i) / (grid.size() - 1));
    }
    grid.push_back(0.0);
    std::sort(grid.begin(), grid.end());
    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());

    json hist = json::array();
    for (double F : cfg.history_F) {
        const auto r0 = S.first_crossing(kF, F);
        if (!r0) {
            ctx.warn("history anchor F = " + tag(F) + " is outside the orbit");
            continue;
        }
        const PointwiseHistory h = pointwise_R_history(*r0, grid, S, cfg.rel_tol, cfg.abs_tol);
        Table ht{{"t", "r", "R", "dRdt"}, {}};
        bool negative = true;
        for (const auto& s : h.samples) {
            ht.rows.push_back({s.t, s.r, s.R, s.dRdt});
            negative = negative && s.R < 0.0;
        }
        const double after = h.last_sign_change.value_or(h.samples.empty() ? 0.0 : h.samples.front().t);
        bool positive_after = true;
        for (const auto& s : h.samples) {
            if (s.t >= after && !(s.dRdt > 0.0)) positive_after = false;
        }
        bool decreasing_end = h.samples.size() >= 3;
        for (std::size_t i = h.samples.size() >= 3 ? h.samples.size() - 3 : 0; i + 1 < h.samples.size(); ++i) {
            if (!(std::abs(h.samples[i + 1].R) < std::abs(h.samples[i].R))) decreasing_end = false;
        }
        ctx.out().write_table("history_F" + tag(F), ht, cfg.format, {{0, 2}, {0, 3}});
        hist.push_back({{"anchor_F", F},
                        {"r0", *r0},
                        {"truncated", h.truncated},
                        {"last_sign_change", h.last_sign_change ? json(*h.last_sign_change) : json(nullptr)},
                        {"R_negative_throughout", negative},
                        {"dRdt_positive_after_last_change", positive_after},
                        {"abs_R_decreasing_at_end", decreasing_end},
                        {"R_end", h.samples.empty() ? json(nullptr) : num(h.samples.back().R)}});
        if (h.truncated) ctx.warn("history from F = " + tag(F) + " left the computed orbit");
    }
    ctx.out().write_json("evolve.json", {{"times", per_t}, {"histories", hist}});
}

void cmd_blowup(Context& ctx) {
    const RunConfig& cfg = ctx.cfg();
    const Trajectory& S = ctx.S();
    std::vector<ShadowSample> shadow;
    for (double r : cfg.shadow_r) {
        if (!S.contains(r)) throw std::runtime_error("shadow sample r = " + tag(r) + " outside the orbit");
        const PhasePoint p = S.point_at(r);
        shadow.push_back({r, p.H, p.F});
    }
    json summary = json::array();
    for (CurveChoice c : {CurveChoice::ct, CurveChoice::vertical_isocline}) {
        for (SMode m : {SMode::generic, SMode::s_one}) {
            SequenceConfig sc;
            sc.mode = m;
            sc.curve = c;
            sc.shadow = shadow;
            const BlowupReport rep = run_sequence(sc);
            const std::string stem = "blowup_" + to_string(c) + "_" + to_string(m);
            ctx.out().write(stem + ".txt", report_to_string(rep));
            ctx.out().write(stem + "_state.txt", state_to_string(rep.final_state));
            json tr = json::array();
            for (const auto& [k, a] : rep.translations) tr.push_back({{"after_blowup", k}, {"a", to_string(a)}});
            summary.push_back({{"curve", to_string(c)},
                               {"mode", to_string(m)},
                               {"blowups", rep.blowups},
                               {"contact_order", rep.contact_order},
                               {"final_point", to_string(rep.final_point)},
                               {"abscissa", rep.abscissa.str()},
                               {"translations", tr},
                               {"rhythm", rep.rhythm ? json(*rep.rhythm) : json(nullptr)}});
            ctx.say(stem + ": " + std::to_string(rep.blowups) + " blow-ups, contact order " +
                    std::to_string(rep.contact_order) + ", abscissa " + rep.abscissa.str());
        }
    }
    ctx.out().write_json("blowup.json", summary);
}

}  // namespace cusp::cli
