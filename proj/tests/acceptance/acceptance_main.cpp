// Acceptance checks, one criterion per invocation: `acceptance N`.
// Prints "criterion N: PASS" or "criterion N: FAIL" followed by detail lines.

#include <algorithm>
#include <chrono>
#include <cstdarg>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "cusp/blowup.hpp"
#include "cusp/evolution.hpp"

using namespace cusp;

namespace {

struct Outcome {
    bool pass = true;
    std::vector<std::string> lines;

    void check(bool ok, const std::string& what) {
        lines.push_back(std::string(ok ? "  ok   " : "  FAIL ") + what);
        pass = pass && ok;
    }
    void note(const std::string& what) { lines.push_back("  note " + what); }
};

std::string f(const char* fmt, ...) __attribute__((format(printf, 1, 2)));
std::string f(const char* fmt, ...) {
    char buf[512];
    va_list ap;
    va_start(ap, fmt);
    std::vsnprintf(buf, sizeof buf, fmt, ap);
    va_end(ap);
    return buf;
}

const double kGolden = 3.0 + std::sqrt(5.0);

void check_runtime(Outcome& o, double seconds, double limit) {
    o.check(seconds < limit, f("runtime %.2f s < %.0f s", seconds, limit));
}

Outcome saddle_data() {
    Outcome o;
    const auto e = eigen_saddle(linearize(kSaddle));
    const double s5 = std::sqrt(5.0);
    const double d1 = std::abs(e[0].value - (-1.0 + s5) / 2.0), d2 = std::abs(e[1].value - (-1.0 - s5) / 2.0);
    const double d3 = std::abs(e[0].vector[1] / e[0].vector[0] - (3.0 + s5));
    const double d4 = std::abs(e[1].vector[1] / e[1].vector[0] - (3.0 - s5));
    o.check(d1 <= 1e-12, f("lambda1 = %.17g, error %.2e <= 1e-12", e[0].value, d1));
    o.check(d2 <= 1e-12, f("lambda2 = %.17g, error %.2e <= 1e-12", e[1].value, d2));
    o.check(d3 <= 1e-12, f("slope1 = %.17g, error %.2e <= 1e-12", e[0].vector[1], d3));
    o.check(d4 <= 1e-12, f("slope2 = %.17g, error %.2e <= 1e-12", e[1].vector[1], d4));
    return o;
}

Outcome conservation() {
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    ShootConfig c;
    c.controls.rel_tol = 1e-10;
    const Trajectory S = shoot_separatrix(c);
    const MetricProfile p = reconstruct_profiles(S);
    const auto res = soliton_residuals(S, p, -30.0, 100.0);
    double q = 0.0, tr = 0.0, gr = 0.0;
    for (const auto& r : res) {
        q = std::max(q, std::abs(r.Q_drift));
        tr = std::max(tr, std::abs(r.trace_identity));
        gr = std::max(gr, std::abs(r.gradient_identity));
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    o.check(res.size() > 100, f("%zu samples on [-30, 100]", res.size()));
    o.check(q <= 1e-8, f("max |Q - Q(0)| = %.3e <= 1e-8", q));
    o.check(tr <= 1e-8, f("max |R + Lap f + 3/2| = %.3e <= 1e-8", tr));
    o.check(gr <= 1e-8, f("max |R' - 2 Ric_rr F| = %.3e <= 1e-8", gr));
    check_runtime(o, secs, 5.0);
    return o;
}

Outcome pinching() {
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    const Trajectory S = shoot_separatrix();
    const auto cs = curvatures(S);
    std::size_t bad = 0;
    for (const auto& c : cs) {
        if (!(c.sec_xy > -0.25 && c.sec_xy < 0.0 && c.sec_rx > -0.25 && c.sec_rx < 0.0)) ++bad;
    }
    const auto& first = cs.front();
    const auto& last = cs.back();
    double fwd = 0.0;
    for (double v : {last.sec_xy, last.sec_rx, last.R, last.Ric_rr, last.Ric_tangential}) fwd = std::max(fwd, std::abs(v));
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    o.check(bad == 0, f("%zu of %zu samples outside -1/4 < sec < 0", bad, cs.size()));
    o.check(std::abs(first.sec_xy + 0.25) <= 1e-6,
            f("backward terminal sec_xy = %.13f, |+1/4| = %.2e <= 1e-6", first.sec_xy, std::abs(first.sec_xy + 0.25)));
    o.check(fwd < 1e-6, f("forward terminal max |curvature| = %.3e < 1e-6 at r = %.1f", fwd, last.r));
    check_runtime(o, secs, 5.0);
    return o;
}

Outcome asymptotics() {
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    const Trajectory S = shoot_separatrix();
    const MetricProfile p = reconstruct_profiles(S);
    const auto reps = check_asymptotics(S, p);
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

    const RatioEntry* cusp = reps[0].find("(h-r/2)/(f-f0)");
    const RatioEntry* inv = reps[0].find("(f-f0)/(h-r/2)");
    const double rel = std::abs(cusp->measured - kGolden) / kGolden;
    o.check(cusp->available && rel < 0.01,
            f("(h-r/2)/(f-f0) at r = -30: %.6f vs 3+sqrt5 = %.6f, relative error %.3g < 1%%", cusp->measured, kGolden, rel));
    o.note(f("reciprocal (f-f0)/(h-r/2) = %.6f, relative error %.2e", inv->measured,
             std::abs(inv->measured - kGolden) / kGolden));
    o.note(f("(H-1/2)/F = %.6f, F/(H-1/2) = %.6f", reps[0].find("(H-1/2)/F")->measured,
             reps[0].find("F/(H-1/2)")->measured));

    const RatioEntry* hf = reps[1].find("H*F");
    const RatioEntry* dF = reps[1].find("F'");
    const RatioEntry* hr = reps[1].find("H*r");
    o.check(std::abs(hf->measured + 0.5) < 1e-3, f("H F at r = 500: %.9f, |+1/2| < 1e-3", hf->measured));
    o.check(std::abs(dF->measured + 0.5) < 1e-3, f("F' at r = 500: %.12f, |+1/2| < 1e-3", dF->measured));
    o.check(std::abs(hr->measured - 1.0) < 0.02, f("H r at r = 500: %.6f, |-1| < 2%%", hr->measured));
    o.check(reps[1].trend_decreasing,
            f("|H r - 1| decreasing over r in [50, 500] (%zu points)", reps[1].trend.size()));
    check_runtime(o, secs, 30.0);
    return o;
}

Outcome barriers() {
    Outcome o;
    const Trajectory S = shoot_separatrix();
    const auto reps = certify_barriers(S, 10000);
    o.check(reps.size() == 5, f("%zu named curves", reps.size()));
    for (const auto& r : reps) {
        o.check(r.barrier() && r.r.size() >= 10000,
                f("%-28s %s, min margin %.3e at r = %.3f, %zu samples", r.curve.c_str(), r.verdict().c_str(),
                  r.min_margin, r.min_at, r.r.size()));
    }
    return o;
}

std::vector<ShadowSample> shadow_of(const Trajectory& S) {
    std::vector<ShadowSample> v;
    for (double r : {10.0, 20.0, 40.0}) {
        const PhasePoint p = S.point_at(r);
        v.push_back({r, p.H, p.F});
    }
    return v;
}

Outcome blowups() {
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    const Trajectory S = shoot_separatrix();
    SequenceConfig sc;
    sc.shadow = shadow_of(S);
    sc.mode = SMode::generic;
    const BlowupReport g = run_sequence(sc);
    sc.mode = SMode::s_one;
    const BlowupReport one = run_sequence(sc);
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

    const RationalFunctionS target(CoeffAffineT(Rational(-1), Rational(1)), CoeffAffineT(Rational(0), Rational(8)));
    o.check(g.blowups == 6, f("generic s: separation after %d blow-ups (6)", g.blowups));
    o.check(g.abscissa == target, "generic s: abscissa " + g.abscissa.str() + " == (s-1)/(8*s)");
    o.check(g.contact_order == 5, f("generic s: contact order %d (5)", g.contact_order));
    o.check(one.blowups == 10, f("s = 1: separation after %d blow-ups (10)", one.blowups));
    o.check(one.abscissa.is_constant() && one.abscissa.constant_value() == Rational(1, 8),
            "s = 1: abscissa " + one.abscissa.str() + " == 1/8");
    o.check(one.contact_order == 9, f("s = 1: contact order %d (9)", one.contact_order));
    check_runtime(o, secs, 10.0);
    return o;
}

Outcome dichotomy() {
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    const Trajectory S = shoot_separatrix();
    for (double t : {0.0, 1.0, 10.0}) {
        const auto c = find_crossings(S, TimeParam(t));
        o.check(c.count() >= 1, f("t = %g: %zu crossing(s) of C_t with S", t, c.count()));
    }
    const auto c7 = find_crossings(S, TimeParam(-0.7));
    const auto p7 = scan_psi(TimeParam(-0.7));
    o.check(c7.count() == 0, f("t = -0.7: %zu crossings", c7.count()));
    o.check(p7.positive, "t = -0.7: Psi " + p7.verdict() + f(" (min %.3e)", p7.min_value));
    const auto p2 = scan_psi(TimeParam(-0.2));
    o.check(!p2.positive, "t = -0.2: Psi " + p2.verdict() + f(" (min %.3e at y = %.3f)", p2.min_value, p2.min_at));
    const DeltaScan d = scan_delta_threshold(S, {-0.7, -0.5, -0.3, -0.2, -0.1, -0.05, -0.03, -0.02, -0.01, 0.0});
    const auto& cb = d.crossing_threshold;
    const auto& bb = d.barrier_threshold;
    o.check(cb.found && cb.lo > -0.7 && cb.hi < 0.0, f("crossing threshold in [%.6f, %.6f]", cb.lo, cb.hi));
    o.check(bb.found && bb.lo > -0.7 && bb.hi < 0.0, f("Psi barrier threshold in [%.6f, %.6f]", bb.lo, bb.hi));
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    check_runtime(o, secs, 60.0);
    return o;
}

Outcome histories() {
    Outcome o;
    const Trajectory S = shoot_separatrix();
    std::vector<double> grid;
    const double a = std::log1p(-0.9), b = std::log1p(100.0);
    for (int i = 0; i <= 400; ++i) grid.push_back(std::expm1(a + (b - a) * i / 400.0));
    grid.push_back(0.0);
    std::sort(grid.begin(), grid.end());
    for (double F : {-1.0, -10.0}) {
        const auto r0 = S.first_crossing(kF, F);
        if (!r0) {
            o.check(false, f("anchor F = %g not on S", F));
            continue;
        }
        const PointwiseHistory h = pointwise_R_history(*r0, grid, S);
        bool neg = true;
        for (const auto& s : h.samples) neg = neg && s.R < 0.0;
        const double after = h.last_sign_change.value_or(grid.front());
        bool pos = true;
        for (const auto& s : h.samples)
            if (s.t > after) pos = pos && s.dRdt > 0.0;
        const std::size_t n = h.samples.size();
        bool dec = n >= 3;
        for (std::size_t i = n >= 3 ? n - 3 : 0; i + 1 < n; ++i)
            dec = dec && std::abs(h.samples[i + 1].R) < std::abs(h.samples[i].R);
        o.check(!h.truncated, f("F = %g (r0 = %.6f): %zu samples, not truncated", F, *r0, n));
        o.check(neg, f("F = %g: R < 0 throughout", F));
        o.check(pos, f("F = %g: dR/dt > 0 for t > %.4f", F, after));
        o.check(dec, f("F = %g: |R| decreasing at the grid end, R(%g) = %.6e", F, grid.back(), h.samples.back().R));
    }
    return o;
}

Outcome properties() {
    Outcome o;
    std::mt19937 rng(1234);

    // central symmetry
    {
        std::uniform_real_distribution<double> uH(-0.45, 0.45), uF(-1.0, 1.0);
        double worst = 0.0;
        for (int i = 0; i < 10; ++i) {
            const PhasePoint p{uH(rng), uF(rng)};
            IntegratorControls c;
            c.rel_tol = 1e-12;
            c.abs_tol = 1e-14;
            c.r_max = 1.0;
            const Trajectory fw = integrate(p, 0.0, c);
            c = IntegratorControls{};
            c.rel_tol = 1e-12;
            c.abs_tol = 1e-14;
            c.r_min = -1.0;
            c.direction = Direction::backward;
            const Trajectory bw = integrate({-p.H, -p.F}, 0.0, c);
            for (int k = 0; k <= 20; ++k) {
                const double r = k / 20.0;
                const PhasePoint u = fw.point_at(r), v = bw.point_at(-r);
                worst = std::max({worst, std::abs(u.H + v.H), std::abs(u.F + v.F)});
            }
        }
        o.check(worst <= 1e-8, f("central symmetry on 10 orbits: max deviation %.2e <= 1e-8", worst));
    }

    // two formulas for sec_rx
    {
        const Trajectory S = shoot_separatrix();
        double worst = 0.0;
        for (const auto& c : curvatures(S)) worst = std::max(worst, std::abs(c.sec_rx - c.sec_rx_alt));
        o.check(worst <= 1e-10, f("sec_rx formulas along S: max gap %.2e <= 1e-10", worst));
    }

    // pullback identity
    {
        std::uniform_int_distribution<int> num(-60, 60), den(1, 19);
        auto rnd = [&] { return Rational(num(rng), den(rng)); };
        BlowupState st = chart_to_infinity(ct_polynomial());
        std::size_t bad = 0, total = 0;
        for (int k = 0; k < 6; ++k) {
            const BlowupState next = blowup_once(st);
            const int m = next.log.back().curve_power;
            for (int i = 0; i < 100; ++i) {
                const Rational x = rnd(), s = rnd();
                Rational y = rnd();
                if (y == 0) y = Rational(1, 7);
                if (st.curve.eval(x * y, y, s) != ipow(y, m) * next.curve.eval(x, y, s)) ++bad;
                ++total;
            }
            st = next;
        }
        o.check(bad == 0, f("pullback identity: %zu mismatches in %zu exact evaluations", bad, total));
    }

    // gradient of C_t
    {
        std::uniform_real_distribution<double> ux(-1.0, 1.0), uy(-3.0, 1.0), ut(-0.9, 10.0);
        double worst = 0.0;
        const double h = 1e-5;
        for (int i = 0; i < 20; ++i) {
            const double x = ux(rng), y = uy(rng);
            const TimeParam tp(ut(rng));
            const auto g = grad_Ct(x, y, tp);
            const double gx = (Ct(x + h, y, tp) - Ct(x - h, y, tp)) / (2 * h);
            const double gy = (Ct(x, y + h, tp) - Ct(x, y - h, tp)) / (2 * h);
            worst = std::max({worst, std::abs(g[0] - gx), std::abs(g[1] - gy)});
        }
        o.check(worst <= 1e-6, f("grad C_t vs central differences at 20 points: %.2e <= 1e-6", worst));
    }
    return o;
}

}  // namespace

int main(int argc, char** argv) {
    const std::map<int, std::function<Outcome()>> criteria{
        {1, saddle_data}, {2, conservation}, {3, pinching}, {4, asymptotics}, {5, barriers},
        {6, blowups},     {7, dichotomy},    {8, histories}, {9, properties},
    };
    std::vector<int> which;
    for (int i = 1; i < argc; ++i) which.push_back(std::atoi(argv[i]));
    if (which.empty())
        for (const auto& [k, v] : criteria) which.push_back(k);

    bool all = true;
    for (int n : which) {
        const auto it = criteria.find(n);
        if (it == criteria.end()) {
            std::printf("criterion %d: unknown\n", n);
            return 2;
        }
        Outcome o;
        try {
            o = it->second();
        } catch (const std::exception& e) {
            o.check(false, std::string("exception: ") + e.what());
        }
        std::printf("criterion %d: %s\n", n, o.pass ? "PASS" : "FAIL");
        for (const auto& l : o.lines) std::printf("%s\n", l.c_str());
        all = all && o.pass;
    }
    return all ? 0 : 1;
}
