#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "cusp/geometry.hpp"
#include "cusp/separatrix.hpp"

using namespace cusp;

namespace {

const Trajectory& S() {
    static const Trajectory s = shoot_separatrix();
    return s;
}

const MetricProfile& prof() {
    static const MetricProfile p = reconstruct_profiles(S());
    return p;
}

Trajectory two_sided(PhasePoint p, double r_lo, double r_hi) {
    IntegratorControls c;
    c.rel_tol = 1e-12;
    c.abs_tol = 1e-14;
    c.r_max = r_hi;
    const Trajectory f = integrate(p, 0.0, c);
    c.r_max = 1e6;
    c.r_min = r_lo;
    c.direction = Direction::backward;
    const Trajectory b = integrate(p, 0.0, c);
    return Trajectory::join(b, f);
}

}  // namespace

TEST_CASE("curvature at the saddle") {
    const CurvatureSample c = curvature_at(0.0, augment(kSaddle));
    CHECK(c.sec_xy == -0.25);
    CHECK(c.sec_rx == -0.25);
    CHECK(c.sec_rx_alt == -0.25);
    CHECK(c.R == -1.5);
    CHECK(c.grad_f_sq == 0.0);
    CHECK(c.R + c.laplacian_f + 1.5 == 0.0);
}

TEST_CASE("pinching along S") {
    const auto cs = curvatures(S());
    REQUIRE(cs.size() == S().size());
    for (const auto& c : cs) {
        CHECK(c.sec_xy > -0.25);
        CHECK(c.sec_xy < 0.0);
        CHECK(c.sec_rx > -0.25);
        CHECK(c.sec_rx < 0.0);
    }
    CHECK(std::abs(cs.front().sec_xy + 0.25) < 1e-6);
    const auto& last = cs.back();
    for (double v : {last.sec_xy, last.sec_rx, last.R, last.Ric_rr, last.Ric_tangential}) CHECK(std::abs(v) < 1e-6);
}

TEST_CASE("two formulas for sec_rx") {
    for (const auto& c : curvatures(S())) CHECK(std::abs(c.sec_rx - c.sec_rx_alt) < 1e-10);

    std::mt19937 rng(3);
    std::uniform_real_distribution<double> uH(0.05, 0.45), uF(-3.0, 0.0);
    for (int i = 0; i < 3; ++i) {
        const Trajectory t = two_sided({uH(rng), uF(rng)}, -1.0, 1.0);
        for (const auto& c : curvatures(t)) CHECK(std::abs(c.sec_rx - c.sec_rx_alt) < 1e-10);
    }
}

TEST_CASE("soliton identities along S") {
    const auto res = soliton_residuals(S(), prof(), -30.0, 100.0);
    REQUIRE(res.size() > 100);
    double q = 0.0;
    for (const auto& r : res) {
        CHECK(std::abs(r.trace_identity) < 1e-10);
        CHECK(std::abs(r.gradient_identity) < 1e-8);
        q = std::max(q, std::abs(r.Q_drift));
    }
    CHECK(q < 1e-8);
}

TEST_CASE("Q constant on other orbits") {
    std::mt19937 rng(5);
    std::uniform_real_distribution<double> uH(0.1, 0.4), uF(-2.0, -0.2);
    for (int i = 0; i < 3; ++i) {
        const Trajectory t = two_sided({uH(rng), uF(rng)}, -2.0, 2.0);
        const MetricProfile p = reconstruct_profiles(t);
        const auto res = soliton_residuals(t, p);
        REQUIRE(!res.empty());
        for (const auto& r : res) CHECK(std::abs(r.Q_drift) < 1e-8);
    }
}

TEST_CASE("profiles") {
    const MetricProfile& p = prof();
    REQUIRE(p.r.size() == S().size());
    for (std::size_t i = 1; i < p.h.size(); ++i) CHECK(p.h[i] > p.h[i - 1]);
    CHECK(profile_h(S(), p, 0.0) == doctest::Approx(0.0));
    CHECK(p.decay.valid);
    CHECK(p.decay.alpha > 0.0);
    CHECK(p.decay.alpha == doctest::Approx((std::sqrt(5.0) - 1.0) / 2.0).epsilon(1e-3));
    CHECK(profile_f(S(), p, 1500.0) / (-0.25 * 1500.0 * 1500.0) == doctest::Approx(1.0).epsilon(0.02));

    // quadrature self-consistency under tolerance halving
    ShootConfig c;
    c.controls.rel_tol = 5e-11;
    c.controls.abs_tol = 5e-13;
    const Trajectory s2 = shoot_separatrix(c);
    const double a = S().integral(kH, -30.0, 0.0);
    const double b = s2.integral(kH, -30.0, 0.0);
    CHECK(std::abs(a - b) < 1e-8);
    CHECK(a == doctest::Approx(profile_h(S(), p, 0.0) - profile_h(S(), p, -30.0)).epsilon(1e-12));
}

TEST_CASE("constant orbit is the hyperbolic cusp") {
    const Trajectory t = two_sided(kSaddle, -5.0, 5.0);
    const MetricProfile p = reconstruct_profiles(t, 1.0, 2.0);
    for (std::size_t i = 0; i < p.r.size(); ++i) {
        CHECK(p.h[i] == doctest::Approx(1.0 + p.r[i] / 2.0));
        CHECK(p.f[i] == doctest::Approx(2.0));
    }
}

TEST_CASE("asymptotic ratios") {
    const auto reps = check_asymptotics(S(), prof());
    REQUIRE(reps.size() == 2);
    CHECK(reps[0].end == "-inf");
    CHECK(reps[1].end == "+inf");
    for (const auto& rep : reps)
        for (const auto& e : rep.ratios) CHECK(!e.target_name.empty());

    const auto* hf = reps[1].find("H*F");
    REQUIRE(hf);
    CHECK(std::abs(hf->measured + 0.5) < 1e-3);
    const auto* dF = reps[1].find("F'");
    REQUIRE(dF);
    CHECK(std::abs(dF->measured + 0.5) < 1e-3);
    const auto* hr = reps[1].find("H*r");
    REQUIRE(hr);
    CHECK(std::abs(hr->measured - 1.0) < 0.02);
    CHECK(reps[1].trend_decreasing);
    const auto* ratio = reps[1].find("H/F");
    REQUIRE(ratio);
    CHECK(std::abs(ratio->measured) < 1e-5);
    REQUIRE(reps[0].decay);
    CHECK(reps[0].find("h/(r/2)")->measured == doctest::Approx(1.0).epsilon(0.05));
}
