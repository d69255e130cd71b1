#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "cusp/evolution.hpp"

using namespace cusp;

namespace {

const Trajectory& S() {
    static const Trajectory s = shoot_separatrix();
    return s;
}

int sgn(double v) { return (v > 0.0) - (v < 0.0); }

}  // namespace

TEST_CASE("time parameter") {
    CHECK(TimeParam(0.0).s() == 1.0);
    CHECK(TimeParam(10.0).s() == 11.0);
    CHECK_THROWS(TimeParam(-1.0));
    CHECK_THROWS(TimeParam(-2.0));
}

TEST_CASE("dR/dt at the saddle") {
    for (double t : {-0.7, -0.2, 0.0, 1.0, 10.0}) {
        CHECK(dRdt(kSaddle, TimeParam(t)) == doctest::Approx(1.5 / ((t + 1) * (t + 1))));
    }
    for (double y : {-3.0, -0.5, 0.0, 2.0}) {
        const TimeParam tp(0.4);
        CHECK(Ct(0.0, y, tp) == doctest::Approx(1.0 - 1.4 * y * y));
        CHECK(dRdt({0.0, y}, tp) == doctest::Approx(2.0 * Ct(0.0, y, tp) / (1.4 * 1.4)));
    }
}

TEST_CASE("C_t values") {
    const TimeParam t0(0.0);
    CHECK(Ct(0.5, 0.0, t0) == 0.75);
    CHECK(Ct(1.0, 1.0, t0) == 1.0);
    for (double t : {-0.5, 0.0, 3.0}) {
        const TimeParam tp(t);
        CHECK(Ct(0.0, -1.0 / std::sqrt(tp.s()), tp) == doctest::Approx(0.0));
        CHECK(ct_branch_y_end(tp) == doctest::Approx(-1.0 / std::sqrt(tp.s())));
    }
    const PhaseState y = augment({0.3, -1.2});
    CHECK(Ct_state(y, TimeParam(2.0)) == doctest::Approx(Ct(0.3, -1.2, TimeParam(2.0))));
    CHECK(dRdt_state(y, TimeParam(2.0)) == doctest::Approx(dRdt({0.3, -1.2}, TimeParam(2.0))));
}

TEST_CASE("gradient of C_t against central differences") {
    CHECK(grad_Ct(0.0, 0.0, TimeParam(1.0))[0] == 0.0);
    CHECK(grad_Ct(0.0, 0.0, TimeParam(1.0))[1] == 0.0);
    CHECK(grad_Ct(0.5, 0.0, TimeParam(3.0))[0] == -1.0);
    CHECK(grad_Ct(0.5, 0.0, TimeParam(3.0))[1] == 1.0);

    std::mt19937 rng(17);
    std::uniform_real_distribution<double> ux(-1.0, 1.0), uy(-3.0, 1.0), ut(-0.9, 10.0);
    const double h = 1e-5;
    for (int i = 0; i < 20; ++i) {
        const double x = ux(rng), y = uy(rng);
        const TimeParam tp(ut(rng));
        const auto g = grad_Ct(x, y, tp);
        const double gx = (Ct(x + h, y, tp) - Ct(x - h, y, tp)) / (2 * h);
        const double gy = (Ct(x, y + h, tp) - Ct(x, y - h, tp)) / (2 * h);
        CHECK(std::abs(g[0] - gx) < 1e-6 * std::max(1.0, std::abs(g[0])));
        CHECK(std::abs(g[1] - gy) < 1e-6 * std::max(1.0, std::abs(g[1])));
    }
}

TEST_CASE("branch of C_t") {
    std::mt19937 rng(23);
    std::uniform_real_distribution<double> ut(-0.95, 20.0), uy(0.0, 4.0);
    for (int i = 0; i < 200; ++i) {
        const TimeParam tp(ut(rng));
        const double y = ct_branch_y_end(tp) - std::pow(10.0, uy(rng)) + 1.0;
        const double x = ct_branch_x(y, tp);
        CHECK(x >= 0.0);
        CHECK(std::abs(Ct(x, y, tp)) < 1e-10 * std::max(1.0, tp.s() * y * y));
    }
    const TimeParam t10(10.0);
    CHECK(ct_branch_x(ct_branch_y_end(t10), t10) == doctest::Approx(0.0));
    CHECK_THROWS_AS(ct_branch_x(-0.1, t10), std::domain_error);
    // regression value
    CHECK(std::abs(ct_branch_x(-2.0, t10) - 0.22450558244357732) < 1e-14);
}

TEST_CASE("Psi on the branch") {
    CHECK(std::abs(psi(-2.0, TimeParam(10.0)) - (-0.90912425278138798)) < 1e-13);
    CHECK(std::abs(psi(-3.0, TimeParam(-0.7)) - 0.0460967512154494) < 1e-13);

    // on C_t = 0 the full product <grad C_t, V> equals Psi
    for (double t : {-0.7, -0.2, 0.0, 10.0}) {
        const TimeParam tp(t);
        for (double k = 1.0; k < 50.0; k *= 1.7) {
            const double y = ct_branch_y_end(tp) * k;
            const double x = ct_branch_x(y, tp);
            const auto g = grad_Ct(x, y, tp);
            const auto v = vector_field({x, y});
            const double full = g[0] * v.dH + g[1] * v.dF;
            CHECK(std::abs(full - psi(y, tp)) < 1e-8 * std::max(1.0, std::abs(full)));
            CHECK(psi_xy(x, y, tp) == doctest::Approx(psi(y, tp)));
        }
    }
    const TimeParam tp(3.0);
    CHECK(psi(-1e4, tp) == doctest::Approx(psi_tail_leading(-1e4, tp)).epsilon(1e-2));
}

TEST_CASE("Psi scans") {
    const PsiScan a = scan_psi(TimeParam(-0.7));
    CHECK(a.positive);
    CHECK(a.verdict() == "positive");
    CHECK(a.tail_positive);
    CHECK(a.y.size() >= 1000);
    const PsiScan b = scan_psi(TimeParam(-0.2));
    CHECK_FALSE(b.positive);
    CHECK(b.verdict() == "sign-changing");
    CHECK(b.min_value < 0.0);
}

TEST_CASE("sign identity") {
    std::mt19937 rng(29);
    std::uniform_real_distribution<double> uH(-1.0, 1.0), uF(-5.0, 5.0), ut(-0.99, 50.0);
    for (int i = 0; i < 500; ++i) {
        const PhasePoint p{uH(rng), uF(rng)};
        const TimeParam tp(ut(rng));
        CHECK(sgn(dRdt(p, tp)) == sgn(Ct(p.H, p.F, tp)));
    }
}

TEST_CASE("crossings along S") {
    for (double t : {0.0, 1.0, 10.0}) {
        const CrossingReport c = find_crossings(S(), TimeParam(t));
        CAPTURE(t);
        CHECK(c.count() >= 1);
        for (const auto& x : c.crossings) {
            CHECK(std::abs(Ct(x.H, x.F, TimeParam(t))) < 1e-6);
            CHECK(S().contains(x.r));
        }
    }
    const CrossingReport far = find_crossings(S(), TimeParam(-0.7));
    CHECK(far.count() == 0);
    CHECK(find_crossings(S(), TimeParam(-0.01)).count() == 2);
}

TEST_CASE("barrier soundness") {
    for (double t : {-0.9, -0.7, -0.5, -0.3}) {
        const TimeParam tp(t);
        if (scan_psi(tp).positive) {
            CAPTURE(t);
            CHECK(find_crossings(S(), tp).count() == 0);
        }
    }
}

TEST_CASE("threshold brackets") {
    const DeltaScan d = scan_delta_threshold(S(), {-0.7, -0.3, -0.1, -0.03, -0.01, 0.0});
    REQUIRE(d.crossing_threshold.found);
    CHECK(d.crossing_threshold.lo > -0.7);
    CHECK(d.crossing_threshold.hi < 0.0);
    CHECK(d.crossing_threshold.hi - d.crossing_threshold.lo <= 1e-4 + 1e-12);
    CHECK(d.crossing_threshold.lo == doctest::Approx(-0.037).epsilon(0.01));
    REQUIRE(d.barrier_threshold.found);
    CHECK(d.barrier_threshold.lo > -0.7);
    CHECK(d.barrier_threshold.hi < 0.0);
    CHECK(d.barrier_threshold.lo == doctest::Approx(-0.3708).epsilon(0.001));
}

TEST_CASE("pointwise histories") {
    std::vector<double> grid;
    for (double t = -0.5; t <= 60.0; t += 0.5) grid.push_back(t);
    for (double F : {-1.0, -10.0}) {
        const auto r0 = S().first_crossing(kF, F);
        REQUIRE(r0);
        const PointwiseHistory h = pointwise_R_history(*r0, grid, S());
        CHECK_FALSE(h.truncated);
        REQUIRE(h.samples.size() == grid.size());
        for (std::size_t i = 0; i < h.samples.size(); ++i) {
            CHECK(h.samples[i].R < 0.0);
            if (i) CHECK(h.samples[i].r < h.samples[i - 1].r);
        }
        const double after = h.last_sign_change.value_or(grid.front());
        for (const auto& s : h.samples)
            if (s.t > after) CHECK(s.dRdt > 0.0);
        CHECK(std::abs(h.samples.back().R) < std::abs(h.samples[h.samples.size() - 2].R));
    }
}
