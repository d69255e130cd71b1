#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "cusp/separatrix.hpp"

using namespace cusp;

namespace {

const Trajectory& S() {
    static const Trajectory s = shoot_separatrix();
    return s;
}

}  // namespace

TEST_CASE("isocline branches") {
    CHECK(isocline_F(IsoclineKind::vertical, 0.5) == 0.0);
    CHECK(isocline_F(IsoclineKind::horizontal, 0.5) == 0.0);
    CHECK(isocline_F(IsoclineKind::oblique, 1.0) == 3.0);
    CHECK(isocline_F(IsoclineKind::vertical, 1.0) == 1.5);
    CHECK_THROWS_AS(isocline_F(IsoclineKind::oblique, 0.0), std::domain_error);

    // each branch really is the zero set it names
    for (double H : {0.1, 0.27, 0.45}) {
        CHECK(vector_field({H, isocline_F(IsoclineKind::vertical, H)}).dH == doctest::Approx(0.0));
        CHECK(vector_field({H, isocline_F(IsoclineKind::horizontal, H)}).dF == doctest::Approx(0.0));
    }

    const auto s = isocline_slopes_at_saddle();
    CHECK(s.vertical == 4.0);
    CHECK(s.horizontal == 2.0);
    CHECK(s.oblique == 8.0);
}

TEST_CASE("oblique margin") {
    CHECK(oblique_barrier_margin(0.5) == 0.0);
    CHECK(oblique_barrier_margin(0.25) == 6.375);
    CHECK_THROWS_AS(oblique_barrier_margin(0.0), std::domain_error);
    for (int i = 1; i < 1000; ++i) CHECK(oblique_barrier_margin(0.5 * i / 1000.0) > 0.0);
}

TEST_CASE("shooting config validation") {
    ShootConfig c;
    c.offset = 0.0;
    CHECK_THROWS_AS(c.validate(), std::invalid_argument);
    c = ShootConfig{};
    c.direction = 0;
    CHECK_THROWS_AS(c.validate(), std::invalid_argument);
    c = ShootConfig{};
    c.r_min = 1.0;
    CHECK_THROWS_AS(c.validate(), std::invalid_argument);
}

TEST_CASE("wrong direction leaves the band") {
    ShootConfig c;
    c.direction = 1;
    CHECK_THROWS_AS(shoot_separatrix(c), SeparatrixError);
}

TEST_CASE("calibration and endpoints") {
    const Trajectory& s = S();
    CHECK(s.contains(0.0));
    CHECK(s.eval(kF, 0.0) == doctest::Approx(-1.0).epsilon(1e-12));
    REQUIRE(s.low_limit());
    CHECK(s.low_limit()->H == 0.5);
    CHECK(s.low_limit()->F == 0.0);
    CHECK(s.r_back() == doctest::Approx(2000.0));
    // regression values of the default orbit
    CHECK(std::abs(s.eval(kH, 0.0) - 0.33283750235178927) < 1e-9);
    CHECK(std::abs(s.r_front() - (-35.010348672057148)) < 1e-6);
    CHECK(std::abs(s.eval(kH, 10.0) - 0.084095044105519018) < 1e-9);
}

TEST_CASE("local slope near the saddle") {
    const Trajectory& s = S();
    CHECK(std::hypot(s.point(0).H - 0.5, s.point(0).F) < 1e-8);
    // the node at the shooting offset
    std::size_t i = 0;
    while (std::hypot(s.point(i).H - 0.5, s.point(i).F) < 1e-8 * (1.0 - 1e-6)) ++i;
    const PhasePoint p = s.point(i);
    CHECK(std::hypot(p.H - 0.5, p.F) == doctest::Approx(1e-8).epsilon(1e-3));
    CHECK(std::abs(p.F / (p.H - 0.5) - (3.0 + std::sqrt(5.0))) < 1e-3);
    const auto u = unstable_direction();
    CHECK(std::hypot(u[0], u[1]) == doctest::Approx(1.0));
    CHECK(u[1] / u[0] == doctest::Approx(3.0 + std::sqrt(5.0)));
}

TEST_CASE("orbit checks") {
    const OrbitChecks c = check_orbit(S());
    CHECK(c.samples == S().size());
    CHECK(c.band_violations == 0);
    CHECK(c.F_positive == 0);
    CHECK(c.dF_out_of_range == 0);
    CHECK(c.dH_nonnegative == 0);
    CHECK(c.H_not_decreasing == 0);
    CHECK(c.vertical_side_constant);
    CHECK(c.ok());
}

TEST_CASE("terminal state hugs the vertical isocline") {
    const Trajectory& s = S();
    const PhasePoint p = s.point(s.size() - 1);
    REQUIRE(p.H < 1e-3);
    CHECK(std::abs(vector_field(p).dH) < 1e-4);
    const auto ap = isocline_approach(s, {s.r_back()});
    REQUIRE(ap.size() == 1);
    CHECK(std::abs(ap[0].to_vertical) < std::abs(ap[0].to_horizontal));
}

TEST_CASE("barriers") {
    const auto reps = certify_barriers(S(), 10000);
    REQUIRE(reps.size() == 5);
    for (const auto& r : reps) {
        CAPTURE(r.curve);
        CHECK(r.r.size() >= 10000);
        CHECK(r.margin.size() == r.r.size());
        CHECK(r.verdict() == "barrier");
        CHECK(r.min_margin > 0.0);
    }
    CHECK(dense_sample_grid(S(), 10000).size() >= 10000);
}

TEST_CASE("shooting stability") {
    const auto st = shooting_stability(ShootConfig{}, S(), -30.0, 100.0);
    CHECK(st.offset == 1e-8);
    CHECK(st.max_dH < 1e-6);
}
