#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "cusp/phase_core.hpp"

using namespace cusp;

namespace {

const double kSqrt5 = std::sqrt(5.0);

IntegratorControls tight(double r_lo, double r_hi, Direction dir) {
    IntegratorControls c;
    c.rel_tol = 1e-12;
    c.abs_tol = 1e-14;
    c.r_min = r_lo;
    c.r_max = r_hi;
    c.direction = dir;
    return c;
}

}  // namespace

TEST_CASE("vector field values") {
    auto v = vector_field({0.5, 0.0});
    CHECK(v.dH == 0.0);
    CHECK(v.dF == 0.0);
    v = vector_field({0.0, 0.0});
    CHECK(v.dH == 0.5);
    CHECK(v.dF == 0.5);
    v = vector_field({1.0, 3.0});
    CHECK(v.dH == 1.5);
    CHECK(v.dF == 4.5);
    v = vector_field({0.0, 0.0}, SolitonSign::shrinking);
    CHECK(v.dH == -0.5);
}

TEST_CASE("critical points per sign") {
    auto cp = critical_points(SolitonSign::expanding);
    REQUIRE(cp.points.size() == 2);
    CHECK_FALSE(cp.degenerate_line);
    for (const auto& p : cp.points) {
        CHECK(std::abs(p.H) == 0.5);
        CHECK(p.F == 0.0);
        const auto v = vector_field(p);
        CHECK(v.dH == 0.0);
        CHECK(v.dF == 0.0);
    }
    cp = critical_points(SolitonSign::shrinking);
    CHECK(cp.points.empty());
    CHECK_FALSE(cp.degenerate_line);
    cp = critical_points(SolitonSign::steady);
    CHECK(cp.points.empty());
    CHECK(cp.degenerate_line);
    CHECK_THROWS(soliton_sign_from_int(2));
    CHECK(soliton_sign_from_int(-1) == SolitonSign::shrinking);
}

TEST_CASE("linearization") {
    auto j = linearize({0.5, 0.0});
    CHECK(j.a11 == -2.0);
    CHECK(j.a12 == 0.5);
    CHECK(j.a21 == -2.0);
    CHECK(j.a22 == 1.0);
    j = linearize({0.0, 0.0});
    CHECK(j.a11 == 0.0);
    CHECK(j.a22 == 0.0);

    std::mt19937 rng(7);
    std::uniform_real_distribution<double> u(-3.0, 3.0);
    for (int i = 0; i < 200; ++i) {
        const PhasePoint p{u(rng), u(rng)};
        CHECK(std::abs(linearize(p).det() + 4.0 * p.H * p.H) <= 1e-12 * (1.0 + 4.0 * p.H * p.H));
    }
}

TEST_CASE("saddle eigenpairs") {
    const auto e = eigen_saddle(linearize(kSaddle));
    CHECK(std::abs(e[0].value - (-1.0 + kSqrt5) / 2.0) < 1e-12);
    CHECK(std::abs(e[1].value - (-1.0 - kSqrt5) / 2.0) < 1e-12);
    CHECK(e[0].vector[0] == 1.0);
    CHECK(std::abs(e[0].vector[1] - (3.0 + kSqrt5)) < 1e-12);
    CHECK(std::abs(e[1].vector[1] - (3.0 - kSqrt5)) < 1e-12);

    CHECK_THROWS_AS(eigen_saddle(Jacobian2{1, 0, 0, 1}), std::domain_error);
    CHECK_THROWS_AS(eigen_saddle(Jacobian2{0, -1, 1, 0}), std::domain_error);

    const auto e2 = eigen_saddle(Jacobian2{2, 0, 1, 1});
    CHECK(e2[0].value == doctest::Approx(2.0));
    CHECK(e2[1].vector[0] == 0.0);
    CHECK(e2[1].vector[1] == 1.0);
}

TEST_CASE("augmented state carries W") {
    const PhaseState y = augment({0.3, -0.7});
    CHECK(y[kW] == doctest::Approx(0.3 * -0.7 - 0.09 + 0.5));
    PhaseState dy{};
    augmented_rhs(y, dy, SolitonSign::expanding);
    CHECK(dy[kW] == doctest::Approx(y[kW] * (y[kF] - y[kH]) + 0.027));
    CHECK(dy[kH] == doctest::Approx(vector_field({0.3, -0.7}).dH));
}

TEST_CASE("fixed point stays put") {
    const Trajectory tr = integrate(kSaddle, 0.0, tight(-1e6, 50.0, Direction::forward));
    CHECK(tr.r_back() == doctest::Approx(50.0));
    for (std::size_t i = 0; i < tr.size(); ++i) {
        CHECK(tr.point(i).H == 0.5);
        CHECK(tr.point(i).F == 0.0);
    }
}

TEST_CASE("orbit leaving the saddle along the unstable direction") {
    const double d = 1e-8;
    const PhasePoint start{0.5 - d, -d * (3.0 + kSqrt5)};
    IntegratorControls c = tight(-1e6, 1e6, Direction::forward);
    c.stops.push_back(stop_F_below(-1.5));
    const Trajectory tr = integrate(start, 0.0, c);
    CHECK(tr.end_high().reason == Termination::stop_predicate);
    for (std::size_t i = 1; i < tr.size(); ++i) {
        CHECK(tr.point(i).H < tr.point(i - 1).H);
        CHECK(tr.point(i).F < tr.point(i - 1).F);
    }
    const auto r1 = tr.first_crossing(kF, -1.0);
    REQUIRE(r1);
    // regression value, rel_tol 1e-12
    CHECK(std::abs(tr.eval(kH, *r1) - 0.332837502354472) < 1e-11);
}

TEST_CASE("halving tolerances") {
    const PhasePoint start{0.3, -0.5};
    auto run = [&](double rt) {
        IntegratorControls c;
        c.rel_tol = rt;
        c.abs_tol = rt * 1e-2;
        c.r_max = 5.0;
        return integrate(start, 0.0, c);
    };
    const Trajectory a = run(1e-10);
    const Trajectory b = run(5e-11);
    REQUIRE(a.r_back() == doctest::Approx(5.0));
    REQUIRE(b.r_back() == doctest::Approx(5.0));
    const PhaseState ya = a.state(a.size() - 1), yb = b.state(b.size() - 1);
    for (std::size_t k = 0; k < 2; ++k) {
        CHECK(std::abs(ya[k] - yb[k]) < 10.0 * 1e-10 * std::max(1.0, std::abs(ya[k])));
    }
}

TEST_CASE("central symmetry of orbits") {
    std::mt19937 rng(11);
    std::uniform_real_distribution<double> uH(-0.45, 0.45), uF(-1.0, 1.0);
    for (int i = 0; i < 5; ++i) {
        const PhasePoint p{uH(rng), uF(rng)};
        const Trajectory fwd = integrate(p, 0.0, tight(-1e6, 1.0, Direction::forward));
        const Trajectory bwd = integrate({-p.H, -p.F}, 0.0, tight(-1.0, 1e6, Direction::backward));
        REQUIRE(fwd.r_back() == doctest::Approx(1.0));
        REQUIRE(bwd.r_front() == doctest::Approx(-1.0));
        for (double r = 0.0; r <= 1.0; r += 0.125) {
            const PhasePoint a = fwd.point_at(r), b = bwd.point_at(-r);
            CHECK(std::abs(a.H + b.H) < 1e-8);
            CHECK(std::abs(a.F + b.F) < 1e-8);
        }
    }
}

TEST_CASE("controls validation") {
    IntegratorControls c;
    c.rel_tol = -1.0;
    CHECK_THROWS_AS(c.validate(), std::invalid_argument);
    c = IntegratorControls{};
    c.r_min = 1.0;
    c.r_max = 0.0;
    CHECK_THROWS_AS(c.validate(), std::invalid_argument);
}
