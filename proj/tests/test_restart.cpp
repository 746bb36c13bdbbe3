#include "doctest.h"

#include "vi/restart.hpp"

#include <cmath>

using namespace vi;

namespace {

InexactOracle shifted_identity(const Point& c)
{
    return exact_oracle([c](const Point& x) -> DualVector { return x - c; }, HolderSpec{1.0, 1.0});
}

}  // namespace

TEST_CASE("radius recursion")
{
    // One restart, no uncontrolled errors: R1^2 = R0^2 / 2 + eps / 4.
    CHECK(restart_radius_sq(4.0, 1, 0.01, 0.0, 0.0, 1.0) == doctest::Approx(2.0 + 0.0025));
    CHECK(restart_radius_sq(4.0, 0, 0.01, 0.0, 0.0, 1.0) == 4.0);
    // Delta = eps/4 + (du + 2 dpu)/mu, so the floor approaches 2 Delta.
    const double delta = 0.01 / 4.0 + (0.02 + 2.0 * 0.005) / 0.5;
    for (int p = 1; p < 40; ++p) {
        const double h = std::ldexp(1.0, -p);
        const double expected = 4.0 * h + 2.0 * (1.0 - h) * delta;
        CHECK(std::abs(restart_radius_sq(4.0, p, 0.01, 0.02, 0.005, 0.5) - expected) <= 1e-15 * expected);
    }
}

TEST_CASE("radius decreases while the geometric term dominates")
{
    double prev = restart_radius_sq(1.0, 0, 1e-6, 0.0, 0.0, 1.0);
    for (int p = 1; p < 15; ++p) {
        const double cur = restart_radius_sq(1.0, p, 1e-6, 0.0, 0.0, 1.0);
        CHECK(cur < prev);
        prev = cur;
    }
}

TEST_CASE("stage count")
{
    CHECK(restart_stage_count(1.0, 2.0) == 1);
    CHECK(restart_stage_count(1.0, 5.0) == 1);
    CHECK(restart_stage_count(4.0, 1e-4) == 17);  // log2(80000) = 16.29
    CHECK(restart_stage_count(1.0, 0.5) == 3);    // log2(4) = 2 exactly, so p = 3
}

TEST_CASE("inner iteration bound")
{
    // nu = 1, L = mu, Omega = 1, eps = R0^2: 1 * 2 * 1 * log2(2) = 2.
    CHECK(inner_iteration_bound({1.0, 1.0}, 1.0, 1.0, 1.0, 1.0) == 2);
    CHECK(inner_iteration_bound({1.0, 3.0}, 3.0, 0.5, 1.0, 0.5) == 2);
    // nu = 1: eps enters only through the log factor.
    const long a = inner_iteration_bound({1.0, 2.0}, 1.0, 1e-2, 1.0, 1.0);
    CHECK(a == static_cast<long>(std::ceil(2.0 * 2.0 * std::log2(200.0))));
    // Omega doubled at most doubles the bound, up to the ceiling.
    for (double eps : {1e-1, 1e-3, 1e-5}) {
        const long b1 = inner_iteration_bound({0.5, 2.0}, 0.5, eps, 1.0, 2.0);
        const long b2 = inner_iteration_bound({0.5, 2.0}, 0.5, eps, 2.0, 2.0);
        CHECK(b2 <= 2 * b1 + 1);
    }
    // Already accurate: log factor non-positive.
    CHECK(inner_iteration_bound({1.0, 1.0}, 1.0, 10.0, 1.0, 1.0) == 0);
    CHECK_THROWS_AS(inner_iteration_bound({1.0, 1.0}, 0.0, 1.0, 1.0, 1.0), ContractError);
}

TEST_CASE("restart reaches the solution of a strongly monotone shift")
{
    Point c(3);
    c << 0.3, -0.2, 0.5;
    const FeasibleSet Q = FeasibleSet::unit_ball(3);
    const double eps = 1e-4, R0_sq = 4.0;
    const auto res = restart_solve(shifted_identity(c), Q, 1.0, ToleranceBudget{eps}, Point::Zero(3), R0_sq, 1.0);
    CHECK(res.state.p == restart_stage_count(R0_sq, eps));
    CHECK(res.traces.size() == static_cast<std::size_t>(res.state.p));
    CHECK(res.stage_points.size() == static_cast<std::size_t>(res.state.p) + 1);
    for (std::size_t p = 1; p < res.stage_points.size(); ++p) {
        CHECK((res.stage_points[p] - c).squaredNorm() <= R0_sq * std::ldexp(1.0, -static_cast<int>(p)) + eps / 2.0 + 1e-9);
        CHECK((res.stage_points[p] - c).squaredNorm() <= res.radius_sq[p] + 1e-9);
    }
    CHECK((res.x - c).squaredNorm() <= eps);
    CHECK(res.state.inner_iterations <= inner_iteration_bound({1.0, 1.0}, 1.0, eps, 1.0, R0_sq));
}

TEST_CASE("restart with a solution on the boundary")
{
    // x* = c / ||c|| for g(x) = x - c with c outside the ball.
    Point c(2);
    c << 2.0, 1.0;
    const Point xs = c / c.norm();
    const FeasibleSet Q = FeasibleSet::unit_ball(2);
    const double eps = 1e-5;
    const auto res = restart_solve(shifted_identity(c), Q, 1.0, ToleranceBudget{eps}, Point::Zero(2), 4.0, 1.0);
    CHECK((res.x - xs).squaredNorm() <= eps);
}

TEST_CASE("restart with inexact values honours the delta_u allowance")
{
    Point c(4);
    c << 0.1, 0.2, -0.1, 0.0;
    const FeasibleSet Q = FeasibleSet::unit_ball(4);
    const double noise = 1e-4;
    const auto o = noisy_oracle([c](const Point& x) -> DualVector { return x - c; }, noise, Q.diameter_bound(), 4,
                                HolderSpec{1.0, 1.0});
    ToleranceBudget b{1e-3};
    b.delta_u = o.delta_u();
    const auto res = restart_solve(o, Q, 1.0, b, Point::Zero(4), 4.0, 1.0);
    CHECK((res.x - c).squaredNorm() <= b.eps + 2.0 * b.delta_u);
}

TEST_CASE("one stage when eps already covers the start")
{
    Point c = Point::Constant(2, 0.1);
    const auto res = restart_solve(shifted_identity(c), FeasibleSet::unit_ball(2), 1.0, ToleranceBudget{10.0},
                                   Point::Zero(2), 1.0, 1.0);
    CHECK(res.state.p == 1);
}

TEST_CASE("restart argument checks")
{
    const Point c = Point::Zero(2);
    const FeasibleSet Q = FeasibleSet::unit_ball(2);
    CHECK_THROWS_AS(restart_solve(shifted_identity(c), Q, 0.0, ToleranceBudget{1e-3}, Point::Zero(2), 1.0, 1.0),
                    ContractError);
    CHECK_THROWS_AS(
        restart_solve(shifted_identity(c), Q, 1.0, ToleranceBudget{1e-3}, Point::Constant(2, 5.0), 1.0, 1.0),
        ContractError);
}
