#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "soliton/closed_forms.hpp"
#include "soliton/geometry.hpp"
#include "soliton/ode.hpp"

using namespace soliton;

// Frozen cross-check values, computed with an independent high-precision
// solver (see tests/oracles.hpp for the in-process ones).
namespace frozen {
// shrinking, a = 1, launch (0, 0.3): meridian length and far-pinch slope
constexpr double kFootballA = 4.560694980626949;
constexpr double kFootballUExit = -0.5093940626323338;
// shrinking, a = 0.8, launch (0, -1) integrated backward
constexpr double kTeardropA = 4.684166791616128;
constexpr double kTeardropUExit = 0.4704447793267356;
}  // namespace frozen

TEST_CASE("rhs") {
    const auto [dh, du] = rhs({-1, 2.0}, {0.5, 0.3});
    CHECK(dh == 0.3);
    CHECK(du == doctest::Approx((2.0 * 0.3 - 0.5) * 0.5).epsilon(1e-15));
    const auto [dh0, du0] = rhs({0, 1.0}, {1.0, -1.0});
    CHECK(dh0 == -1.0);
    CHECK(du0 == -1.0);
}

TEST_CASE("first integral values") {
    CHECK(first_integral({0, 2.0}, {1.0, 0.5}) == doctest::Approx(0.5));
    // shrinking a=1, (0,1): v=0, w=1 -> -2 - ln|1| = -2
    CHECK(first_integral({-1, 1.0}, {0.0, 1.0}) == doctest::Approx(-2.0));
    // expanding origin is on the zero level set
    CHECK(first_integral({1, 1.0}, {0.0, 0.0}) == doctest::Approx(0.0));
    // the isocline orbit is the log singularity
    CHECK_THROWS_AS(first_integral({-1, 1.0}, {0.3, 0.5}), OnSingularLocus);
    CHECK_THROWS_AS(first_integral({1, 2.0}, {0.3, -0.25}), OnSingularLocus);
}

TEST_CASE("isocline level") {
    CHECK(isocline_u({-1, 2.0}) == doctest::Approx(0.25));
    CHECK(isocline_u({1, 0.5}) == doctest::Approx(-1.0));
    CHECK(isocline_u({0, 3.0}) == 0.0);
}

TEST_CASE("closed shrinking orbit: length and exit slope") {
    const SolitonParams params{-1, 1.0};
    auto res = integrate(params, {0.0, 0.3}, 0.0, +1, {});
    REQUIRE(res.termination == Termination::PinchEnd);
    const auto* pinch = res.trajectory.find_event(EventKind::PinchEnd);
    REQUIRE(pinch != nullptr);
    CHECK(pinch->r == doctest::Approx(frozen::kFootballA).epsilon(1e-8));
    CHECK(pinch->state.u == doctest::Approx(frozen::kFootballUExit).epsilon(1e-8));
    CHECK(std::abs(pinch->state.h) < kPinchTol);
    // launch was at a pinch too
    CHECK(res.trajectory.find_event(EventKind::PinchStart) != nullptr);
    // the horizontal isocline u = 1/(2a) is itself an orbit, so no
    // trajectory ever crosses it
    CHECK(res.trajectory.find_event(EventKind::IsoclineCrossing) == nullptr);
    for (const auto& s : res.trajectory.samples) CHECK(s.u < 0.5);
    // level-set drift stays tiny over the whole orbit
    CHECK(res.drift.relative_drift < 1e-8);
}

TEST_CASE("backward integration reaches the far pinch with relabeled r") {
    const SolitonParams params{-1, 0.8};
    auto res = integrate(params, {0.0, -1.0}, 0.0, -1, {});
    REQUIRE(res.termination == Termination::PinchEnd);
    auto& traj = res.trajectory;
    // samples ascend in r and cover [-A, 0]
    for (size_t i = 1; i < traj.samples.size(); ++i)
        CHECK(traj.samples[i].r > traj.samples[i - 1].r);
    CHECK(traj.r_back() == doctest::Approx(0.0));
    CHECK(traj.r_front() == doctest::Approx(-frozen::kTeardropA).epsilon(1e-8));
    CHECK(traj.samples.front().u ==
          doctest::Approx(frozen::kTeardropUExit).epsilon(1e-8));
    // the seed slope is preserved at r = 0
    CHECK(traj.samples.back().u == doctest::Approx(-1.0));
}

TEST_CASE("steady orbit matches the analytic tanh profile") {
    // (0,-1) has C = u - (a/2) h^2 = -1
    const SolitonParams params{0, 1.0};
    IntegratorControls ctl;
    ctl.max_r_span = 10.0;
    auto res = integrate(params, {0.0, -1.0}, 0.0, +1, ctl);
    CHECK(res.termination == Termination::SpanExhausted);
    const auto form = steady_family(1.0, -1.0);
    double worst = 0.0;
    for (const auto& s : res.trajectory.samples) {
        const auto [h, u] = evaluate(form, s.r);
        worst = std::max({worst, std::abs(h - s.h), std::abs(u - s.u)});
    }
    CHECK(worst < 1e-8);
}

TEST_CASE("time reversal returns to the launch state") {
    const SolitonParams params{1, 1.0};
    IntegratorControls ctl;
    ctl.max_r_span = 2.0;
    auto fwd = integrate(params, {0.3, 0.5}, 0.0, +1, ctl);
    REQUIRE(fwd.termination == Termination::SpanExhausted);
    const auto end = fwd.trajectory.samples.back();
    auto back = integrate(params, {end.h, end.u}, end.r, -1, ctl);
    const auto start = back.trajectory.samples.front();
    CHECK(start.r == doctest::Approx(0.0).epsilon(1e-10));
    CHECK(start.h == doctest::Approx(0.3).epsilon(1e-7));
    CHECK(start.u == doctest::Approx(0.5).epsilon(1e-7));
}

TEST_CASE("fixed-step RK4 cross-check") {
    const SolitonParams params{-1, 1.0};
    IntegratorControls ctl;
    ctl.max_r_span = 2.0;
    auto res = integrate(params, {0.0, 0.3}, 0.0, +1, ctl);
    const auto end = res.trajectory.samples.back();
    REQUIRE(end.r == doctest::Approx(2.0));
    auto rhs_fn = [&](double h, double u) {
        return std::pair{u, (params.a * u - 0.5) * h};
    };
    const auto [h4, u4] = oracle::rk4(rhs_fn, 0.0, 0.3, 2.0, 200000);
    CHECK(end.h == doctest::Approx(h4).epsilon(1e-8));
    CHECK(end.u == doctest::Approx(u4).epsilon(1e-8));
}

TEST_CASE("steady: sign of u is invariant") {
    const SolitonParams params{0, 1.3};
    IntegratorControls ctl;
    ctl.max_r_span = 10.0;
    auto res = integrate(params, {0.2, -0.5}, 0.0, +1, ctl);
    for (const auto& s : res.trajectory.samples) CHECK(s.u < 0.0);
    auto res2 = integrate(params, {0.2, 0.5}, 0.0, +1, ctl);
    for (const auto& s : res2.trajectory.samples) CHECK(s.u > 0.0);
}

TEST_CASE("steady exploding orbit hits the guard, not an exception") {
    const SolitonParams params{0, 1.0};
    IntegrateResult res;
    CHECK_NOTHROW(res = integrate(params, {0.0, 1.0}, 0.0, +1, {}));
    CHECK(res.termination == Termination::BlowUp);
    CHECK(res.trajectory.find_event(EventKind::BlowUpGuard) != nullptr);
}

TEST_CASE("expanding blow-up enters the parabolic regime") {
    const SolitonParams params{1, 1.0};
    auto res = integrate(params, {0.0, 0.2}, 0.0, +1, {});
    REQUIRE(res.termination == Termination::BlowUp);
    const auto last = res.trajectory.samples.back();
    const auto [v, w] = normalize(params, {last.h, last.u});
    REQUIRE(w > 50.0);
    CHECK(std::abs(v * v / (2.0 * w) - 1.0) < 0.02);
}

TEST_CASE("invalid inputs") {
    CHECK_THROWS_AS(integrate({-1, 1.0}, {0.0, 0.3}, 0.0, 2, {}), InvalidInit);
    CHECK_THROWS_AS(integrate({-1, 1.0}, {0.0, NAN}, 0.0, 1, {}), InvalidInit);
    IntegratorControls bad;
    bad.rel_tol = -1.0;
    CHECK_THROWS_AS(integrate({-1, 1.0}, {0.0, 0.3}, 0.0, 1, bad), DomainError);
}

TEST_CASE("portrait sampling") {
    const SolitonParams params{-1, 1.0};
    IntegratorControls ctl;
    ctl.window_h_max = 5.0;
    ctl.window_u_min = -5.0;
    ctl.window_u_max = 5.0;
    ctl.max_r_span = 30.0;

    CHECK(sample_portrait(params, {}, ctl).empty());

    std::vector<PhasePoint> grid;
    for (int i = 0; i < 20; ++i) grid.push_back({0.1 + 0.04 * i, -0.4 + 0.04 * i});
    grid.push_back({1.0, 0.5});  // exactly on the invariant isocline
    auto results = sample_portrait(params, grid, ctl);
    REQUIRE(results.size() == grid.size());
    for (size_t i = 0; i < results.size(); ++i) {
        INFO("seed ", i);
        CHECK(results[i].error.empty());
        CHECK(results[i].drift.relative_drift < 1e-8);
        REQUIRE(!results[i].trajectory.empty());
        // each merged trajectory is strictly ascending in r
        const auto& t = results[i].trajectory;
        for (size_t j = 1; j < t.samples.size(); ++j)
            CHECK(t.samples[j].r > t.samples[j - 1].r);
    }
    const auto& iso = results.back();
    CHECK(iso.analytic_isocline);
    for (const auto& s : iso.trajectory.samples) {
        CHECK(s.u == 0.5);
        CHECK(s.h == doctest::Approx(1.0 + 0.5 * s.r).epsilon(1e-14));
    }
}
