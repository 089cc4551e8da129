#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "soliton/shrink.hpp"

using namespace soliton;

// Frozen root values of |y| = k e^{y-1}, from an independent 30-digit
// bisection.
namespace frozen {
struct RootRow {
    double k, y1, y2, y_neg, psi;
};
constexpr RootRow kRows[] = {
    {0.5, 0.23196095298653444, 2.6783469900166605, -0.157184951483814,
     0.4576163639473869},
    {0.1, 0.03822124174679943, 4.889720169867429, -0.03550471384879176,
     0.24726168368198587},
    {0.9, 0.6083412847334319, 1.531811608389612, -0.25624821168526285,
     0.73646138799519},
    {1e-6, 3.6787957650680023e-07, 17.68842079085992, -3.6787930583623376e-07,
     0.05992176519590837},
};
constexpr double kFootballK = 0.7288563972787837;
constexpr double kFootballSlope = 0.999986466886354;  // a for (108, 183.38) deg
}  // namespace frozen

TEST_CASE("eqham roots against frozen values") {
    for (const auto& row : frozen::kRows) {
        INFO("k = ", row.k);
        const auto r = solve_eqham(row.k);
        CHECK(r.y1 == doctest::Approx(row.y1).epsilon(1e-12));
        CHECK(r.y2 == doctest::Approx(row.y2).epsilon(1e-12));
        CHECK(r.y_neg == doctest::Approx(row.y_neg).epsilon(1e-12));
        CHECK(psi(row.k) == doctest::Approx(row.psi).epsilon(1e-11));
        // residuals of the defining equation
        for (double y : {r.y1, r.y2, r.y_neg})
            CHECK(std::abs(std::abs(y) - row.k * std::exp(y - 1.0)) < 1e-13);
    }
}

TEST_CASE("eqham edge cases") {
    const auto tangent = solve_eqham(1.0);
    CHECK(tangent.y1 == 1.0);
    CHECK(tangent.y2 == 1.0);
    CHECK(tangent.y_neg < 0.0);
    CHECK_THROWS_AS(solve_eqham(1.0 + 1e-9), NoTwoPositiveRoots);
    CHECK_THROWS_AS(solve_eqham(0.0), DomainError);
    CHECK_THROWS_AS(solve_eqham(-0.5), DomainError);
    // small-k asymptote: y1 -> k/e
    const auto tiny = solve_eqham(1e-6);
    CHECK(tiny.y1 == doctest::Approx(1e-6 / std::exp(1.0)).epsilon(1e-5));
}

TEST_CASE("psi is strictly increasing on (0,1)") {
    double prev = 0.0;
    for (int i = 1; i < 1000; ++i) {
        const double k = i / 1000.0;
        const double v = psi(k);
        CHECK(v > prev);
        CHECK(v < 1.0);
        prev = v;
    }
    CHECK_THROWS_AS(psi(0.0), DomainError);
    CHECK_THROWS_AS(psi(1.0), DomainError);
}

TEST_CASE("psi_inverse round trip") {
    for (double k : {0.05, 0.3, 0.5, 0.728856, 0.95}) {
        CHECK(psi_inverse(psi(k)) == doctest::Approx(k).epsilon(1e-10));
    }
    for (double ratio : {0.1, 0.4576163639473869, 0.9}) {
        CHECK(psi(psi_inverse(ratio)) == doctest::Approx(ratio).epsilon(1e-10));
    }
    CHECK_THROWS_AS(psi_inverse(0.0), DomainError);
    CHECK_THROWS_AS(psi_inverse(1.0), DomainError);
}

TEST_CASE("football inverse problem hits the frozen parameters") {
    const auto sol = solve_football(cone_angle_from_degrees(108.0),
                                    cone_angle_from_degrees(183.38));
    CHECK(sol.k == doctest::Approx(frozen::kFootballK).epsilon(1e-9));
    CHECK(sol.a == doctest::Approx(frozen::kFootballSlope).epsilon(1e-9));
    // the integrated far pinch realizes alpha2
    CHECK(2.0 * kPi * std::abs(sol.u_exit) * 180.0 / kPi ==
          doctest::Approx(183.38).epsilon(5e-4));
    CHECK(sol.A > 0.0);
    CHECK(!sol.trajectory.empty());
}

TEST_CASE("football self-consistency for (90, 180) degrees") {
    const auto sol =
        solve_football(cone_angle_from_degrees(90.0), cone_angle_from_degrees(180.0));
    // near pinch slope is alpha1/(2 pi) by construction; far pinch must
    // reproduce alpha2 within 0.05 %
    CHECK(std::abs(2.0 * kPi * std::abs(sol.u_exit) - kPi) < 5e-4 * kPi);
    // both pinch slopes lie on the same eqham level k
    const double y_near = 1.0 - 2.0 * sol.a * (90.0 / 360.0);
    const double y_far = 1.0 - 2.0 * sol.a * sol.u_exit;
    const double k_near = std::abs(y_near) * std::exp(1.0 - y_near);
    const double k_far = std::abs(y_far) * std::exp(1.0 - y_far);
    CHECK(k_near == doctest::Approx(k_far).epsilon(1e-6));
}

TEST_CASE("football input validation") {
    CHECK_THROWS_AS(solve_football({1.0}, {1.0}), EqualAngles);
    CHECK_THROWS_AS(solve_football({2.0}, {1.0}), DomainError);
    CHECK_THROWS_AS(solve_football({-1.0}, {1.0}), DomainError);
}

TEST_CASE("shrinking classification") {
    {
        auto cls = classify_shrinking(1.0, 0.3);
        CHECK(cls.family == SolitonFamily::Football);
        REQUIRE(cls.apex);
        REQUIRE(cls.asymptotic);
        CHECK(cls.apex->degrees() == doctest::Approx(108.0).epsilon(1e-9));
        CHECK(cls.asymptotic->degrees() == doctest::Approx(183.38186).epsilon(1e-5));
        CHECK(!cls.rejected());
    }
    {
        auto cls = classify_shrinking(0.8, -1.0);
        CHECK(cls.family == SolitonFamily::Teardrop);
        REQUIRE(cls.apex);
        CHECK(cls.apex->degrees() == doctest::Approx(169.36012).epsilon(1e-5));
    }
    {
        auto cls = classify_shrinking(0.5, 1.0, true);
        CHECK(cls.family == SolitonFamily::ShrinkGaussianPlane);
    }
    {
        auto cls = classify_shrinking(1.0, 0.5);
        CHECK(cls.family == SolitonFamily::ShrinkGaussianCone);
        REQUIRE(cls.apex);
        CHECK(cls.apex->degrees() == doctest::Approx(180.0));
    }
    {
        // above the isocline: open and rejected
        auto cls = classify_shrinking(1.0, 0.8);
        CHECK(cls.family == SolitonFamily::OpenUnboundedRejected);
        CHECK(cls.rejected());
        CHECK(!cls.rejected_reason.empty());
    }
    CHECK_THROWS_AS(classify_shrinking(1.0, 0.0), InvalidPinchSlope);
    CHECK_THROWS_AS(classify_shrinking(-1.0, 0.3), DomainError);
}

TEST_CASE("closed orbit stays on its level set") {
    const auto sol = solve_football(cone_angle_from_degrees(108.0),
                                    cone_angle_from_degrees(183.38));
    const SolitonParams params{-1, sol.a};
    double h0 = 0.0;
    bool have = false;
    double worst = 0.0;
    for (const auto& s : sol.trajectory.samples) {
        // skip the ill-conditioned band around the isocline
        if (std::abs(2.0 * params.a * s.u - 1.0) < 1e-6) continue;
        const double H = first_integral(params, {s.h, s.u});
        if (!have) {
            h0 = H;
            have = true;
        } else {
            worst = std::max(worst, std::abs(H - h0));
        }
    }
    CHECK(worst / std::max(std::abs(h0), 1.0) < 1e-8);
}

TEST_CASE("meridian weight integral is positive on a closed orbit") {
    // integral of h u^2 dr over the orbit; positive since h > 0 inside
    const auto sol = solve_football(cone_angle_from_degrees(108.0),
                                    cone_angle_from_degrees(183.38));
    double acc = 0.0;
    const auto& s = sol.trajectory.samples;
    for (size_t i = 1; i < s.size(); ++i) {
        const double dr = s[i].r - s[i - 1].r;
        acc += 0.5 * dr * (s[i].h * s[i].u * s[i].u + s[i - 1].h * s[i - 1].u * s[i - 1].u);
    }
    CHECK(acc > 0.0);
}
