#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

#include "soliton/types.hpp"

namespace soliton::detail {

// Dormand-Prince 5(4) embedded pair with PI step-size control and FSAL.
// State dimension is a compile-time parameter so the same stepper drives
// the planar system and the augmented embedding system.

template <int N>
using Vec = std::array<double, N>;

template <int N>
struct Step {
    double r0, r1;
    Vec<N> y0, y1;
    Vec<N> f0, f1;  // derivatives at the endpoints, for Hermite interpolation
};

/// Cubic Hermite evaluation on an accepted step, theta in [0,1].
template <int N>
Vec<N> hermite(const Step<N>& s, double theta) {
    const double dt = s.r1 - s.r0;
    const double t = theta, t2 = t * t, t3 = t2 * t;
    const double h00 = 2 * t3 - 3 * t2 + 1;
    const double h10 = t3 - 2 * t2 + t;
    const double h01 = -2 * t3 + 3 * t2;
    const double h11 = t3 - t2;
    Vec<N> out;
    for (int i = 0; i < N; ++i)
        out[i] = h00 * s.y0[i] + h10 * dt * s.f0[i] + h01 * s.y1[i] + h11 * dt * s.f1[i];
    return out;
}

struct StepControl {
    double rel_tol = 1e-10;
    double abs_tol = 1e-12;
    double max_step = std::numeric_limits<double>::infinity();
};

/// Integrates y' = rhs(y) from r0 over at most span (> 0), calling
/// on_step(step) after every accepted step.  on_step returns false to stop.
/// Throws StepSizeUnderflow when the controller stalls.
template <int N, class Rhs, class OnStep>
void dopri5(const Rhs& rhs, double r0, Vec<N> y, double span, const StepControl& ctl,
            const OnStep& on_step) {
    static constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
    static constexpr double a21 = 1.0 / 5;
    static constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
    static constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
    static constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                            a54 = -212.0 / 729;
    static constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                            a64 = 49.0 / 176, a65 = -5103.0 / 18656;
    static constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                            b5 = -2187.0 / 6784, b6 = 11.0 / 84;
    static constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                            e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;

    const double r_end = r0 + span;
    double r = r0;
    Vec<N> k1 = rhs(y);

    // initial step: conservative guess from the state scale
    double scale = ctl.abs_tol;
    for (int i = 0; i < N; ++i) scale = std::max(scale, std::abs(y[i]) * ctl.rel_tol);
    double dt = std::min({span / 100.0, ctl.max_step, 1e-2});
    if (dt <= 0) dt = 1e-6;

    double err_prev = 1.0;
    const double beta = 0.04, alpha = 0.2 - 0.75 * beta;
    int rejects_in_a_row = 0;

    while (r < r_end) {
        dt = std::min({dt, ctl.max_step, r_end - r});
        if (dt < 1e-14 * std::max(1.0, std::abs(r)))
            throw StepSizeUnderflow("step size underflow at r = " + std::to_string(r));

        Vec<N> k2, k3, k4, k5, k6, k7, yt, y5;
        auto stage = [&](const Vec<N>& incr) {
            Vec<N> s;
            for (int i = 0; i < N; ++i) s[i] = y[i] + dt * incr[i];
            return s;
        };
        Vec<N> t;
        for (int i = 0; i < N; ++i) t[i] = a21 * k1[i];
        k2 = rhs(stage(t));
        for (int i = 0; i < N; ++i) t[i] = a31 * k1[i] + a32 * k2[i];
        k3 = rhs(stage(t));
        for (int i = 0; i < N; ++i) t[i] = a41 * k1[i] + a42 * k2[i] + a43 * k3[i];
        k4 = rhs(stage(t));
        for (int i = 0; i < N; ++i) t[i] = a51 * k1[i] + a52 * k2[i] + a53 * k3[i] + a54 * k4[i];
        k5 = rhs(stage(t));
        for (int i = 0; i < N; ++i)
            t[i] = a61 * k1[i] + a62 * k2[i] + a63 * k3[i] + a64 * k4[i] + a65 * k5[i];
        k6 = rhs(stage(t));
        for (int i = 0; i < N; ++i)
            y5[i] = y[i] + dt * (b1 * k1[i] + b3 * k3[i] + b4 * k4[i] + b5 * k5[i] + b6 * k6[i]);
        k7 = rhs(y5);

        double err = 0.0;
        for (int i = 0; i < N; ++i) {
            const double e = dt * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] +
                                   e6 * k6[i] + e7 * k7[i]);
            const double sc = ctl.abs_tol + ctl.rel_tol * std::max(std::abs(y[i]), std::abs(y5[i]));
            err += (e / sc) * (e / sc);
        }
        err = std::sqrt(err / N);

        if (err <= 1.0 || !std::isfinite(err)) {
            if (!std::isfinite(err)) {
                // nonfinite stage values: shrink hard and retry
                dt *= 0.1;
                if (++rejects_in_a_row > 60)
                    throw StepSizeUnderflow("nonfinite state at r = " + std::to_string(r));
                continue;
            }
            Step<N> s{r, r + dt, y, y5, k1, k7};
            r += dt;
            y = y5;
            k1 = k7;  // FSAL
            rejects_in_a_row = 0;
            const double e = std::max(err, 1e-10);
            double fac = 0.9 * std::pow(e, -alpha) * std::pow(err_prev, beta);
            err_prev = e;
            dt *= std::clamp(fac, 0.2, 5.0);
            if (!on_step(s)) return;
        } else {
            dt *= std::max(0.2, 0.9 * std::pow(err, -0.2));
            if (++rejects_in_a_row > 120)
                throw StepSizeUnderflow("persistent step rejection at r = " + std::to_string(r));
        }
    }
}

}  // namespace soliton::detail
