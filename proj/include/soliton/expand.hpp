#pragma once

#include <optional>

#include "soliton/ode.hpp"
#include "soliton/types.hpp"

namespace soliton {

/// Eigendata of the linearized expanding system at the origin (normalized
/// coordinates).  Exact symbolic constants: M = [[0,1],[1/2,0]].
struct SaddleData {
    double lambda_stable;    // -1/sqrt(2)
    double lambda_unstable;  // +1/sqrt(2)
    NormalizedPoint ev_unstable;  // (sqrt2, 1)
    NormalizedPoint ev_stable;    // (-sqrt2, 1)
};

SaddleData saddle_linearization();

/// The separatrix S: the stable-manifold orbit sinking into the origin,
/// traced by launching at offset delta along the stable direction with
/// v > 0 and integrating both ways.
/// The r coordinate is re-anchored so the cone asymptote is exactly
/// v = -r/2 (the system is autonomous; the launch point is a gauge choice).
struct SeparatrixResult {
    Trajectory trajectory;   // de-normalized (h, u), samples ascending in r
    double delta;
    double asym_cone_const;  // residual intercept of v + r/2, ~ 0
    double asym_cusp_const;  // c in v ~ c e^{-r/sqrt2} as r -> +inf
    double cusp_rate;        // fitted decay rate, ~ 1/sqrt2 (saddle eigenvalue)
    double cone_ratio_end;   // v/(-r/2) at r = -200 (or the backward end)
    double w_end;            // w at the same station, ~ -1/2
    double h_drift;          // max conditioning-scaled |H| (level set H = 0)
};

/// Traces S for the expanding parameters (eps=+1, a).  delta is the launch
/// offset from the origin (0 < delta <= 1e-6); r_extent the backward span.
/// Throws DriftExceeded when |H| exceeds 1e-7 along the orbit.
SeparatrixResult compute_separatrix(double a, double delta = 1e-8, double r_extent = 250.0);

/// Classification from the pinch slope b = u(0) at h = 0; separatrix_flag
/// marks the b -> 0 limiting cusped cone, isocline_flag the linear orbit
/// u = -1/(2a).
SolitonClass classify_expanding(double a, double b, bool separatrix_flag = false,
                                bool isocline_flag = false);

/// Asymptotic-regime measurements on an expanding trajectory; fields are
/// set only when the corresponding regime is reached.
struct AsymptoticsReport {
    std::optional<double> parabola_ratio;    // v^2/(2w) once w > 50
    std::optional<double> cone_slope_ratio;  // u/(-1/(2a)) at the far end
    std::optional<double> cusp_rate;         // d(ln v)/d(-r) fit near the origin
};

/// Throws RegimeNotReached when no asymptotic regime is entered.
AsymptoticsReport asymptotics_report(const Trajectory& traj);

}  // namespace soliton
