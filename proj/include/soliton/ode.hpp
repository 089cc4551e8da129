#pragma once

#include <limits>
#include <utility>

#include "soliton/types.hpp"

namespace soliton {

struct IntegratorControls {
    double rel_tol = 1e-10;
    double abs_tol = 1e-12;
    double max_step = std::numeric_limits<double>::infinity();
    double max_r_span = 50.0;
    double blowup_guard = 1e6;  // on max(|h|, |u|)

    // Optional phase-plane window: integration stops once (h, u) leaves it.
    // Used by portrait sampling; disabled when non-finite.
    double window_h_max = std::numeric_limits<double>::infinity();
    double window_u_min = -std::numeric_limits<double>::infinity();
    double window_u_max = std::numeric_limits<double>::infinity();

    void validate() const {
        if (!(rel_tol > 0) || !(abs_tol > 0) || !(max_step > 0) || !(max_r_span > 0) ||
            !(blowup_guard > 0))
            throw DomainError("integrator controls must be positive");
    }
};

/// Drift of the case-appropriate first integral over the accepted samples.
/// The reference value is taken at the best-conditioned sample, and each
/// sample's deviation is scaled by max(1, |H_ref|, cond), where cond is the
/// conditioning of evaluating H there (the log term blows up near the
/// isocline, where H cannot be computed to full precision from a correct
/// state).
struct FirstIntegralReport {
    double initial_value = 0.0;   // H at the best-conditioned sample
    double max_drift = 0.0;       // max |H - initial_value|, unscaled
    double relative_drift = 0.0;  // max over samples of scaled deviation
};

enum class Termination {
    PinchEnd,
    BlowUp,
    SpanExhausted,
    WindowExit,
};

struct IntegrateResult {
    Trajectory trajectory;
    FirstIntegralReport drift;
    Termination termination;
};

/// Right-hand side of the planar system: (u, (a u + eps/2) h).
inline std::pair<double, double> rhs(const SolitonParams& p, const PhasePoint& q) {
    return {q.u, (p.a * q.u + 0.5 * p.epsilon) * q.h};
}

/// Case-appropriate first integral.  Steady: H = a h^2/2 - u.  Shrinking
/// (normalized): H = v^2 - 2w - ln|2w - 1|.  Expanding: H = v^2 - 2w +
/// ln|2w + 1|.  Throws OnSingularLocus on the log singularity (the
/// isocline orbit itself).
double first_integral(const SolitonParams& p, const PhasePoint& q);

/// Invariant horizontal-isocline level: u = +1/(2a) shrinking, -1/(2a)
/// expanding.  For steady this is the u = 0 line of fixed points.
inline double isocline_u(const SolitonParams& p) {
    return -p.epsilon / (2.0 * p.a);
}

/// Adaptive RK5(4) integration from init at r0.  direction=+1 advances r;
/// direction=-1 integrates the time-reversed field and returns the
/// trajectory over [r0 - span, r0] with samples increasing in r (so dh/dr
/// = u holds exactly on the output either way).
///
/// Terminates at the first of: PinchEnd (h crosses zero after leaving it),
/// blow-up guard, window exit, or max_r_span.  Events are localized to
/// 1e-10 in r by bisection on the dense output.
IntegrateResult integrate(const SolitonParams& params, const PhasePoint& init, double r0,
                          int direction, const IntegratorControls& controls);

struct SeedResult {
    Trajectory trajectory;       // merged backward + forward pass through the seed
    std::string error;           // nonempty if this seed failed
    FirstIntegralReport drift;   // worst of the two directions
    bool analytic_isocline = false;
};

/// Integrates every seed in both directions until window exit.  Per-seed
/// failures are collected, never aborting the batch.  Seeds lying on the
/// horizontal isocline are emitted as the exact linear orbit.  Fans out to
/// parallel workers (capped by SOLITON_LAB_THREADS); results keep seed
/// order.
std::vector<SeedResult> sample_portrait(const SolitonParams& params,
                                        const std::vector<PhasePoint>& grid,
                                        const IntegratorControls& controls);

}  // namespace soliton
