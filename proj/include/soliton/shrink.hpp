#pragma once

#include "soliton/ode.hpp"
#include "soliton/types.hpp"

namespace soliton {

/// Roots of |y| = k e^{y-1}.  For k in (0,1) there are two positive roots
/// straddling y = 1 and one negative root.
struct EqhamRoots {
    double y1;     // in (0, 1]
    double y2;     // in [1, inf)
    double y_neg;  // < 0
};

/// Safeguarded Newton/bisection solve of |y| = k e^{y-1}.  k = 1 returns
/// the exact tangency double root y1 = y2 = 1.  Throws DomainError for
/// k <= 0, NoTwoPositiveRoots for k > 1.
EqhamRoots solve_eqham(double k);

/// Angle-ratio map Psi(k) = p/q = (1 - y1)/(y2 - 1), strictly increasing
/// from 0 to 1 on (0, 1).
double psi(double k);

/// Inverse of psi by bisection on (0, 1); ratio must lie in (0, 1).
double psi_inverse(double ratio);

/// Inverse-problem result for prescribed football cone angles.
struct FootballSolution {
    double k;
    double y1, y2;
    double p, q;     // p = 1 - y1, q = y2 - 1
    double a;        // = pi p/alpha1 = pi q/alpha2
    double A;        // meridian length, from integration
    double u_exit;   // slope at the far pinch
    Trajectory trajectory;
};

/// Unique a > 0 with a closed orbit realizing cone angles alpha1 < alpha2.
/// Throws EqualAngles when the angles coincide (that family is the
/// constant-curvature football of const_curvature), DomainError when
/// alpha1 > alpha2 or either is nonpositive.
FootballSolution solve_football(ConeAngle alpha1, ConeAngle alpha2,
                                const IntegratorControls& controls = {});

/// Classification of the shrinking trajectory with pinch slope b = u(0) at
/// h = 0 (or on_isocline for the linear orbit u = 1/(2a)).  Seeds above
/// the isocline are rejected (u and the curvature are unbounded).
SolitonClass classify_shrinking(double a, double b, bool on_isocline = false,
                                const IntegratorControls& controls = {});

}  // namespace soliton
