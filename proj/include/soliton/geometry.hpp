#pragma once

#include "soliton/types.hpp"

namespace soliton {

/// Gaussian curvature K = -(a u + eps/2) of the metric dr^2 + h^2 dtheta^2.
inline double curvature(const SolitonParams& p, double u) {
    return -(p.a * u + 0.5 * p.epsilon);
}

/// Cone angle 2*pi*|u0| of a pinch with slope u0.  Throws ZeroSlope when
/// |u0| is below the slope tolerance (a zero of h with zero slope is not a
/// cone point).
ConeAngle cone_angle_from_slope(double u0, double tol = kSlopeTol);

/// Fills traj.f with f(r) = f0 + integral of a*h dr along the samples.
/// Per-interval cubic Hermite quadrature (h and h' = u are both sampled),
/// so the quadrature order matches the dense output of the integrator.
void potential_profile(Trajectory& traj, double f0 = 0.0);

struct GeometryReport {
    double perimeter;  // 2*pi*h(r)
    double area;       // integral of 2*pi*h ds from the first sample to r
};

/// Perimeter/area of the disc of radius r around the starting pinch.
/// Throws OutOfRange when r is outside the sample range.
GeometryReport geometry_report(const Trajectory& traj, double r);

/// Interpolated state at r (cubic Hermite between bracketing samples).
PhasePoint state_at(const Trajectory& traj, double r);

}  // namespace soliton
