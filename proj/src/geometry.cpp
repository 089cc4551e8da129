#include "soliton/geometry.hpp"

#include <algorithm>
#include <cmath>

namespace soliton {

ConeAngle cone_angle_from_slope(double u0, double tol) {
    if (std::abs(u0) < tol)
        throw ZeroSlope("zero slope at a zero of h is not a cone point");
    return {2.0 * kPi * std::abs(u0)};
}

namespace {

// Integral of h over [r0, r1] from endpoint values and slopes (cubic
// Hermite model of h on the interval).
double hermite_segment_integral(double dr, double h0, double u0, double h1, double u1) {
    return dr * (0.5 * (h0 + h1) + dr * (u0 - u1) / 12.0);
}

size_t bracket(const Trajectory& traj, double r) {
    if (traj.samples.size() < 2 || r < traj.r_front() - 1e-12 || r > traj.r_back() + 1e-12)
        throw OutOfRange("r outside the trajectory sample range");
    auto it = std::upper_bound(traj.samples.begin(), traj.samples.end(), r,
                               [](double v, const Trajectory::Sample& s) { return v < s.r; });
    size_t i = static_cast<size_t>(std::distance(traj.samples.begin(), it));
    if (i == 0) i = 1;
    if (i >= traj.samples.size()) i = traj.samples.size() - 1;
    return i;  // samples[i-1].r <= r <= samples[i].r
}

}  // namespace

PhasePoint state_at(const Trajectory& traj, double r) {
    const size_t i = bracket(traj, r);
    const auto& s0 = traj.samples[i - 1];
    const auto& s1 = traj.samples[i];
    const double dr = s1.r - s0.r;
    if (dr <= 0) return {s0.h, s0.u};
    const double t = (r - s0.r) / dr, t2 = t * t, t3 = t2 * t;
    const double h = (2 * t3 - 3 * t2 + 1) * s0.h + (t3 - 2 * t2 + t) * dr * s0.u +
                     (-2 * t3 + 3 * t2) * s1.h + (t3 - t2) * dr * s1.u;
    // slope of the same Hermite model
    const double u = (6 * t2 - 6 * t) * s0.h / dr + (3 * t2 - 4 * t + 1) * s0.u +
                     (-6 * t2 + 6 * t) * s1.h / dr + (3 * t2 - 2 * t) * s1.u;
    return {h, u};
}

void potential_profile(Trajectory& traj, double f0) {
    if (traj.samples.size() < 2)
        throw DomainError("potential_profile needs at least 2 samples");
    traj.f.assign(traj.samples.size(), f0);
    double acc = f0;
    for (size_t i = 1; i < traj.samples.size(); ++i) {
        const auto& s0 = traj.samples[i - 1];
        const auto& s1 = traj.samples[i];
        acc += traj.params.a *
               hermite_segment_integral(s1.r - s0.r, s0.h, s0.u, s1.h, s1.u);
        traj.f[i] = acc;
    }
}

GeometryReport geometry_report(const Trajectory& traj, double r) {
    const size_t i = bracket(traj, r);
    const auto p = state_at(traj, r);
    double area = 0.0;
    for (size_t j = 1; j < i; ++j) {
        const auto& s0 = traj.samples[j - 1];
        const auto& s1 = traj.samples[j];
        area += hermite_segment_integral(s1.r - s0.r, s0.h, s0.u, s1.h, s1.u);
    }
    const auto& s0 = traj.samples[i - 1];
    area += hermite_segment_integral(r - s0.r, s0.h, s0.u, p.h, p.u);
    return {2.0 * kPi * p.h, 2.0 * kPi * area};
}

}  // namespace soliton
