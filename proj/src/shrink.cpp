#include "soliton/shrink.hpp"

#include <cmath>

#include "soliton/closed_forms.hpp"
#include "soliton/geometry.hpp"

namespace soliton {

namespace {

// g(y) = |y| - k e^{y-1}; roots of g are the eqham solutions.
double eqham_g(double y, double k) { return std::abs(y) - k * std::exp(y - 1.0); }
double eqham_dg(double y, double k) {
    return (y >= 0 ? 1.0 : -1.0) - k * std::exp(y - 1.0);
}

// Safeguarded Newton: falls back to bisection whenever the Newton step
// leaves the bracket or fails to shrink it fast enough.
double newton_bisect(double lo, double hi, double k) {
    double flo = eqham_g(lo, k);
    double fhi = eqham_g(hi, k);
    if (flo == 0.0) return lo;
    if (fhi == 0.0) return hi;
    if (flo * fhi > 0) throw DomainError("eqham root not bracketed");
    double x = 0.5 * (lo + hi);
    double dx_old = hi - lo;
    for (int it = 0; it < 200; ++it) {
        const double f = eqham_g(x, k);
        if (f == 0.0) return x;
        if (f * flo < 0)
            hi = x;
        else {
            lo = x;
            flo = f;
        }
        const double df = eqham_dg(x, k);
        double xn = x - f / df;
        double dx = std::abs(xn - x);
        if (!(xn > lo && xn < hi) || dx > 0.5 * dx_old) {
            xn = 0.5 * (lo + hi);
            dx = 0.5 * (hi - lo);
        }
        dx_old = dx;
        if (std::abs(xn - x) < 1e-16 * std::max(1.0, std::abs(x)) &&
            std::abs(eqham_g(xn, k)) < 1e-13)
            return xn;
        x = xn;
    }
    return x;
}

}  // namespace

namespace {

// For the positive roots, y = k e^{y-1} is rewritten as F(t) = t - ln(1+t)
// = -ln k with t = y - 1.  F has simple, well-separated roots in t even at
// the k -> 1 tangency where the original equation has a double root (there
// a direct solve can only resolve y to ~sqrt(eps)).
double solve_shifted(double s, bool positive) {
    auto F = [](double t) { return t - std::log1p(t); };
    double lo, hi;
    if (positive) {
        lo = 0.0;
        hi = std::max(2.0 * std::sqrt(2.0 * s), s + 2.0 * std::log1p(s) + 2.0);
        while (F(hi) < s) hi *= 2.0;
    } else {
        lo = -1.0;  // F -> +inf as t -> -1+
        hi = 0.0;
    }
    double t = positive ? std::sqrt(2.0 * s) : -std::sqrt(2.0 * s) / (1.0 + std::sqrt(s));
    if (!(t > lo && t < hi)) t = 0.5 * (lo + hi);
    for (int it = 0; it < 100; ++it) {
        const double f = F(t) - s;
        if ((f > 0) == positive)
            hi = t;
        else
            lo = t;
        const double df = t / (1.0 + t);
        double tn = (df != 0.0) ? t - f / df : 0.5 * (lo + hi);
        if (!(tn > lo && tn < hi)) tn = 0.5 * (lo + hi);
        if (std::abs(tn - t) < 1e-16 * (1.0 + std::abs(t))) return tn;
        t = tn;
    }
    return t;
}

}  // namespace

EqhamRoots solve_eqham(double k) {
    if (!(k > 0)) throw DomainError("eqham requires k > 0");
    if (k > 1.0)
        throw NoTwoPositiveRoots("no positive roots of |y| = k e^{y-1} for k > 1");

    EqhamRoots roots{};
    if (k == 1.0) {
        roots.y1 = roots.y2 = 1.0;  // exact tangency
    } else {
        const double s = -std::log(k);
        roots.y1 = 1.0 + solve_shifted(s, false);
        roots.y2 = 1.0 + solve_shifted(s, true);
        // polish in the original variable where it is well conditioned
        // (g'(y) = 1 - y at a positive root, useless near the tangency)
        for (double* y : {&roots.y1, &roots.y2}) {
            if (std::abs(*y - 1.0) < 1e-4) continue;
            for (int it = 0; it < 3; ++it)
                *y -= eqham_g(*y, k) / eqham_dg(*y, k);
        }
    }
    roots.y_neg = newton_bisect(-60.0, -1e-308, k);
    return roots;
}

namespace {

// Psi as a function of s = -ln k: p/q straight from the shifted roots, so
// no precision is lost forming k (k ~ e^{-1/ratio} underflows quickly).
double psi_shifted(double s) {
    return -solve_shifted(s, false) / solve_shifted(s, true);
}

}  // namespace

double psi(double k) {
    if (!(k > 0) || !(k < 1)) throw DomainError("psi requires k in (0,1)");
    return psi_shifted(-std::log(k));
}

double psi_inverse(double ratio) {
    if (!(ratio > 0) || !(ratio < 1))
        throw DomainError("psi_inverse requires a ratio in (0,1)");
    // Psi decreases in s = -ln k; bisect in s so tiny k stay resolvable.
    double lo = 1e-18, hi = 700.0;
    if (psi_shifted(hi) > ratio)
        throw DomainError("ratio too small: k underflows double precision");
    for (int it = 0; it < 200 && hi - lo > 1e-15 * std::max(1.0, lo); ++it) {
        const double mid = 0.5 * (lo + hi);
        if (psi_shifted(mid) > ratio)
            lo = mid;
        else
            hi = mid;
    }
    return std::exp(-0.5 * (lo + hi));
}

FootballSolution solve_football(ConeAngle alpha1, ConeAngle alpha2,
                                const IntegratorControls& controls) {
    if (!(alpha1.alpha > 0) || !(alpha2.alpha > 0))
        throw DomainError("cone angles must be positive");
    if (std::abs(alpha1.alpha - alpha2.alpha) < 1e-12 * alpha2.alpha)
        throw EqualAngles(
            "equal cone angles give the constant-curvature spherical football");
    if (alpha1.alpha > alpha2.alpha)
        throw DomainError("solve_football requires alpha1 < alpha2");

    FootballSolution sol{};
    sol.k = psi_inverse(alpha1.alpha / alpha2.alpha);
    const auto roots = solve_eqham(sol.k);
    sol.y1 = roots.y1;
    sol.y2 = roots.y2;
    sol.p = 1.0 - roots.y1;
    sol.q = roots.y2 - 1.0;
    // pinch slope b = alpha1/(2 pi) and y1 = 1 - 2 a b give a = pi p / alpha1
    sol.a = kPi * sol.p / alpha1.alpha;

    const SolitonParams params{-1, sol.a};
    const double b = alpha1.alpha / (2.0 * kPi);
    auto res = integrate(params, {0.0, b}, 0.0, +1, controls);
    const Event* pinch = res.trajectory.find_event(EventKind::PinchEnd);
    if (!pinch)
        throw SolitonError("football orbit did not close within the integration span");
    sol.A = pinch->r;
    sol.u_exit = pinch->state.u;
    sol.trajectory = std::move(res.trajectory);
    return sol;
}

SolitonClass classify_shrinking(double a, double b, bool on_isocline,
                                const IntegratorControls& controls) {
    SolitonParams params{-1, a};
    params.validate();
    SolitonClass cls;
    cls.epsilon = -1;
    const double u_iso = 1.0 / (2.0 * a);

    if (on_isocline || std::abs(b - u_iso) < kSlopeTol) {
        if (std::abs(a - 0.5) < kSlopeTol) {
            cls.family = SolitonFamily::ShrinkGaussianPlane;
        } else {
            cls.family = SolitonFamily::ShrinkGaussianCone;
            cls.apex = ConeAngle{kPi / a};
        }
        return cls;
    }
    if (!on_isocline && std::abs(b) < kSlopeTol)
        throw InvalidPinchSlope("zero pinch slope does not define a cone point");
    if (b > u_iso) {
        cls.family = SolitonFamily::OpenUnboundedRejected;
        cls.rejected_reason =
            "orbit above the isocline u = 1/(2a): u unbounded, curvature unbounded below";
        return cls;
    }

    // closed orbit: reach the far pinch (backward when b < 0 keeps h > 0)
    auto res = integrate(params, {0.0, b}, 0.0, b > 0 ? +1 : -1, controls);
    const Event* pinch = res.trajectory.find_event(EventKind::PinchEnd);
    if (!pinch) throw SolitonError("closed shrinking orbit did not reach the far pinch");
    const double u_far = pinch->state.u;

    const bool smooth_near = std::abs(std::abs(b) - 1.0) < kSlopeTol;
    const bool smooth_far = std::abs(std::abs(u_far) - 1.0) < kSlopeTol;
    if (smooth_near && smooth_far) {
        // a != 0 orbits are never exactly spherical; report a candidate only
        cls.family = SolitonFamily::SphericalCandidate;
        cls.note = "both pinches smooth within tolerance; exact spherical metrics "
                   "have a = 0 (see const_curvature)";
        return cls;
    }
    if (smooth_near || smooth_far) {
        cls.family = SolitonFamily::Teardrop;
        cls.apex = cone_angle_from_slope(smooth_near ? u_far : b);
        return cls;
    }
    cls.family = SolitonFamily::Football;
    cls.apex = cone_angle_from_slope(b);
    cls.asymptotic = cone_angle_from_slope(u_far);
    return cls;
}

}  // namespace soliton
