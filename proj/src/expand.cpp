#include "soliton/expand.hpp"

#include <cmath>

namespace soliton {

namespace {
const double kSqrt2 = std::sqrt(2.0);

struct LineFit {
    double slope, intercept;
};

LineFit fit_line(const std::vector<double>& x, const std::vector<double>& y) {
    const size_t n = x.size();
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (size_t i = 0; i < n; ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
    }
    const double den = n * sxx - sx * sx;
    return {(n * sxy - sx * sy) / den, (sxx * sy - sx * sxy) / den};
}

}  // namespace

SaddleData saddle_linearization() {
    return {-1.0 / kSqrt2, 1.0 / kSqrt2, {kSqrt2, 1.0}, {-kSqrt2, 1.0}};
}

SeparatrixResult compute_separatrix(double a, double delta, double r_extent) {
    if (!(a > 0)) throw DomainError("separatrix requires a > 0");
    if (!(delta > 0) || delta > 1e-6)
        throw DomainError("launch offset delta must lie in (0, 1e-6]");
    if (!(r_extent > 0)) throw DomainError("r_extent must be positive");

    // work in the normalized system (a = 1), de-normalize at the end
    const SolitonParams norm{+1, 1.0};
    // stable ("sinking") direction with v > 0: delta * (sqrt2, -1)/sqrt3
    const double n3 = std::sqrt(3.0);
    const PhasePoint p0{delta * kSqrt2 / n3, -delta / n3};

    IntegratorControls ctl;
    ctl.rel_tol = 1e-12;
    ctl.abs_tol = 1e-16;
    ctl.max_r_span = r_extent;
    auto back = integrate(norm, p0, 0.0, -1, ctl);

    IntegratorControls fwd_ctl = ctl;
    fwd_ctl.max_r_span = 40.0;
    auto fwd = integrate(norm, p0, 0.0, +1, fwd_ctl);

    Trajectory merged;
    merged.params = norm;
    merged.samples = std::move(back.trajectory.samples);
    merged.samples.insert(merged.samples.end(), fwd.trajectory.samples.begin() + 1,
                          fwd.trajectory.samples.end());

    SeparatrixResult res{};
    res.delta = delta;

    // The separatrix lies on the level set H = 0.  Each sample's |H| is
    // scaled by the conditioning of evaluating H there: near the isocline
    // the log term amplifies state roundoff arbitrarily, so raw |H| is not
    // a meaningful error measure.
    for (const auto& s : merged.samples) {
        if (s.h <= 0) continue;
        double H;
        try {
            H = first_integral(norm, {s.h, s.u});
        } catch (const OnSingularLocus&) {
            continue;
        }
        const double arg = 2.0 * s.u + 1.0;
        const double cond = 2.0 * s.h * (1.0 + s.h) +
                            std::abs(-2.0 + 2.0 / arg) * (1.0 + std::abs(s.u));
        res.h_drift = std::max(res.h_drift, std::abs(H) / std::max(1.0, cond));
    }
    if (res.h_drift > 1e-7)
        throw DriftExceeded("separatrix left the H = 0 level set; reduce delta or extent");

    // The system is autonomous, so the r origin is a gauge choice.  The
    // launch point fixes it arbitrarily (the transient from delta shifts the
    // cone intercept by ~ sqrt2 ln(1/delta)); re-anchor r so the cone
    // asymptote is exactly v = -r/2.
    {
        std::vector<double> consts;
        const double front_r = merged.samples.front().r;
        for (const auto& s : merged.samples)
            if (s.r <= 0.9 * front_r) consts.push_back(s.h + 0.5 * s.r);
        if (consts.empty()) throw RegimeNotReached("backward extent too short for the cone end");
        double sum = 0.0;
        for (double c : consts) sum += c;
        const double shift = 2.0 * sum / consts.size();
        for (auto& s : merged.samples) s.r -= shift;
    }

    // cusp end: fit ln v against r in the linear regime near the origin
    {
        std::vector<double> xs, ys;
        double csum = 0.0;
        for (const auto& s : merged.samples) {
            if (s.h > 0 && s.h < 1e-5 && s.h >= delta * 1e-3) {
                xs.push_back(s.r);
                ys.push_back(std::log(s.h));
                csum += s.h * std::exp(s.r / kSqrt2);
            }
        }
        if (xs.size() < 8) throw RegimeNotReached("too few samples in the cusp regime");
        res.cusp_rate = -fit_line(xs, ys).slope;
        res.asym_cusp_const = csum / xs.size();
    }

    // cone end: residual intercept (~0 after re-anchoring), and the
    // approach metrics at the reference station r = -200
    {
        std::vector<double> consts;
        const double front_r = merged.samples.front().r;
        for (const auto& s : merged.samples)
            if (s.r <= 0.9 * front_r) consts.push_back(s.h + 0.5 * s.r);
        double sum = 0.0;
        for (double c : consts) sum += c;
        res.asym_cone_const = sum / consts.size();

        const double r_ref = -200.0;
        PhasePoint at = {merged.samples.front().h, merged.samples.front().u};
        double r_at = front_r;
        for (size_t i = 1; i < merged.samples.size(); ++i) {
            const auto& s0 = merged.samples[i - 1];
            const auto& s1 = merged.samples[i];
            if (s0.r <= r_ref && r_ref <= s1.r) {
                const double t = (r_ref - s0.r) / (s1.r - s0.r);
                at = {s0.h + t * (s1.h - s0.h), s0.u + t * (s1.u - s0.u)};
                r_at = r_ref;
                break;
            }
        }
        res.cone_ratio_end = at.h / (-0.5 * r_at);
        res.w_end = at.u;
    }

    // de-normalize for the user-facing trajectory
    res.trajectory.params = {+1, a};
    res.trajectory.samples.reserve(merged.samples.size());
    for (const auto& s : merged.samples)
        res.trajectory.samples.push_back({s.r, s.h / a, s.u / a});
    return res;
}

SolitonClass classify_expanding(double a, double b, bool separatrix_flag,
                                bool isocline_flag) {
    SolitonParams params{+1, a};
    params.validate();
    SolitonClass cls;
    cls.epsilon = +1;
    const ConeAngle alpha{kPi / a};

    if (isocline_flag || std::abs(b + 1.0 / (2.0 * a)) < kSlopeTol) {
        if (std::abs(a - 0.5) < kSlopeTol) {
            cls.family = SolitonFamily::ExpandGaussianPlane;
        } else {
            cls.family = SolitonFamily::ExpandGaussianCone;
            cls.apex = alpha;
        }
        return cls;
    }
    if (separatrix_flag || std::abs(b) < kSlopeTol) {
        cls.family = SolitonFamily::CuspedCone;
        cls.asymptotic = alpha;
        cls.note = "universal cover: the flat-hyperbolic soliton plane (same profile, "
                   "theta in R)";
        return cls;
    }
    if (b > 0) {
        cls.family = SolitonFamily::UnboundedCurvatureRejected;
        cls.rejected_reason = "orbit above the separatrix: curvature not bounded below";
        return cls;
    }
    if (std::abs(b + 1.0) < kSlopeTol) {
        cls.family = SolitonFamily::BluntCone;
        cls.asymptotic = alpha;
        return cls;
    }
    cls.family = SolitonFamily::AlphaBetaCone;
    cls.asymptotic = alpha;
    cls.apex = ConeAngle{-2.0 * kPi * b};
    // positive curvature iff alpha < beta
    cls.curvature_sign = (alpha.alpha < cls.apex->alpha) ? +1 : -1;
    return cls;
}

AsymptoticsReport asymptotics_report(const Trajectory& traj) {
    if (traj.samples.size() < 16)
        throw RegimeNotReached("trajectory too short for asymptotics");
    const double a = traj.params.a;
    AsymptoticsReport rep;

    // upper-quadrant parabola: v^2/(2w) once w has grown past 50
    {
        const auto& last = traj.samples.back();
        const double v = a * last.h, w = a * last.u;
        if (w > 50.0) rep.parabola_ratio = v * v / (2.0 * w);
    }

    // cone end: u approaches -1/(2a) at the most negative r
    {
        const auto& far = traj.samples.front();
        const double target = -1.0 / (2.0 * a);
        if (far.u < 0 && std::abs(far.u - target) < 0.1 * std::abs(target))
            rep.cone_slope_ratio = far.u / target;
    }

    // cusp end: exponential decay of v at the forward end
    {
        std::vector<double> xs, ys;
        for (const auto& s : traj.samples) {
            const double v = a * s.h, w = a * s.u;
            if (v > 0 && v < 1e-3 && std::abs(w) < 1e-3) {
                xs.push_back(s.r);
                ys.push_back(std::log(v));
            }
        }
        if (xs.size() >= 8 && xs.back() - xs.front() > 1.0)
            rep.cusp_rate = -fit_line(xs, ys).slope;
    }

    if (!rep.parabola_ratio && !rep.cone_slope_ratio && !rep.cusp_rate)
        throw RegimeNotReached("no asymptotic regime reached");
    return rep;
}

}  // namespace soliton
