#include "soliton/ode.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <thread>

#include "soliton/detail/rk45.hpp"

namespace soliton {

double first_integral(const SolitonParams& p, const PhasePoint& q) {
    p.validate();
    if (p.epsilon == 0) return p.a * q.h * q.h / 2.0 - q.u;
    const auto [v, w] = normalize(p, q);
    const double arg = (p.epsilon < 0) ? 2.0 * w - 1.0 : 2.0 * w + 1.0;
    if (std::abs(arg) < 1e-14)
        throw OnSingularLocus("first integral singular on the isocline orbit");
    if (p.epsilon < 0) return v * v - 2.0 * w - std::log(std::abs(arg));
    return v * v - 2.0 * w + std::log(std::abs(arg));
}

namespace {

using detail::Step;
using detail::Vec;

// Bisection on the dense output: locate g(state(r)) = 0 inside a step,
// assuming a sign change between the endpoints.  Resolves r to 1e-10.
template <class G>
double locate(const Step<2>& s, const G& g, double g0) {
    double lo = 0.0, hi = 1.0;
    for (int it = 0; it < 64 && (hi - lo) * (s.r1 - s.r0) > 1e-10; ++it) {
        const double mid = 0.5 * (lo + hi);
        const auto y = detail::hermite<2>(s, mid);
        if (g(y) * g0 > 0)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

struct HSample {
    double H;
    double cond;
    bool ok;
};

// H and the conditioning of its evaluation: |dH/dv|(1+|v|) + |dH/dw|(1+|w|).
// Near the isocline the log term makes dH/dw blow up, so a tiny state error
// moves H a lot; drift is judged against this scale.
HSample eval_first_integral(const SolitonParams& p, const PhasePoint& q) {
    HSample out{0.0, 1.0, false};
    try {
        out.H = first_integral(p, q);
    } catch (const OnSingularLocus&) {
        return out;
    }
    if (!std::isfinite(out.H)) return out;
    if (p.epsilon == 0) {
        out.cond = p.a * std::abs(q.h) * (1.0 + std::abs(q.h)) + 1.0 + std::abs(q.u);
    } else {
        const auto [v, w] = normalize(p, q);
        const double arg = (p.epsilon < 0) ? 2.0 * w - 1.0 : 2.0 * w + 1.0;
        const double dHdw = -2.0 + static_cast<double>(p.epsilon) * 2.0 / arg;
        out.cond = 2.0 * std::abs(v) * (1.0 + std::abs(v)) +
                   std::abs(dHdw) * (1.0 + std::abs(w));
    }
    out.ok = true;
    return out;
}

// Drift of H over the samples, anchored at the best-conditioned sample so a
// poorly conditioned seed does not pollute the whole report.  Each sample's
// deviation is scaled by max(1, |H_ref|, its own conditioning).
FirstIntegralReport measure_drift(const SolitonParams& params,
                                  const std::vector<Trajectory::Sample>& samples) {
    FirstIntegralReport rep;
    std::vector<HSample> hs(samples.size());
    size_t ref = samples.size();
    for (size_t i = 0; i < samples.size(); ++i) {
        hs[i] = eval_first_integral(params, {samples[i].h, samples[i].u});
        if (hs[i].ok && (ref == samples.size() || hs[i].cond < hs[ref].cond)) ref = i;
    }
    if (ref == samples.size()) return rep;
    rep.initial_value = hs[ref].H;
    for (const auto& h : hs) {
        if (!h.ok) continue;
        const double d = std::abs(h.H - rep.initial_value);
        rep.max_drift = std::max(rep.max_drift, d);
        rep.relative_drift = std::max(
            rep.relative_drift, d / std::max({1.0, std::abs(rep.initial_value), h.cond}));
    }
    return rep;
}

}  // namespace

IntegrateResult integrate(const SolitonParams& params, const PhasePoint& init, double r0,
                          int direction, const IntegratorControls& controls) {
    params.validate();
    controls.validate();
    if (direction != 1 && direction != -1) throw InvalidInit("direction must be +1 or -1");
    if (!std::isfinite(init.h) || !std::isfinite(init.u))
        throw InvalidInit("nonfinite initial state");

    const double sgn = static_cast<double>(direction);
    auto field = [&](const Vec<2>& y) -> Vec<2> {
        return {sgn * y[1], sgn * (params.a * y[1] + 0.5 * params.epsilon) * y[0]};
    };

    IntegrateResult out;
    out.trajectory.params = params;
    out.termination = Termination::SpanExhausted;
    auto& traj = out.trajectory;

    // samples are collected in internal time s >= 0; r = r0 + sgn*s
    struct Rec {
        double s, h, u;
    };
    std::vector<Rec> recs;
    std::vector<std::pair<EventKind, Rec>> evs;

    bool pinch_armed = std::abs(init.h) >= kPinchTol;
    if (!pinch_armed) evs.push_back({EventKind::PinchStart, {0.0, init.h, init.u}});
    const double u_iso = isocline_u(params);
    const bool track_iso = params.epsilon != 0;

    recs.push_back({0.0, init.h, init.u});

    auto emit_pinch_extras = [&](const Rec& rc) {
        if (std::abs(std::abs(rc.u) - 1.0) < kSlopeTol)
            evs.push_back({EventKind::SmoothCrossing, rc});
    };

    bool stop = false;
    auto on_step = [&](const Step<2>& st) -> bool {
        const double h0 = st.y0[0], h1 = st.y1[0];
        const double u0 = st.y0[1], u1 = st.y1[1];

        if (pinch_armed && ((h0 > 0) != (h1 > 0) || std::abs(h1) < kPinchTol * 0.5)) {
            Rec rc{st.r1, 0.0, u1};
            if ((h0 > 0) != (h1 > 0)) {
                const double th = locate(st, [](const Vec<2>& y) { return y[0]; }, h0);
                const auto y = detail::hermite<2>(st, th);
                rc = {st.r0 + th * (st.r1 - st.r0), 0.0, y[1]};
            }
            recs.push_back({rc.s, 0.0, rc.u});
            evs.push_back({EventKind::PinchEnd, rc});
            emit_pinch_extras(rc);
            out.termination = Termination::PinchEnd;
            stop = true;
            return false;
        }
        if (!pinch_armed && std::abs(h1) > 10.0 * kPinchTol) pinch_armed = true;

        if (track_iso && (u0 - u_iso) * (u1 - u_iso) < 0) {
            const double th =
                locate(st, [&](const Vec<2>& y) { return y[1] - u_iso; }, u0 - u_iso);
            const auto y = detail::hermite<2>(st, th);
            evs.push_back({EventKind::IsoclineCrossing,
                           {st.r0 + th * (st.r1 - st.r0), y[0], y[1]}});
        }

        recs.push_back({st.r1, h1, u1});

        if (std::max(std::abs(h1), std::abs(u1)) > controls.blowup_guard) {
            evs.push_back({EventKind::BlowUpGuard, {st.r1, h1, u1}});
            out.termination = Termination::BlowUp;
            stop = true;
            return false;
        }
        if (h1 > controls.window_h_max || u1 < controls.window_u_min ||
            u1 > controls.window_u_max) {
            out.termination = Termination::WindowExit;
            stop = true;
            return false;
        }
        return true;
    };

    detail::StepControl ctl{controls.rel_tol, controls.abs_tol, controls.max_step};
    detail::dopri5<2>(field, 0.0, Vec<2>{init.h, init.u}, controls.max_r_span, ctl, on_step);
    (void)stop;

    // relabel internal time to r and enforce ascending order
    traj.samples.reserve(recs.size());
    if (direction == 1) {
        for (const auto& rc : recs) traj.samples.push_back({r0 + rc.s, rc.h, rc.u});
        for (const auto& [k, rc] : evs) traj.events.push_back({k, r0 + rc.s, {rc.h, rc.u}});
    } else {
        for (auto it = recs.rbegin(); it != recs.rend(); ++it)
            traj.samples.push_back({r0 - it->s, it->h, it->u});
        for (const auto& [k, rc] : evs) traj.events.push_back({k, r0 - rc.s, {rc.h, rc.u}});
    }
    out.drift = measure_drift(params, traj.samples);
    return out;
}

namespace {

int thread_cap() {
    if (const char* env = std::getenv("SOLITON_LAB_THREADS")) {
        const int n = std::atoi(env);
        if (n > 0) return n;
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw ? static_cast<int>(hw) : 4;
}

// Exact linear orbit for a seed on the invariant isocline (or on the
// steady fixed line u = 0): h(r) = h0 + u_iso * (r - r0).
Trajectory analytic_isocline_orbit(const SolitonParams& params, const PhasePoint& seed,
                                   const IntegratorControls& controls) {
    Trajectory t;
    t.params = params;
    const double u0 = seed.u;
    const int n = 512;
    const double span = controls.max_r_span;
    for (int i = 0; i <= n; ++i) {
        const double r = -span + 2.0 * span * i / n;
        const double h = seed.h + u0 * r;
        if (h > controls.window_h_max || (params.epsilon == 0 && std::abs(h) > controls.blowup_guard))
            continue;
        t.samples.push_back({r, h, u0});
    }
    return t;
}

}  // namespace

std::vector<SeedResult> sample_portrait(const SolitonParams& params,
                                        const std::vector<PhasePoint>& grid,
                                        const IntegratorControls& controls) {
    params.validate();
    std::vector<SeedResult> results(grid.size());
    if (grid.empty()) return results;

    const double u_iso = isocline_u(params);

    auto work = [&](size_t i) {
        SeedResult& res = results[i];
        const PhasePoint& seed = grid[i];
        try {
            if (std::abs(seed.u - u_iso) < 1e-14 * std::max(1.0, std::abs(u_iso))) {
                res.trajectory = analytic_isocline_orbit(params, seed, controls);
                res.analytic_isocline = true;
                return;
            }
            auto back = integrate(params, seed, 0.0, -1, controls);
            auto fwd = integrate(params, seed, 0.0, +1, controls);
            Trajectory merged;
            merged.params = params;
            merged.samples = std::move(back.trajectory.samples);
            // skip the duplicated seed sample at r = 0
            merged.samples.insert(merged.samples.end(),
                                  fwd.trajectory.samples.begin() + 1,
                                  fwd.trajectory.samples.end());
            merged.events = std::move(back.trajectory.events);
            merged.events.insert(merged.events.end(), fwd.trajectory.events.begin(),
                                 fwd.trajectory.events.end());
            std::sort(merged.events.begin(), merged.events.end(),
                      [](const Event& a, const Event& b) { return a.r < b.r; });
            res.trajectory = std::move(merged);
            res.drift = (back.drift.relative_drift > fwd.drift.relative_drift) ? back.drift
                                                                               : fwd.drift;
        } catch (const std::exception& e) {
            res.error = e.what();
        }
    };

    const int nthreads = std::min<int>(thread_cap(), static_cast<int>(grid.size()));
    if (nthreads <= 1) {
        for (size_t i = 0; i < grid.size(); ++i) work(i);
    } else {
        std::atomic<size_t> next{0};
        std::vector<std::thread> pool;
        pool.reserve(nthreads);
        for (int t = 0; t < nthreads; ++t)
            pool.emplace_back([&] {
                for (size_t i = next.fetch_add(1); i < grid.size(); i = next.fetch_add(1)) work(i);
            });
        for (auto& th : pool) th.join();
    }
    return results;
}

const char* event_kind_name(EventKind k) {
    switch (k) {
        case EventKind::PinchStart: return "PinchStart";
        case EventKind::PinchEnd: return "PinchEnd";
        case EventKind::SmoothCrossing: return "SmoothCrossing";
        case EventKind::IsoclineCrossing: return "IsoclineCrossing";
        case EventKind::EmbeddabilityLost: return "EmbeddabilityLost";
        case EventKind::BlowUpGuard: return "BlowUpGuard";
    }
    return "?";
}

const char* family_name(SolitonFamily f) {
    switch (f) {
        case SolitonFamily::FlatCylinder: return "FlatCylinder";
        case SolitonFamily::Cigar: return "Cigar";
        case SolitonFamily::ConeCigar: return "ConeCigar";
        case SolitonFamily::CuspIncomplete: return "CuspIncomplete";
        case SolitonFamily::ExplodingRejected: return "ExplodingRejected";
        case SolitonFamily::SphericalCandidate: return "SphericalCandidate";
        case SolitonFamily::Football: return "Football";
        case SolitonFamily::Teardrop: return "Teardrop";
        case SolitonFamily::ShrinkGaussianPlane: return "ShrinkGaussianPlane";
        case SolitonFamily::ShrinkGaussianCone: return "ShrinkGaussianCone";
        case SolitonFamily::OpenUnboundedRejected: return "OpenUnboundedRejected";
        case SolitonFamily::AlphaBetaCone: return "AlphaBetaCone";
        case SolitonFamily::BluntCone: return "BluntCone";
        case SolitonFamily::CuspedCone: return "CuspedCone";
        case SolitonFamily::ExpandGaussianPlane: return "ExpandGaussianPlane";
        case SolitonFamily::ExpandGaussianCone: return "ExpandGaussianCone";
        case SolitonFamily::UnboundedCurvatureRejected: return "UnboundedCurvatureRejected";
    }
    return "?";
}

bool family_rejected(SolitonFamily f) {
    switch (f) {
        case SolitonFamily::CuspIncomplete:
        case SolitonFamily::ExplodingRejected:
        case SolitonFamily::OpenUnboundedRejected:
        case SolitonFamily::UnboundedCurvatureRejected:
            return true;
        default:
            return false;
    }
}

}  // namespace soliton
