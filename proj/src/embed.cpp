#include "soliton/embed.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>

#include "soliton/detail/rk45.hpp"

namespace soliton {

namespace {

using detail::Step;
using detail::Vec;

constexpr double kSlopeOvershoot = 1e-9;  // roundoff clamp on |u| <= 1

}  // namespace

EmbedResult embed(const SolitonParams& params, const PhasePoint& init, double r_span,
                  int rings, int sectors, const IntegratorControls& controls) {
    params.validate();
    controls.validate();
    if (rings < 2 || sectors < 3)
        throw DomainError("embed needs rings >= 2 and sectors >= 3");
    if (!(r_span > 0)) throw DomainError("r_span must be positive");
    if (std::abs(init.u) > 1.0 + kSlopeOvershoot)
        throw EmbeddingLost(0.0, "initial slope |u| > 1: profile not embeddable");

    auto field = [&](const Vec<3>& y) -> Vec<3> {
        const double s = 1.0 - y[1] * y[1];
        return {y[1], (params.a * y[1] + 0.5 * params.epsilon) * y[0],
                std::sqrt(std::max(0.0, s))};
    };

    std::vector<Step<3>> steps;
    bool pinch_armed = std::abs(init.h) >= kPinchTol;
    double r_end = r_span;
    bool pinched_end = false;

    auto on_step = [&](const Step<3>& st) -> bool {
        const double u1 = st.y1[1];
        if (std::abs(u1) > 1.0 + kSlopeOvershoot) {
            // localize where |u| reached 1
            double lo = 0, hi = 1;
            for (int i = 0; i < 60; ++i) {
                const double mid = 0.5 * (lo + hi);
                (std::abs(detail::hermite<3>(st, mid)[1]) > 1.0 ? hi : lo) = mid;
            }
            const double r_lost = st.r0 + hi * (st.r1 - st.r0);
            throw EmbeddingLost(r_lost, "parallel slope |u| exceeded 1 at r = " +
                                            std::to_string(r_lost));
        }
        const double h0 = st.y0[0], h1 = st.y1[0];
        if (pinch_armed && ((h0 > 0) != (h1 > 0) || std::abs(h1) < kPinchTol * 0.5)) {
            double th = 1.0;
            if ((h0 > 0) != (h1 > 0)) {
                double lo = 0, hi = 1;
                for (int i = 0; i < 60; ++i) {
                    const double mid = 0.5 * (lo + hi);
                    ((detail::hermite<3>(st, mid)[0] > 0) == (h0 > 0) ? lo : hi) = mid;
                }
                th = 0.5 * (lo + hi);
            }
            Step<3> cut = st;
            cut.r1 = st.r0 + th * (st.r1 - st.r0);
            cut.y1 = detail::hermite<3>(st, th);
            cut.y1[0] = 0.0;
            steps.push_back(cut);
            r_end = cut.r1;
            pinched_end = true;
            return false;
        }
        if (!pinch_armed && std::abs(h1) > 10.0 * kPinchTol) pinch_armed = true;
        steps.push_back(st);
        return true;
    };

    detail::StepControl ctl{controls.rel_tol, controls.abs_tol, controls.max_step};
    detail::dopri5<3>(field, 0.0, Vec<3>{init.h, init.u, 0.0}, r_span, ctl, on_step);
    if (steps.empty()) throw InvalidInit("embedding produced no accepted steps");
    r_end = std::min(r_end, steps.back().r1);

    // uniform resampling of the profile at ring stations
    auto sample_at = [&](double r) -> Vec<3> {
        size_t lo = 0, hi = steps.size() - 1;
        while (lo < hi) {
            const size_t mid = (lo + hi) / 2;
            if (steps[mid].r1 < r)
                lo = mid + 1;
            else
                hi = mid;
        }
        const auto& st = steps[lo];
        const double th = (st.r1 > st.r0) ? (r - st.r0) / (st.r1 - st.r0) : 0.0;
        return detail::hermite<3>(st, std::clamp(th, 0.0, 1.0));
    };

    EmbedResult out;
    out.profile.params = params;
    Mesh& mesh = out.mesh;
    mesh.rings = rings;
    mesh.sectors = sectors;

    std::vector<int> ring_start(rings);
    std::vector<bool> ring_apex(rings);
    for (int i = 0; i < rings; ++i) {
        const double r = r_end * i / (rings - 1);
        auto y = sample_at(r);
        if (i == 0) y = {init.h, init.u, 0.0};
        if (i == rings - 1 && pinched_end) y[0] = 0.0;
        out.profile.samples.push_back({r, y[0], y[1]});
        out.profile.z.push_back(y[2]);

        const bool apex = std::abs(y[0]) < kPinchTol;
        ring_apex[i] = apex;
        ring_start[i] = static_cast<int>(mesh.vertices.size());
        if (apex) {
            mesh.vertices.push_back({0.0, 0.0, y[2]});
        } else {
            for (int j = 0; j < sectors; ++j) {
                const double th = 2.0 * kPi * j / sectors;
                mesh.vertices.push_back({y[0] * std::cos(th), y[0] * std::sin(th), y[2]});
            }
        }
    }
    if (pinched_end)
        out.profile.events.push_back(
            {EventKind::PinchEnd, r_end,
             {out.profile.samples.back().h, out.profile.samples.back().u}});

    for (int i = 0; i + 1 < rings; ++i) {
        const int s0 = ring_start[i], s1 = ring_start[i + 1];
        if (ring_apex[i] && ring_apex[i + 1]) continue;
        for (int j = 0; j < sectors; ++j) {
            const int jn = (j + 1) % sectors;
            if (ring_apex[i]) {
                mesh.faces.push_back({s0, s1 + j, s1 + jn});
            } else if (ring_apex[i + 1]) {
                mesh.faces.push_back({s0 + j, s0 + jn, s1});
            } else {
                mesh.faces.push_back({s0 + j, s0 + jn, s1 + jn, s1 + j});
            }
        }
    }
    return out;
}

void write_obj(const Mesh& mesh, const std::string& path) {
    std::ofstream os(path);
    if (!os) throw SolitonError("cannot open " + path + " for writing");
    os << "# soliton-lab surface-of-revolution mesh\n";
    char buf[96];
    for (const auto& v : mesh.vertices) {
        std::snprintf(buf, sizeof buf, "v %.9g %.9g %.9g\n", v[0], v[1], v[2]);
        os << buf;
    }
    for (const auto& f : mesh.faces) {
        os << 'f';
        for (int idx : f) os << ' ' << idx + 1;
        os << '\n';
    }
    if (!os) throw SolitonError("write failed on " + path);
}

}  // namespace soliton
