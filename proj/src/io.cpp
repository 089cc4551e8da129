#include "soliton/io.hpp"

#include <cstdio>
#include <fstream>

#include <json.hpp>

namespace soliton {

namespace {

using json = nlohmann::ordered_json;

std::string fmt17(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

void dump_to(const json& j, const std::string& path) {
    std::ofstream os(path);
    if (!os) throw SolitonError("cannot open " + path + " for writing");
    os << j.dump(2) << '\n';
}

}  // namespace

void write_csv(const Trajectory& traj, const std::string& path) {
    std::ofstream os(path);
    if (!os) throw SolitonError("cannot open " + path + " for writing");
    const bool with_z = traj.z.size() == traj.samples.size() && !traj.z.empty();
    const bool with_f = traj.f.size() == traj.samples.size() && !traj.f.empty();
    os << "r,h,u";
    if (with_z) os << ",z";
    if (with_f) os << ",f";
    os << '\n';
    for (size_t i = 0; i < traj.samples.size(); ++i) {
        const auto& s = traj.samples[i];
        os << fmt17(s.r) << ',' << fmt17(s.h) << ',' << fmt17(s.u);
        if (with_z) os << ',' << fmt17(traj.z[i]);
        if (with_f) os << ',' << fmt17(traj.f[i]);
        os << '\n';
    }
    if (!os) throw SolitonError("write failed on " + path);
}

void write_events_json(const Trajectory& traj, const std::string& path) {
    json arr = json::array();
    for (const auto& e : traj.events)
        arr.push_back({{"kind", event_kind_name(e.kind)},
                       {"r", e.r},
                       {"h", e.state.h},
                       {"u", e.state.u}});
    dump_to(arr, path);
}

std::string classification_json(const SolitonClass& cls, double a, double b) {
    json j;
    j["epsilon"] = cls.epsilon;
    j["a"] = a;
    j["b"] = b;
    j["class"] = family_name(cls.family);
    if (cls.epsilon == -1) {
        // shrinking: pinch angles, ordered as encountered
        if (cls.apex) j["alpha1_deg"] = cls.apex->degrees();
        if (cls.asymptotic) j["alpha2_deg"] = cls.asymptotic->degrees();
    } else {
        if (cls.asymptotic) j["alpha_deg"] = cls.asymptotic->degrees();
        if (cls.apex) j["beta_deg"] = cls.apex->degrees();
    }
    if (cls.curvature_sign != 0) j["curvature_sign"] = cls.curvature_sign;
    if (!cls.rejected_reason.empty()) j["rejected_reason"] = cls.rejected_reason;
    if (!cls.note.empty()) j["note"] = cls.note;
    return j.dump(2);
}

std::string football_json(const FootballSolution& sol, ConeAngle alpha1, ConeAngle alpha2) {
    json j;
    j["alpha1_deg"] = alpha1.degrees();
    j["alpha2_deg"] = alpha2.degrees();
    j["k"] = sol.k;
    j["y1"] = sol.y1;
    j["y2"] = sol.y2;
    j["a"] = sol.a;
    j["A"] = sol.A;
    j["u_exit"] = sol.u_exit;
    j["class"] = "Football";
    return j.dump(2);
}

}  // namespace soliton
