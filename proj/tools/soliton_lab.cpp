#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "soliton/embed.hpp"
#include "soliton/expand.hpp"
#include "soliton/geometry.hpp"
#include "soliton/io.hpp"
#include "soliton/ode.hpp"
#include "soliton/shrink.hpp"
#include "soliton/steady.hpp"

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;
using namespace soliton;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitRejected = 2;  // mathematically valid, rejected by the theorem's hypotheses

void apply_config(const std::string& path, IntegratorControls& ctl) {
    if (path.empty()) return;
    std::ifstream is(path);
    if (!is) throw SolitonError("cannot read config file " + path);
    std::string line;
    while (std::getline(is, line)) {
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const auto eq = line.find('=');
        if (eq == std::string::npos) continue;
        auto trim = [](std::string s) {
            s.erase(0, s.find_first_not_of(" \t"));
            const auto e = s.find_last_not_of(" \t\r");
            s.erase(e == std::string::npos ? 0 : e + 1);
            return s;
        };
        const std::string key = trim(line.substr(0, eq));
        const double val = std::stod(trim(line.substr(eq + 1)));
        if (key == "rel_tol") ctl.rel_tol = val;
        else if (key == "abs_tol") ctl.abs_tol = val;
        else if (key == "max_step") ctl.max_step = val;
        else if (key == "max_r_span") ctl.max_r_span = val;
        else if (key == "blowup_guard") ctl.blowup_guard = val;
        else throw SolitonError("unknown config key '" + key + "'");
    }
}

SolitonClass classify_dispatch(int eps, double a, double b, bool isocline, bool separatrix) {
    if (eps == 0) return classify_steady(a, b);
    if (eps == -1) return classify_shrinking(a, b, isocline);
    return classify_expanding(a, b, separatrix, isocline);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"soliton-lab: numerical laboratory for rotationally symmetric "
                 "2d gradient Ricci solitons"};
    app.require_subcommand(1);

    std::string config_path;
    std::string format = "csv";
    app.add_option("--config", config_path, "key=value config file (integrator controls)");
    app.add_option("--format", format, "output format")
        ->check(CLI::IsMember({"csv", "json", "obj"}));

    int eps = 0;
    double a = 1.0, b = 0.0;
    auto add_ab = [&](CLI::App* cmd, bool with_b = true) {
        cmd->add_option("-e,--epsilon", eps, "soliton sign: -1 shrinking, 0 steady, +1 expanding")
            ->required()
            ->check(CLI::IsMember({-1, 0, 1}));
        cmd->add_option("-a", a, "potential slope a > 0")->required();
        if (with_b) cmd->add_option("-b", b, "pinch slope u(0) at h = 0")->required();
    };

    // integrate
    auto* cmd_int = app.add_subcommand("integrate", "integrate one trajectory, write CSV + events");
    double span = 50.0, h0 = 0.0;
    std::string out = "trajectory";
    add_ab(cmd_int);
    cmd_int->add_option("--span", span, "maximum r span");
    cmd_int->add_option("--h0", h0, "initial h (default 0: start at a pinch)");
    cmd_int->add_option("-o,--out", out, "output path prefix");

    // classify
    auto* cmd_cls = app.add_subcommand("classify", "classify a trajectory by its pinch slope");
    bool isocline = false, separatrix = false;
    add_ab(cmd_cls);
    cmd_cls->add_flag("--isocline", isocline, "classify the linear isocline orbit instead of a pinch");
    cmd_cls->add_flag("--separatrix", separatrix, "classify the expanding separatrix (b -> 0)");

    // football
    auto* cmd_fb = app.add_subcommand("football", "inverse problem: cone angles -> parameter a");
    double a1_deg = 0, a2_deg = 0;
    std::string fb_out;
    cmd_fb->add_option("alpha1_deg", a1_deg, "smaller cone angle, degrees")->required();
    cmd_fb->add_option("alpha2_deg", a2_deg, "larger cone angle, degrees")->required();
    cmd_fb->add_option("-o,--out", fb_out, "write the JSON record here instead of stdout");

    // portrait
    auto* cmd_pt = app.add_subcommand("portrait", "sample a grid of seeds, one CSV per trajectory");
    int n_seeds = 100;
    double hmax = 3.0, umin = -1.0, umax = 1.0;
    std::string pt_out = "portrait";
    add_ab(cmd_pt, false);
    cmd_pt->add_option("-n", n_seeds, "number of seeds");
    cmd_pt->add_option("--hmax", hmax, "window: h in (0, hmax]");
    cmd_pt->add_option("--umin", umin, "window: u lower bound");
    cmd_pt->add_option("--umax", umax, "window: u upper bound");
    cmd_pt->add_option("-o,--out", pt_out, "output directory");

    // embed
    auto* cmd_em = app.add_subcommand("embed", "revolve a profile into an OBJ mesh");
    double em_span = 10.0;
    int rings = 200, sectors = 128;
    std::string em_out = "soliton.obj";
    add_ab(cmd_em);
    cmd_em->add_option("-A,--span", em_span, "meridian extent in r");
    cmd_em->add_option("--rings", rings, "meridian samples");
    cmd_em->add_option("--sectors", sectors, "angular samples");
    cmd_em->add_option("-o,--out", em_out, "output OBJ path");

    // separatrix
    auto* cmd_sx = app.add_subcommand("separatrix", "trace the expanding cusped-cone separatrix");
    double sx_extent = 220.0, sx_delta = 1e-8;
    std::string sx_out = "separatrix";
    cmd_sx->add_option("-a", a, "potential slope a > 0")->required();
    cmd_sx->add_option("--extent", sx_extent, "backward span toward the cone end");
    cmd_sx->add_option("--delta", sx_delta, "launch offset along the stable direction");
    cmd_sx->add_option("-o,--out", sx_out, "output path prefix");

    CLI11_PARSE(app, argc, argv);

    try {
        IntegratorControls ctl;
        apply_config(config_path, ctl);

        if (*cmd_int) {
            ctl.max_r_span = span;
            const SolitonParams params{eps, a};
            if (eps == 0 && std::abs(b) < kSlopeTol && std::abs(h0) < kPinchTol)
                std::cerr << "warning: (h,u) = (0,0) sits on the steady fixed line; "
                             "the trajectory is a constant\n";
            SolitonClass cls = classify_dispatch(eps, a, b, false, false);
            const int direction = (b < 0) ? -1 : +1;
            auto res = integrate(params, {h0, b}, 0.0, direction, ctl);
            if (res.trajectory.samples.size() >= 2) potential_profile(res.trajectory);
            if (format == "json") {
                json jt = json::array();
                for (size_t i = 0; i < res.trajectory.samples.size(); ++i) {
                    const auto& s = res.trajectory.samples[i];
                    json row{{"r", s.r}, {"h", s.h}, {"u", s.u}};
                    if (!res.trajectory.f.empty()) row["f"] = res.trajectory.f[i];
                    jt.push_back(row);
                }
                std::ofstream os(out + ".json");
                os << jt.dump(2) << '\n';
            } else {
                write_csv(res.trajectory, out + ".csv");
            }
            write_events_json(res.trajectory, out + ".events.json");
            std::cout << classification_json(cls, a, b) << '\n';
            return cls.rejected() ? kExitRejected : kExitOk;
        }

        if (*cmd_cls) {
            const SolitonClass cls = classify_dispatch(eps, a, b, isocline, separatrix);
            std::cout << classification_json(cls, a, b) << '\n';
            return cls.rejected() ? kExitRejected : kExitOk;
        }

        if (*cmd_fb) {
            if (std::abs(a1_deg - a2_deg) < 1e-9) {
                std::cerr << "error: EqualAngles: two equal cone points give the "
                             "constant-curvature spherical football (see const_curvature)\n";
                return kExitError;
            }
            const auto sol = solve_football(cone_angle_from_degrees(a1_deg),
                                            cone_angle_from_degrees(a2_deg), ctl);
            const std::string rec = football_json(sol, cone_angle_from_degrees(a1_deg),
                                                  cone_angle_from_degrees(a2_deg));
            if (fb_out.empty())
                std::cout << rec << '\n';
            else {
                std::ofstream os(fb_out);
                os << rec << '\n';
            }
            return kExitOk;
        }

        if (*cmd_pt) {
            const SolitonParams params{eps, a};
            ctl.window_h_max = hmax;
            ctl.window_u_min = umin;
            ctl.window_u_max = umax;
            std::vector<PhasePoint> grid;
            const int nh = std::max(1, (int)std::ceil(std::sqrt((double)n_seeds)));
            const int nu = std::max(1, (n_seeds + nh - 1) / nh);
            for (int i = 0; i < nh && (int)grid.size() < n_seeds; ++i)
                for (int j = 0; j < nu && (int)grid.size() < n_seeds; ++j)
                    grid.push_back({hmax * (i + 1) / nh,
                                    umin + (umax - umin) * (j + 0.5) / nu});
            const auto results = sample_portrait(params, grid, ctl);
            fs::create_directories(pt_out);
            json index = json::array();
            for (size_t i = 0; i < results.size(); ++i) {
                char name[32];
                std::snprintf(name, sizeof name, "seed_%04zu.csv", i);
                json entry{{"seed", i},
                           {"h0", grid[i].h},
                           {"u0", grid[i].u},
                           {"file", name},
                           {"analytic_isocline", results[i].analytic_isocline}};
                if (!results[i].error.empty()) {
                    entry["error"] = results[i].error;
                } else {
                    write_csv(results[i].trajectory, pt_out + "/" + name);
                    entry["relative_drift"] = results[i].drift.relative_drift;
                }
                index.push_back(entry);
            }
            std::ofstream os(pt_out + "/index.json");
            os << index.dump(2) << '\n';
            return kExitOk;
        }

        if (*cmd_em) {
            ctl.max_r_span = em_span;
            const SolitonParams params{eps, a};
            const SolitonClass cls = classify_dispatch(eps, a, b, false, false);
            const auto res = embed(params, {0.0, b}, em_span, rings, sectors, ctl);
            write_obj(res.mesh, em_out);

            json meta;
            meta["epsilon"] = eps;
            meta["a"] = a;
            meta["b"] = b;
            meta["class"] = family_name(cls.family);
            if (cls.apex) meta["apex_deg"] = cls.apex->degrees();
            if (cls.asymptotic) meta["asymptotic_deg"] = cls.asymptotic->degrees();
            double bb[6] = {1e300, 1e300, 1e300, -1e300, -1e300, -1e300};
            for (const auto& v : res.mesh.vertices)
                for (int k = 0; k < 3; ++k) {
                    bb[k] = std::min(bb[k], v[k]);
                    bb[3 + k] = std::max(bb[3 + k], v[k]);
                }
            meta["bbox"] = {bb[0], bb[1], bb[2], bb[3], bb[4], bb[5]};
            std::ofstream os(em_out + ".json");
            os << meta.dump(2) << '\n';
            return cls.rejected() ? kExitRejected : kExitOk;
        }

        if (*cmd_sx) {
            const auto res = compute_separatrix(a, sx_delta, sx_extent);
            write_csv(res.trajectory, sx_out + ".csv");
            json rep;
            rep["a"] = a;
            rep["delta"] = res.delta;
            rep["cusp_rate"] = res.cusp_rate;
            rep["asym_cusp_const"] = res.asym_cusp_const;
            rep["asym_cone_const"] = res.asym_cone_const;
            rep["cone_ratio_end"] = res.cone_ratio_end;
            rep["w_end"] = res.w_end;
            rep["class"] = classification_json(classify_expanding(a, 0.0, true), a, 0.0);
            std::ofstream os(sx_out + ".json");
            os << rep.dump(2) << '\n';
            std::cout << rep.dump(2) << '\n';
            return kExitOk;
        }
    } catch (const DomainError& e) {
        std::cerr << "error: invalid argument: " << e.what() << '\n';
        return kExitError;
    } catch (const EqualAngles& e) {
        std::cerr << "error: EqualAngles: " << e.what() << '\n';
        return kExitError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitError;
    }
    return kExitError;
}
