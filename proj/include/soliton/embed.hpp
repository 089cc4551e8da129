#pragma once

#include <array>
#include <string>

#include "soliton/ode.hpp"
#include "soliton/types.hpp"

namespace soliton {

/// Surface-of-revolution mesh: rings of `sectors` vertices stacked along
/// the meridian, pinched rings collapsed to a single apex vertex with a
/// triangle fan.
struct Mesh {
    std::vector<std::array<double, 3>> vertices;
    std::vector<std::vector<int>> faces;  // quads, or triangles at an apex fan
    int rings = 0;
    int sectors = 0;
};

/// Integrates the augmented system (h, u, z) with z' = sqrt(1 - u^2)
/// (nonnegative branch) from h(0) = init.h, u(0) = init.u, z(0) = 0, then
/// revolves the profile.  Stops early at a pinch (apex).  |u| exceeding 1
/// by more than 1e-9 raises EmbeddingLost; smaller overshoots are clamped
/// as roundoff.
struct EmbedResult {
    Mesh mesh;
    Trajectory profile;  // with z filled
};

EmbedResult embed(const SolitonParams& params, const PhasePoint& init, double r_span,
                  int rings, int sectors, const IntegratorControls& controls = {});

void write_obj(const Mesh& mesh, const std::string& path);

}  // namespace soliton
