#pragma once

#include <string>

#include "soliton/expand.hpp"
#include "soliton/shrink.hpp"
#include "soliton/types.hpp"

namespace soliton {

/// Trajectory CSV: header `r,h,u[,z,f]`, 17 significant digits per value.
void write_csv(const Trajectory& traj, const std::string& path);

/// Events sidecar: JSON array of {kind, r, h, u}.
void write_events_json(const Trajectory& traj, const std::string& path);

/// Machine-readable classification record
/// {epsilon, a, b, class, alpha_deg, beta_deg, curvature_sign, rejected_reason?}.
std::string classification_json(const SolitonClass& cls, double a, double b);

/// Football inverse-problem record
/// {alpha1_deg, alpha2_deg, k, y1, y2, a, A, u_exit, class}.
std::string football_json(const FootballSolution& sol, ConeAngle alpha1, ConeAngle alpha2);

}  // namespace soliton
