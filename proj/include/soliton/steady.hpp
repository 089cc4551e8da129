#pragma once

#include "soliton/types.hpp"

namespace soliton {

/// Steady-case (eps = 0) classification of the orbit through a phase
/// point.  Orbits are the parabolas u = (a/2) h^2 + C; the Riccati
/// constant C decides the family.  For a pinch seed (h = 0, u = b) the
/// constant is just b.
SolitonClass classify_steady(double a, const PhasePoint& seed);

inline SolitonClass classify_steady(double a, double b) {
    return classify_steady(a, PhasePoint{0.0, b});
}

}  // namespace soliton
