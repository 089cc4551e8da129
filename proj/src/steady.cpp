#include "soliton/steady.hpp"

#include <cmath>

#include "soliton/geometry.hpp"

namespace soliton {

SolitonClass classify_steady(double a, const PhasePoint& seed) {
    SolitonParams params{0, a};
    params.validate();
    SolitonClass cls;
    cls.epsilon = 0;

    if (std::abs(seed.u) < kSlopeTol) {
        // the u = 0 axis is a line of fixed points: flat cylinders
        cls.family = SolitonFamily::FlatCylinder;
        return cls;
    }
    const double C = seed.u - 0.5 * a * seed.h * seed.h;
    if (C > kSlopeTol) {
        cls.family = SolitonFamily::ExplodingRejected;
        cls.rejected_reason =
            "tan-family orbit: h blows up at finite r (incomplete metric, curvature "
            "unbounded below)";
        return cls;
    }
    if (std::abs(C) <= kSlopeTol) {
        cls.family = SolitonFamily::CuspIncomplete;
        cls.rejected_reason =
            "rational orbit through the origin: cusp end but incomplete at finite r, "
            "curvature unbounded below";
        return cls;
    }
    if (seed.u > 0) {
        // C < 0 arcs in the upper half-plane: completion has a boundary circle
        cls.family = SolitonFamily::CuspIncomplete;
        cls.rejected_reason =
            "upper tanh-family arc: incomplete at the r = 0 boundary circle, curvature "
            "unbounded below";
        return cls;
    }
    // C < 0, u < 0: cigar family; the pinch slope equals C
    if (std::abs(std::abs(C) - 1.0) < kSlopeTol) {
        cls.family = SolitonFamily::Cigar;
        cls.apex = ConeAngle{2.0 * kPi};
    } else {
        cls.family = SolitonFamily::ConeCigar;
        cls.apex = cone_angle_from_slope(C);
    }
    return cls;
}

}  // namespace soliton
