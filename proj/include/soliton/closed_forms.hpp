#pragma once

#include <utility>

#include "soliton/types.hpp"

namespace soliton {

enum class ClosedFamily {
    SteadyTan,       // h = amplitude * tan(rate * r + shift)
    SteadyTanh,      // h = amplitude * tanh(rate * r + shift)  (rate signed)
    SteadyRational,  // h = 1 / (shift - (rate/1) * r), rate = a/2, amplitude unused
    ConstCurvExp,    // h = amplitude * e^{r/sqrt2} + shift * e^{-r/sqrt2}
    ConstCurvLinear, // h = amplitude * r + shift
    ConstCurvTrig,   // h = amplitude * sin(r/sqrt2) + shift * cos(r/sqrt2)
};

const char* closed_family_name(ClosedFamily f);

/// Analytic solution family with an explicit validity domain.  Coefficient
/// meaning depends on the family (see ClosedFamily).  Domains are stored
/// explicitly so pole crossings never silently produce NaNs.
struct ClosedForm {
    ClosedFamily family;
    double amplitude = 0.0;
    double rate = 0.0;
    double shift = 0.0;
    double r_min = 0.0;
    double r_max = 0.0;
    double a = 0.0;       // owning potential slope (steady families)
    int epsilon = 0;      // const-curvature families

    bool in_domain(double r) const { return r > r_min && r < r_max; }
};

/// Steady Riccati family h' = (a/2) h^2 + C: tan if C > 0, tanh if C < 0,
/// rational if C = 0.  Coefficients come from the Riccati form, certified
/// by the residual tests: amplitude^2 = 2|C|/a, rate^2 = a|C|/2, with the
/// tanh branch taking a negative rate (the C < 0 solution is decreasing).
/// D is the phase inside tan/tanh; for the rational family h(r) =
/// 1/(D - (a/2) r), with the pole at r = 2D/a excluded from the domain.
ClosedForm steady_family(double a, double C, double D = 0.0);

/// Constant-curvature solutions of h'' - (eps/2) h = 0.
ClosedForm const_curvature(int epsilon, double c1, double c2);

/// Analytic (h, h') at r.  Throws OutOfDomain outside the declared domain.
std::pair<double, double> evaluate(const ClosedForm& form, double r);

/// Residual of the governing equation at r: h'' - a h h' - (eps/2) h for
/// steady families (eps = 0), h'' - (eps/2) h for constant-curvature ones.
double residual(const ClosedForm& form, double r);

}  // namespace soliton
