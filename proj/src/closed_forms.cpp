#include "soliton/closed_forms.hpp"

#include <cmath>
#include <limits>

namespace soliton {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
const double kSqrt2 = std::sqrt(2.0);
}  // namespace

const char* closed_family_name(ClosedFamily f) {
    switch (f) {
        case ClosedFamily::SteadyTan: return "SteadyTan";
        case ClosedFamily::SteadyTanh: return "SteadyTanh";
        case ClosedFamily::SteadyRational: return "SteadyRational";
        case ClosedFamily::ConstCurvExp: return "ConstCurvExp";
        case ClosedFamily::ConstCurvLinear: return "ConstCurvLinear";
        case ClosedFamily::ConstCurvTrig: return "ConstCurvTrig";
    }
    return "?";
}

ClosedForm steady_family(double a, double C, double D) {
    if (!(a > 0)) throw DomainError("steady_family requires a > 0");
    ClosedForm f;
    f.a = a;
    f.epsilon = 0;
    f.shift = D;
    if (C > 0) {
        f.family = ClosedFamily::SteadyTan;
        f.amplitude = std::sqrt(2.0 * C / a);
        f.rate = std::sqrt(a * C / 2.0);
        // single arch of tan containing the phase D
        f.r_min = (-kPi / 2.0 - D) / f.rate;
        f.r_max = (kPi / 2.0 - D) / f.rate;
    } else if (C < 0) {
        f.family = ClosedFamily::SteadyTanh;
        f.amplitude = std::sqrt(-2.0 * C / a);
        f.rate = -std::sqrt(-a * C / 2.0);
        f.r_min = -kInf;
        f.r_max = kInf;
    } else {
        if (D == 0.0) throw DomainError("rational steady family needs D != 0");
        f.family = ClosedFamily::SteadyRational;
        f.rate = a / 2.0;
        const double pole = 2.0 * D / a;
        f.r_min = (D > 0) ? -kInf : pole;
        f.r_max = (D > 0) ? pole : kInf;
    }
    return f;
}

ClosedForm const_curvature(int epsilon, double c1, double c2) {
    if (epsilon != -1 && epsilon != 0 && epsilon != 1)
        throw DomainError("epsilon must be -1, 0 or +1");
    if (c1 == 0.0 && c2 == 0.0) throw DomainError("(c1, c2) must not both vanish");
    ClosedForm f;
    f.epsilon = epsilon;
    f.amplitude = c1;
    f.shift = c2;
    f.rate = (epsilon == 0) ? 0.0 : 1.0 / kSqrt2;
    f.r_min = -kInf;
    f.r_max = kInf;
    f.family = (epsilon == 1)    ? ClosedFamily::ConstCurvExp
               : (epsilon == 0)  ? ClosedFamily::ConstCurvLinear
                                 : ClosedFamily::ConstCurvTrig;
    return f;
}

namespace {

// (h, h', h'') per family
struct Eval {
    double h, u, upp;
};

Eval eval_all(const ClosedForm& f, double r) {
    switch (f.family) {
        case ClosedFamily::SteadyTan: {
            const double x = f.rate * r + f.shift;
            const double t = std::tan(x), s2 = 1.0 + t * t;  // sec^2
            return {f.amplitude * t, f.amplitude * f.rate * s2,
                    2.0 * f.amplitude * f.rate * f.rate * s2 * t};
        }
        case ClosedFamily::SteadyTanh: {
            const double x = f.rate * r + f.shift;
            const double t = std::tanh(x), s2 = 1.0 - t * t;  // sech^2
            return {f.amplitude * t, f.amplitude * f.rate * s2,
                    -2.0 * f.amplitude * f.rate * f.rate * s2 * t};
        }
        case ClosedFamily::SteadyRational: {
            const double d = f.shift - f.rate * r;  // D - (a/2) r
            const double h = 1.0 / d;
            return {h, f.rate * h * h, 2.0 * f.rate * f.rate * h * h * h};
        }
        case ClosedFamily::ConstCurvExp: {
            const double ep = std::exp(r / kSqrt2), em = 1.0 / ep;
            const double h = f.amplitude * ep + f.shift * em;
            const double u = (f.amplitude * ep - f.shift * em) / kSqrt2;
            return {h, u, h / 2.0};
        }
        case ClosedFamily::ConstCurvLinear:
            return {f.amplitude * r + f.shift, f.amplitude, 0.0};
        case ClosedFamily::ConstCurvTrig: {
            const double s = std::sin(r / kSqrt2), c = std::cos(r / kSqrt2);
            const double h = f.amplitude * s + f.shift * c;
            const double u = (f.amplitude * c - f.shift * s) / kSqrt2;
            return {h, u, -h / 2.0};
        }
    }
    throw DomainError("unknown closed-form family");
}

}  // namespace

std::pair<double, double> evaluate(const ClosedForm& form, double r) {
    if (!form.in_domain(r)) throw OutOfDomain("r outside the closed-form domain");
    const auto e = eval_all(form, r);
    return {e.h, e.u};
}

double residual(const ClosedForm& form, double r) {
    if (!form.in_domain(r)) throw OutOfDomain("r outside the closed-form domain");
    const auto e = eval_all(form, r);
    switch (form.family) {
        case ClosedFamily::SteadyTan:
        case ClosedFamily::SteadyTanh:
        case ClosedFamily::SteadyRational:
            return e.upp - form.a * e.h * e.u;
        default:
            return e.upp - 0.5 * form.epsilon * e.h;
    }
}

}  // namespace soliton
