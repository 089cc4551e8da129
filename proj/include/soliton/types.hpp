#pragma once

#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace soliton {

// Global numeric thresholds. The zeros of h and the smoothness condition
// |u| = 1 are exact statements; these are the tolerances that stand in for
// them numerically.
inline constexpr double kPinchTol = 1e-9;
inline constexpr double kSlopeTol = 1e-6;

inline constexpr double kPi = 3.14159265358979323846;

struct SolitonError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct DomainError : SolitonError { using SolitonError::SolitonError; };
struct OutOfRange : SolitonError { using SolitonError::SolitonError; };
struct OutOfDomain : SolitonError { using SolitonError::SolitonError; };
struct ZeroSlope : SolitonError { using SolitonError::SolitonError; };
struct OnSingularLocus : SolitonError { using SolitonError::SolitonError; };
struct StepSizeUnderflow : SolitonError { using SolitonError::SolitonError; };
struct InvalidInit : SolitonError { using SolitonError::SolitonError; };
struct InvalidPinchSlope : SolitonError { using SolitonError::SolitonError; };
struct NoTwoPositiveRoots : SolitonError { using SolitonError::SolitonError; };
struct EqualAngles : SolitonError { using SolitonError::SolitonError; };
struct RegimeNotReached : SolitonError { using SolitonError::SolitonError; };
struct DriftExceeded : SolitonError { using SolitonError::SolitonError; };
struct EmbeddingLost : SolitonError {
    EmbeddingLost(double r_, const std::string& msg) : SolitonError(msg), r(r_) {}
    double r;
};

/// Case selector and potential slope of the soliton equation.
/// epsilon: -1 shrinking, 0 steady, +1 expanding.  a > 0 strictly; the
/// a = 0 constant-curvature metrics live in closed_forms, not here.
struct SolitonParams {
    int epsilon = 0;
    double a = 1.0;

    void validate() const {
        if (epsilon != -1 && epsilon != 0 && epsilon != 1)
            throw DomainError("epsilon must be -1, 0 or +1");
        if (!(a > 0.0) || !std::isfinite(a))
            throw DomainError("potential slope a must be > 0 and finite");
    }
};

/// State (h, u) of the first-order system, u = h'.
struct PhasePoint {
    double h = 0.0;
    double u = 0.0;
};

/// (v, w) = (a h, a u).
struct NormalizedPoint {
    double v = 0.0;
    double w = 0.0;
};

inline NormalizedPoint normalize(const SolitonParams& p, const PhasePoint& q) {
    return {p.a * q.h, p.a * q.u};
}
inline PhasePoint denormalize(const SolitonParams& p, const NormalizedPoint& q) {
    return {q.v / p.a, q.w / p.a};
}

/// Cone angle in radians; 2*pi marks a smooth point.
struct ConeAngle {
    double alpha = 2.0 * kPi;

    double degrees() const { return alpha * 180.0 / kPi; }
    bool smooth(double tol = kSlopeTol) const {
        return std::abs(alpha - 2.0 * kPi) < 2.0 * kPi * tol;
    }
};

inline ConeAngle cone_angle_from_degrees(double deg) { return {deg * kPi / 180.0}; }

enum class EventKind {
    PinchStart,
    PinchEnd,
    SmoothCrossing,
    IsoclineCrossing,
    EmbeddabilityLost,
    BlowUpGuard,
};

const char* event_kind_name(EventKind k);

struct Event {
    EventKind kind;
    double r;
    PhasePoint state;
};

/// An integrated solution: samples ordered strictly increasing in r, plus
/// detected events.  Extras z (embedding height) and f (potential) are
/// filled by embed/potential_profile and are parallel to samples when
/// present.
///
/// Convention: the metric only uses h^2, so geometric readings take |h|;
/// the raw phase-plane samples may visit h < 0 (the paper's own embedding
/// code integrates straight through the axis).
struct Trajectory {
    struct Sample {
        double r;
        double h;
        double u;
    };

    SolitonParams params;
    std::vector<Sample> samples;
    std::vector<Event> events;
    std::vector<double> z;  // empty or samples.size()
    std::vector<double> f;  // empty or samples.size()

    bool empty() const { return samples.empty(); }
    double r_front() const { return samples.front().r; }
    double r_back() const { return samples.back().r; }

    const Event* find_event(EventKind k) const {
        for (const auto& e : events)
            if (e.kind == k) return &e;
        return nullptr;
    }
};

enum class SolitonFamily {
    // steady
    FlatCylinder,
    Cigar,
    ConeCigar,
    CuspIncomplete,
    ExplodingRejected,
    // shrinking
    SphericalCandidate,
    Football,
    Teardrop,
    ShrinkGaussianPlane,
    ShrinkGaussianCone,
    OpenUnboundedRejected,
    // expanding
    AlphaBetaCone,
    BluntCone,
    CuspedCone,
    ExpandGaussianPlane,
    ExpandGaussianCone,
    UnboundedCurvatureRejected,
};

const char* family_name(SolitonFamily f);
bool family_rejected(SolitonFamily f);

/// Taxonomy leaf with its geometric data.  apex is the cone angle at the
/// pinch (beta in the expanding case); asymptotic is the cone angle of the
/// open end (alpha = pi/a).  Rejected families carry the violated
/// hypothesis in rejected_reason.
struct SolitonClass {
    SolitonFamily family;
    int epsilon = 0;
    std::optional<ConeAngle> apex;
    std::optional<ConeAngle> asymptotic;
    int curvature_sign = 0;  // expanding alpha-beta cones: +1, -1 or 0
    std::string rejected_reason;
    std::string note;

    bool rejected() const { return family_rejected(family); }
};

}  // namespace soliton
