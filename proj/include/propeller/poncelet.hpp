#pragma once

#include <optional>
#include <string>
#include <vector>

#include "propeller/conic.hpp"
#include "propeller/parallel.hpp"
#include "propeller/triangle.hpp"

namespace propeller {

enum class PairKind { incircle, axis_aligned, confocal, homothetic, affine_image };

const char* to_string(PairKind k);

/// Concentric ellipse pair admitting a Poncelet 3-periodic family: outer
/// ellipse plus inner caustic sharing the same center O. Checked
/// constructors probe closure at 8 parameters and reject invalid pairs.
struct ConcentricPair {
    Ellipse outer;
    Conic caustic;
    PairKind kind = PairKind::incircle;
    std::optional<AffineMap> provenance;       // for affine_image
    std::optional<double> sigma_prediction;    // known invariant value, when derivable

    Point center() const { return outer.center; }
    double closure_tolerance() const { return 1e-9 * std::max(outer.a, outer.b); }
};

/// One 3-periodic of the family: P1 = outer(t), the rest by tangent chords.
struct OrbitSample {
    double t;
    Triangle triangle;
    double closure_residual;
};

/// Outer (a, b) with the concentric incircle caustic of radius ab/(a+b).
/// Throws InvalidAxes unless a > b > 0.
ConcentricPair incircle_pair(double a, double b);

/// Outer (a, b) with axis-aligned caustic (a_c, b_c), b_c fixed by the
/// closure condition a_c/a + b_c/b = 1.
ConcentricPair axis_aligned_pair(double a, double b, double a_c);

/// Outer (a, b) with the confocal caustic, solved numerically from the
/// joint closure + confocality system. Throws NoRealCaustic when no
/// solution with 0 < b_c < a_c < a exists.
ConcentricPair confocal_pair(double a, double b);

/// Concentric circles (radius, radius/2); the equilateral family.
ConcentricPair homothetic_pair(double radius);

/// Both conics mapped by a centered affine map (translation must be zero).
ConcentricPair affine_image_pair(const ConcentricPair& base, const AffineMap& T);

/// Assembles a pair without the closure probe; used to study invalid pairs.
ConcentricPair make_unchecked_pair(Ellipse outer, Conic caustic, PairKind kind);

/// The construction-time validation: closure at 8 probe parameters.
/// Throws ClosureFailure when any residual exceeds the pair tolerance.
void probe_pair_closure(const ConcentricPair& pair);

/// Constructs the 3-periodic at parameter t. Throws ClosureFailure when the
/// third chord misses the start beyond tolerance, TangentFailure when a
/// vertex is not outside the caustic, DegenerateTriangle when the orbit
/// collapses.
OrbitSample orbit(const ConcentricPair& pair, double t);

/// Distance between the start point and the point reached after three
/// tangent-chord steps (always taking the counterclockwise branch).
double verify_closure(const ConcentricPair& pair, double t);

struct SweepEntry {
    double t = 0.0;
    std::optional<OrbitSample> sample;
    std::string error;  // nonempty when the sample was skipped
};

/// Samples at t = 2*pi*k/n, k = 0..n-1; per-sample failures become flagged
/// entries, the sweep itself never aborts.
std::vector<SweepEntry> sweep(const ConcentricPair& pair, int n, Exec policy = Exec::parallel);

}  // namespace propeller
