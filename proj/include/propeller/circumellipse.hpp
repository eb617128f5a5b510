#pragma once

#include <cstdint>

#include "propeller/conic.hpp"
#include "propeller/triangle.hpp"

namespace propeller {

/// Areas of the four circumellipses attached to (triangle, X): the one
/// centered on X itself and the three centered on the anticevian vertices
/// of X, plus the radical factor z they share.
struct BladeAreas {
    double delta_x = 0.0;
    double delta_1 = 0.0;
    double delta_2 = 0.0;
    double delta_3 = 0.0;
    double z = 0.0;
};

/// Area of the circumellipse centered on the point with trilinears x.
/// Throws NotAnEllipse when the radicand or a denominator is nonpositive.
double circumellipse_area_closed(const Triangle& t, const Trilinear& x);

/// All four areas with z computed once and shared.
BladeAreas anticevian_blade_areas(const Triangle& t, const Trilinear& x);

/// Sum delta_1 + delta_2 + delta_3 of the anticevian trio (direct sum).
double sigma_sum(const Triangle& t, const Trilinear& x);

/// The two candidate sign-readings of the one-shot closed form for the sum:
/// the third denominator factor as printed, (s1 u - s2 v - s3 w), versus the
/// sign pattern of the anticevian denominators, (-s1 u + s2 v + s3 w).
enum class SigmaReading { printed, flipped };
double sigma_closed_form(const Triangle& t, const Trilinear& x, SigmaReading reading);

enum class SigmaVerdict { printed_matches, flipped_matches, ambiguous };

struct SigmaAdjudication {
    SigmaVerdict verdict = SigmaVerdict::ambiguous;
    double max_rel_err_printed = 0.0;
    double max_rel_err_flipped = 0.0;
    int trials = 0;
};

/// Compares both readings against the direct sum on random (triangle,
/// interior point) inputs; deterministic for a fixed seed.
SigmaAdjudication adjudicate_sigma_formula(int trials = 1000, std::uint64_t seed = 20260808,
                                           double rel_tol = 1e-10);

/// Circumconic through the three vertices with prescribed center, solved as
/// the null space of the 5x6 constraint system (three incidence rows, two
/// center-gradient rows) via a rank-revealing symmetric eigendecomposition.
/// Throws RankDeficient when the nullity is not 1 and NotAnEllipse when the
/// fitted conic is not a real ellipse.
Conic circumconic_centered_fit(const Triangle& t, Point center);

}  // namespace propeller
