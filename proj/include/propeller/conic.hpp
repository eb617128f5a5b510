#pragma once

#include <utility>

#include "propeller/errors.hpp"
#include "propeller/geom.hpp"

namespace propeller {

/// General conic A*x^2 + B*x*y + C*y^2 + D*x + E*y + F = 0.
///
/// Coefficients are homogeneous; the constructor rescales them so that
/// max(|A|,...,|F|) = 1, which fixes a canonical representative for
/// tolerance-based comparisons. Not all of A, B, C may be zero.
struct Conic {
    double A = 0.0, B = 0.0, C = 0.0, D = 0.0, E = 0.0, F = 0.0;

    Conic() = default;
    Conic(double a, double b, double c, double d, double e, double f);

    double eval(Point p) const {
        return A * p.x * p.x + B * p.x * p.y + C * p.y * p.y + D * p.x + E * p.y + F;
    }

    /// Entries of the symmetric 3x3 matrix of the quadratic form.
    /// [ A    B/2  D/2 ]
    /// [ B/2  C    E/2 ]
    /// [ D/2  E/2  F   ]
    double det3() const;

    /// Adjugate of the 3x3 matrix (the dual conic, up to scale), as the six
    /// independent entries (N00, N01, N02, N11, N12, N22).
    std::array<double, 6> adjugate() const;

    /// Dual quadratic form on a line: zero iff the line is tangent.
    double dual_eval(const Line& L) const;

    bool same_up_to_scale(const Conic& other, double tol = 1e-12) const;
};

/// Ellipse as center + semi-axes (a >= b > 0) + rotation of the major axis.
struct Ellipse {
    Point center{0.0, 0.0};
    double a = 1.0;
    double b = 1.0;
    double rotation = 0.0;  // radians, reported in [0, pi)

    Ellipse() = default;
    Ellipse(Point c, double semi_major, double semi_minor, double rot);

    double area() const { return kPi * a * b; }

    /// Boundary point at parameter t: center + R(rotation) * (a cos t, b sin t).
    Point point_at(double t) const;

    /// Axis-aligned half-extents of the bounding box.
    Point half_extent() const;
};

Conic ellipse_to_conic(const Ellipse& e);

/// Recovers center, sorted semi-axes and rotation in [0, pi).
/// Throws NotAnEllipse when the conic is a hyperbola/parabola, degenerate
/// (|det3| < 1e-12 after normalization) or has an empty real zero set.
Ellipse conic_to_ellipse(const Conic& c);

/// pi * a * b of the recovered ellipse. Throws NotAnEllipse as above.
double conic_area(const Conic& c);

/// The two tangent lines to c through an external point p.
/// Solved on the pencil of lines through p via the dual-form tangency
/// condition; the vertical member of the pencil is handled explicitly.
/// Throws PointInsideConic when p is inside or on c.
std::pair<Line, Line> tangent_lines_from_point(const Conic& c, Point p);

/// Image conic under the affine map: zero set of the result is T(zero set).
/// Throws SingularMap when det(T.linear) = 0.
Conic apply_affine(const Conic& c, const AffineMap& T);

}  // namespace propeller
