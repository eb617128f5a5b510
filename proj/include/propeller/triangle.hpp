#pragma once

#include <array>

#include "propeller/errors.hpp"
#include "propeller/geom.hpp"

namespace propeller {

/// Homogeneous trilinear coordinates [u : v : w]; equal up to positive scale.
struct Trilinear {
    double u = 0.0;
    double v = 0.0;
    double w = 0.0;

    /// Scale by a positive factor so max(|u|,|v|,|w|) = 1.
    Trilinear normalized() const;
};

struct SideLengths {
    double s1 = 0.0;  // |P2 P3|, opposite P1
    double s2 = 0.0;  // |P3 P1|, opposite P2
    double s3 = 0.0;  // |P1 P2|, opposite P3
};

struct TriangleMetrics {
    double area = 0.0;
    double semiperimeter = 0.0;
    double inradius = 0.0;       // S / s
    double circumradius = 0.0;   // s1 s2 s3 / (4 S)
    double rho = 0.0;            // r / R
    double rho_from_sides = 0.0; // sidelength product form, cross-check of rho
};

struct Excircles {
    std::array<double, 3> radius{};  // r_i = S / (s - s_i)
    std::array<double, 3> area{};    // Omega_i = pi r_i^2
};

/// Triangle with vertices normalized counterclockwise at construction, so the
/// signed distance to sideline i is positive on the side containing P_i and
/// interior points get all-positive trilinears.
class Triangle {
public:
    Triangle(Point p1, Point p2, Point p3);

    Point p(int i) const { return v_[i]; }
    const std::array<Point, 3>& vertices() const { return v_; }

    SideLengths sidelengths() const;
    TriangleMetrics metrics() const;

    /// Signed distance from q to sideline i (positive on the P_i side).
    double signed_sideline_distance(int i, Point q) const;

    double signed_area() const;

private:
    std::array<Point, 3> v_;
};

/// Cartesian point of trilinears q; throws PointAtInfinity when
/// s1*u + s2*v + s3*w vanishes.
Point trilinear_to_cartesian(const Triangle& t, const Trilinear& q);

/// Trilinears of p, normalized to max-abs 1 by a positive scale.
Trilinear cartesian_to_trilinear(const Triangle& t, Point p);

/// Vertices of the anticevian triangle of x = [u:v:w]: the points with
/// trilinears [-u:v:w], [u:-v:w], [u:v:-w]. Throws PointAtInfinity per vertex.
std::array<Point, 3> anticevian_vertices(const Triangle& t, const Trilinear& x);

/// Exradii and excircle areas; throws DegenerateTriangle when an exradius
/// would overflow (s - s_i below tolerance).
Excircles exradii_and_excircle_areas(const Triangle& t);

}  // namespace propeller
