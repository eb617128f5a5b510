#pragma once

#include <array>
#include <cmath>

namespace propeller {

constexpr double kPi = 3.14159265358979323846;

struct Point {
    double x = 0.0;
    double y = 0.0;
};

inline Point operator+(Point a, Point b) { return {a.x + b.x, a.y + b.y}; }
inline Point operator-(Point a, Point b) { return {a.x - b.x, a.y - b.y}; }
inline Point operator*(double k, Point p) { return {k * p.x, k * p.y}; }
inline Point operator*(Point p, double k) { return {k * p.x, k * p.y}; }
inline Point operator/(Point p, double k) { return {p.x / k, p.y / k}; }

inline double dot(Point a, Point b) { return a.x * b.x + a.y * b.y; }
inline double cross(Point a, Point b) { return a.x * b.y - a.y * b.x; }
inline double norm(Point p) { return std::hypot(p.x, p.y); }
inline double dist(Point a, Point b) { return norm(a - b); }

/// Homogeneous line coefficients: l*x + m*y + n = 0, with (l, m) != (0, 0).
struct Line {
    double l = 0.0;
    double m = 0.0;
    double n = 0.0;

    double eval(Point p) const { return l * p.x + m * p.y + n; }
    Point direction() const { return {-m, l}; }

    /// Scale so max(|l|,|m|,|n|) = 1 and the first nonzero coefficient is positive.
    Line normalized() const;
};

/// Line through two distinct points.
Line line_through(Point p, Point q);

/// Planar affine map x -> linear * x + translation.
struct AffineMap {
    // row-major 2x2
    double m00 = 1.0, m01 = 0.0;
    double m10 = 0.0, m11 = 1.0;
    Point translation{0.0, 0.0};

    double det() const { return m00 * m11 - m01 * m10; }

    Point apply(Point p) const {
        return {m00 * p.x + m01 * p.y + translation.x,
                m10 * p.x + m11 * p.y + translation.y};
    }

    /// Throws SingularMap when det is numerically zero.
    AffineMap inverse() const;

    /// this after other: (*this)(other(x)).
    AffineMap compose(const AffineMap& other) const;

    static AffineMap identity() { return {}; }
    static AffineMap scaling(double sx, double sy) { return {sx, 0.0, 0.0, sy, {0.0, 0.0}}; }
    static AffineMap rotation(double angle) {
        const double c = std::cos(angle), s = std::sin(angle);
        return {c, -s, s, c, {0.0, 0.0}};
    }
};

/// Stable real quadratic solve a*x^2 + b*x + c = 0; returns the number of real
/// roots (0, 1 or 2) and writes them in ascending order.
int solve_quadratic(double a, double b, double c, std::array<double, 2>& roots);

}  // namespace propeller
