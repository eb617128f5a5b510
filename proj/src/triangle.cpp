#include "propeller/triangle.hpp"

#include <algorithm>
#include <cmath>

namespace propeller {

namespace {
constexpr double kAreaTol = 1e-12;  // vs (longest side)^2
}

Trilinear Trilinear::normalized() const {
    const double s = std::max({std::fabs(u), std::fabs(v), std::fabs(w)});
    if (s == 0.0) return *this;
    return {u / s, v / s, w / s};
}

Triangle::Triangle(Point p1, Point p2, Point p3) : v_{p1, p2, p3} {
    const double twice_area = cross(p2 - p1, p3 - p1);
    if (twice_area < 0.0) std::swap(v_[1], v_[2]);
    const double longest = std::max({dist(p1, p2), dist(p2, p3), dist(p3, p1)});
    if (std::fabs(twice_area) * 0.5 < kAreaTol * longest * longest)
        throw DegenerateTriangle("triangle area below tolerance");
}

double Triangle::signed_area() const {
    return 0.5 * cross(v_[1] - v_[0], v_[2] - v_[0]);
}

SideLengths Triangle::sidelengths() const {
    return {dist(v_[1], v_[2]), dist(v_[2], v_[0]), dist(v_[0], v_[1])};
}

TriangleMetrics Triangle::metrics() const {
    const SideLengths sl = sidelengths();
    TriangleMetrics m;
    m.area = signed_area();
    m.semiperimeter = 0.5 * (sl.s1 + sl.s2 + sl.s3);
    m.inradius = m.area / m.semiperimeter;
    m.circumradius = sl.s1 * sl.s2 * sl.s3 / (4.0 * m.area);
    m.rho = m.inradius / m.circumradius;
    m.rho_from_sides = (sl.s1 + sl.s2 - sl.s3) * (sl.s1 - sl.s2 + sl.s3) *
                       (-sl.s1 + sl.s2 + sl.s3) / (2.0 * sl.s1 * sl.s2 * sl.s3);
    return m;
}

double Triangle::signed_sideline_distance(int i, Point q) const {
    const Point a = v_[(i + 1) % 3];
    const Point b = v_[(i + 2) % 3];
    return cross(b - a, q - a) / dist(a, b);
}

Point trilinear_to_cartesian(const Triangle& t, const Trilinear& q) {
    const SideLengths sl = t.sidelengths();
    const double w1 = sl.s1 * q.u, w2 = sl.s2 * q.v, w3 = sl.s3 * q.w;
    const double den = w1 + w2 + w3;
    const double mag = std::fabs(w1) + std::fabs(w2) + std::fabs(w3);
    if (std::fabs(den) < 1e-14 * mag)
        throw PointAtInfinity("trilinear point lies at infinity");
    return (w1 * t.p(0) + w2 * t.p(1) + w3 * t.p(2)) / den;
}

Trilinear cartesian_to_trilinear(const Triangle& t, Point p) {
    return Trilinear{t.signed_sideline_distance(0, p),
                     t.signed_sideline_distance(1, p),
                     t.signed_sideline_distance(2, p)}
        .normalized();
}

std::array<Point, 3> anticevian_vertices(const Triangle& t, const Trilinear& x) {
    const Trilinear q = x.normalized();
    const std::array<Trilinear, 3> flips = {Trilinear{-q.u, q.v, q.w},
                                            Trilinear{q.u, -q.v, q.w},
                                            Trilinear{q.u, q.v, -q.w}};
    std::array<Point, 3> out{};
    for (int i = 0; i < 3; ++i) out[i] = trilinear_to_cartesian(t, flips[i]);
    return out;
}

Excircles exradii_and_excircle_areas(const Triangle& t) {
    const SideLengths sl = t.sidelengths();
    const TriangleMetrics m = t.metrics();
    // s - s_i computed directly from the sidelengths to avoid cancellation
    const std::array<double, 3> margin = {0.5 * (-sl.s1 + sl.s2 + sl.s3),
                                          0.5 * (sl.s1 - sl.s2 + sl.s3),
                                          0.5 * (sl.s1 + sl.s2 - sl.s3)};
    Excircles e;
    for (int i = 0; i < 3; ++i) {
        if (margin[i] <= 1e-13 * m.semiperimeter)
            throw DegenerateTriangle("exradius overflow: s - s_i below tolerance");
        e.radius[i] = m.area / margin[i];
        e.area[i] = kPi * e.radius[i] * e.radius[i];
    }
    return e;
}

}  // namespace propeller
