#include "propeller/geom.hpp"

#include <algorithm>
#include <cmath>

#include "propeller/errors.hpp"

namespace propeller {

Line Line::normalized() const {
    const double s = std::max({std::fabs(l), std::fabs(m), std::fabs(n)});
    if (s == 0.0) return *this;
    Line out{l / s, m / s, n / s};
    double lead = out.l;
    if (lead == 0.0) lead = out.m;
    if (lead == 0.0) lead = out.n;
    if (lead < 0.0) {
        out.l = -out.l;
        out.m = -out.m;
        out.n = -out.n;
    }
    return out;
}

Line line_through(Point p, Point q) {
    // (y_p - y_q) x + (x_q - x_p) y + (x_p y_q - x_q y_p) = 0
    return Line{p.y - q.y, q.x - p.x, p.x * q.y - q.x * p.y}.normalized();
}

AffineMap AffineMap::inverse() const {
    const double d = det();
    const double scale = std::max({std::fabs(m00), std::fabs(m01), std::fabs(m10), std::fabs(m11)});
    if (std::fabs(d) < 1e-15 * scale * scale) throw SingularMap("affine map is singular");
    const double i00 = m11 / d, i01 = -m01 / d;
    const double i10 = -m10 / d, i11 = m00 / d;
    return {i00, i01, i10, i11,
            {-(i00 * translation.x + i01 * translation.y),
             -(i10 * translation.x + i11 * translation.y)}};
}

AffineMap AffineMap::compose(const AffineMap& other) const {
    AffineMap r;
    r.m00 = m00 * other.m00 + m01 * other.m10;
    r.m01 = m00 * other.m01 + m01 * other.m11;
    r.m10 = m10 * other.m00 + m11 * other.m10;
    r.m11 = m10 * other.m01 + m11 * other.m11;
    r.translation = apply(other.translation);
    return r;
}

int solve_quadratic(double a, double b, double c, std::array<double, 2>& roots) {
    if (a == 0.0) {
        if (b == 0.0) return 0;
        roots[0] = roots[1] = -c / b;
        return 1;
    }
    const double disc = b * b - 4.0 * a * c;
    if (disc < 0.0) return 0;
    const double sq = std::sqrt(disc);
    // q = -(b + sign(b) sqrt) / 2 avoids cancellation in the small root
    const double q = -0.5 * (b + (b >= 0.0 ? sq : -sq));
    double r0, r1;
    if (q != 0.0) {
        r0 = q / a;
        r1 = c / q;
    } else {
        r0 = 0.0;
        r1 = -b / a;
    }
    if (r0 > r1) std::swap(r0, r1);
    roots[0] = r0;
    roots[1] = r1;
    return disc == 0.0 ? 1 : 2;
}

}  // namespace propeller
