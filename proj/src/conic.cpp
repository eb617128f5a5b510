#include "propeller/conic.hpp"

#include <algorithm>
#include <cmath>

namespace propeller {

namespace {

constexpr double kDegenerateDet = 1e-12;  // on the normalized 3x3 matrix

double max_abs6(double a, double b, double c, double d, double e, double f) {
    return std::max({std::fabs(a), std::fabs(b), std::fabs(c),
                     std::fabs(d), std::fabs(e), std::fabs(f)});
}

}  // namespace

Conic::Conic(double a, double b, double c, double d, double e, double f) {
    if (std::fabs(a) == 0.0 && std::fabs(b) == 0.0 && std::fabs(c) == 0.0)
        throw NotAnEllipse("conic has no quadratic part");
    const double s = max_abs6(a, b, c, d, e, f);
    A = a / s; B = b / s; C = c / s; D = d / s; E = e / s; F = f / s;
}

double Conic::det3() const {
    const double b2 = B / 2.0, d2 = D / 2.0, e2 = E / 2.0;
    return A * (C * F - e2 * e2) - b2 * (b2 * F - e2 * d2) + d2 * (b2 * e2 - C * d2);
}

std::array<double, 6> Conic::adjugate() const {
    const double b2 = B / 2.0, d2 = D / 2.0, e2 = E / 2.0;
    const double n00 = C * F - e2 * e2;
    const double n01 = e2 * d2 - b2 * F;
    const double n02 = b2 * e2 - C * d2;
    const double n11 = A * F - d2 * d2;
    const double n12 = b2 * d2 - A * e2;
    const double n22 = A * C - b2 * b2;
    return {n00, n01, n02, n11, n12, n22};
}

double Conic::dual_eval(const Line& L) const {
    const auto N = adjugate();
    return N[0] * L.l * L.l + N[3] * L.m * L.m + N[5] * L.n * L.n +
           2.0 * (N[1] * L.l * L.m + N[2] * L.l * L.n + N[4] * L.m * L.n);
}

bool Conic::same_up_to_scale(const Conic& other, double tol) const {
    // both are stored normalized to max-abs 1; only an overall sign may differ
    double dp = 0.0, dm = 0.0;
    const double s[6] = {A - other.A, B - other.B, C - other.C,
                         D - other.D, E - other.E, F - other.F};
    const double t[6] = {A + other.A, B + other.B, C + other.C,
                         D + other.D, E + other.E, F + other.F};
    for (int i = 0; i < 6; ++i) {
        dp = std::max(dp, std::fabs(s[i]));
        dm = std::max(dm, std::fabs(t[i]));
    }
    return std::min(dp, dm) <= tol;
}

Ellipse::Ellipse(Point c, double semi_major, double semi_minor, double rot)
    : center(c), a(semi_major), b(semi_minor), rotation(rot) {
    if (!(a >= b && b > 0.0)) throw InvalidAxes("ellipse requires a >= b > 0");
}

Point Ellipse::point_at(double t) const {
    const double c = std::cos(rotation), s = std::sin(rotation);
    const double px = a * std::cos(t), py = b * std::sin(t);
    return {center.x + c * px - s * py, center.y + s * px + c * py};
}

Point Ellipse::half_extent() const {
    const double c = std::cos(rotation), s = std::sin(rotation);
    return {std::sqrt(a * a * c * c + b * b * s * s),
            std::sqrt(a * a * s * s + b * b * c * c)};
}

Conic ellipse_to_conic(const Ellipse& e) {
    const double c = std::cos(e.rotation), s = std::sin(e.rotation);
    const double ia = 1.0 / (e.a * e.a), ib = 1.0 / (e.b * e.b);
    // quadratic form in centered coordinates
    const double qa = c * c * ia + s * s * ib;
    const double qb = 2.0 * c * s * (ia - ib);
    const double qc = s * s * ia + c * c * ib;
    const double cx = e.center.x, cy = e.center.y;
    return Conic(qa, qb, qc,
                 -2.0 * qa * cx - qb * cy,
                 -qb * cx - 2.0 * qc * cy,
                 qa * cx * cx + qb * cx * cy + qc * cy * cy - 1.0);
}

Ellipse conic_to_ellipse(const Conic& c) {
    const double disc = c.B * c.B - 4.0 * c.A * c.C;
    if (disc >= 0.0) throw NotAnEllipse("discriminant B^2 - 4AC >= 0");
    if (std::fabs(c.det3()) < kDegenerateDet) throw NotAnEllipse("degenerate conic");

    // center from the gradient conditions 2Ax + By + D = 0, Bx + 2Cy + E = 0
    const double den = -disc;  // 4AC - B^2 > 0
    const double xc = (c.B * c.E - 2.0 * c.C * c.D) / den;
    const double yc = (c.B * c.D - 2.0 * c.A * c.E) / den;

    // constant term after translating the center to the origin
    double fc = c.F + 0.5 * (c.D * xc + c.E * yc);

    // orient the quadratic form positive definite
    double A = c.A, B = c.B, C = c.C;
    if (A + C < 0.0) { A = -A; B = -B; C = -C; fc = -fc; }
    if (!(fc < 0.0)) throw NotAnEllipse("imaginary ellipse (no real points)");

    const double half_tr = 0.5 * (A + C);
    const double rad = std::sqrt(0.25 * (A - C) * (A - C) + 0.25 * B * B);
    const double lam_max = half_tr + rad;
    const double lam_min = half_tr - rad;

    const double major = std::sqrt(-fc / lam_min);
    const double minor = std::sqrt(-fc / lam_max);

    double rot = 0.0;
    if (rad > 1e-14 * lam_max) {
        // eigenvector of lam_min spans the major axis; pick the better-conditioned form
        const Point v1{0.5 * B, lam_min - A};
        const Point v2{lam_min - C, 0.5 * B};
        const Point v = norm(v1) >= norm(v2) ? v1 : v2;
        rot = std::atan2(v.y, v.x);
        rot = std::fmod(rot, kPi);
        if (rot < 0.0) rot += kPi;
        if (rot >= kPi) rot -= kPi;
    }
    return Ellipse({xc, yc}, major, minor, rot);
}

double conic_area(const Conic& c) {
    const Ellipse e = conic_to_ellipse(c);
    return e.area();
}

std::pair<Line, Line> tangent_lines_from_point(const Conic& c, Point p) {
    // classify inside/on in the canonical frame of the ellipse
    const Ellipse e = conic_to_ellipse(c);
    {
        const double co = std::cos(e.rotation), si = std::sin(e.rotation);
        const Point d = p - e.center;
        const double xi = co * d.x + si * d.y;
        const double eta = -si * d.x + co * d.y;
        const double u = (xi / e.a) * (xi / e.a) + (eta / e.b) * (eta / e.b);
        if (u <= 1.0 + 1e-12)
            throw PointInsideConic("point is inside or on the conic");
    }

    auto N = c.adjugate();
    {
        const double s = std::max({std::fabs(N[0]), std::fabs(N[1]), std::fabs(N[2]),
                                   std::fabs(N[3]), std::fabs(N[4]), std::fabs(N[5])});
        for (double& v : N) v /= s;
    }
    auto dual = [&N](const Line& L) {
        return N[0] * L.l * L.l + N[3] * L.m * L.m + N[5] * L.n * L.n +
               2.0 * (N[1] * L.l * L.m + N[2] * L.l * L.n + N[4] * L.m * L.n);
    };
    auto dual_bilinear = [&N](const Line& P, const Line& Q) {
        return N[0] * P.l * Q.l + N[3] * P.m * Q.m + N[5] * P.n * Q.n +
               N[1] * (P.l * Q.m + P.m * Q.l) + N[2] * (P.l * Q.n + P.n * Q.l) +
               N[4] * (P.m * Q.n + P.n * Q.m);
    };

    // pencil of lines through p: L(k) = k * Lv + Lh, Lv vertical, Lh horizontal
    const Line Lv{1.0, 0.0, -p.x};
    const Line Lh{0.0, -1.0, p.y};
    const double alpha = dual(Lv);
    const double beta = dual_bilinear(Lv, Lh);
    const double gamma = dual(Lh);

    const double mag = std::max({std::fabs(alpha), std::fabs(beta), std::fabs(gamma)});
    if (mag == 0.0) throw TangentFailure("degenerate tangent pencil");

    auto line_at = [&](double k) {
        return Line{k * Lv.l + Lh.l, k * Lv.m + Lh.m, k * Lv.n + Lh.n}.normalized();
    };

    if (std::fabs(alpha) < 1e-12 * mag) {
        // the vertical line itself is tangent; the other root is linear in k
        return {Lv.normalized(), line_at(-gamma / (2.0 * beta))};
    }
    const double quarter_disc = beta * beta - alpha * gamma;
    if (quarter_disc < 0.0) throw PointInsideConic("no real tangents from point");
    std::array<double, 2> roots{};
    solve_quadratic(alpha, 2.0 * beta, gamma, roots);
    return {line_at(roots[0]), line_at(roots[1])};
}

Conic apply_affine(const Conic& c, const AffineMap& T) {
    const double d = T.det();
    const double scale = std::max({std::fabs(T.m00), std::fabs(T.m01),
                                   std::fabs(T.m10), std::fabs(T.m11)});
    if (std::fabs(d) < 1e-15 * scale * scale) throw SingularMap("affine map is singular");
    const AffineMap inv = T.inverse();

    // homogeneous matrix of the inverse map
    const double H[3][3] = {{inv.m00, inv.m01, inv.translation.x},
                            {inv.m10, inv.m11, inv.translation.y},
                            {0.0, 0.0, 1.0}};
    const double M[3][3] = {{c.A, c.B / 2.0, c.D / 2.0},
                            {c.B / 2.0, c.C, c.E / 2.0},
                            {c.D / 2.0, c.E / 2.0, c.F}};
    // M' = H^T M H
    double MH[3][3] = {};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            for (int k = 0; k < 3; ++k) MH[i][j] += M[i][k] * H[k][j];
    double R[3][3] = {};
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            for (int k = 0; k < 3; ++k) R[i][j] += H[k][i] * MH[k][j];

    return Conic(R[0][0], 2.0 * R[0][1], R[1][1], 2.0 * R[0][2], 2.0 * R[1][2], R[2][2]);
}

}  // namespace propeller
