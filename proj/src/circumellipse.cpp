#include "propeller/circumellipse.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

namespace propeller {

namespace {

struct BladeDenominators {
    double s1, s2, s3, u, v, w;
    double d0, d1, d2, d3;  // s1u+s2v+s3w and the three single-sign flips
    double sss;             // s1 s2 s3
    double uvw;
};

BladeDenominators blade_terms(const Triangle& t, const Trilinear& x) {
    const SideLengths sl = t.sidelengths();
    const Trilinear q = x.normalized();
    BladeDenominators b{};
    b.s1 = sl.s1; b.s2 = sl.s2; b.s3 = sl.s3;
    b.u = q.u; b.v = q.v; b.w = q.w;
    const double a1 = b.s1 * b.u, a2 = b.s2 * b.v, a3 = b.s3 * b.w;
    b.d0 = a1 + a2 + a3;
    b.d1 = -a1 + a2 + a3;
    b.d2 = a1 - a2 + a3;
    b.d3 = a1 + a2 - a3;
    b.sss = b.s1 * b.s2 * b.s3;
    b.uvw = b.u * b.v * b.w;
    return b;
}

double shared_z(const BladeDenominators& b) {
    const double side_prod = (b.s1 + b.s2 + b.s3) * (-b.s1 + b.s2 + b.s3) *
                             (b.s1 - b.s2 + b.s3) * (b.s1 + b.s2 - b.s3);
    const double tri_prod = b.d0 * b.d1 * b.d2 * b.d3;
    if (!(tri_prod > 0.0) || !(side_prod > 0.0))
        throw NotAnEllipse("circumellipse radicand is nonpositive");
    return kPi * std::sqrt(side_prod / tri_prod);
}

}  // namespace

double circumellipse_area_closed(const Triangle& t, const Trilinear& x) {
    const BladeDenominators b = blade_terms(t, x);
    if (!(b.uvw > 0.0) || !(b.d0 > 0.0))
        throw NotAnEllipse("circumellipse at x is not a real ellipse");
    const double z = shared_z(b);
    return z * b.sss * b.uvw / b.d0;
}

BladeAreas anticevian_blade_areas(const Triangle& t, const Trilinear& x) {
    const BladeDenominators b = blade_terms(t, x);
    if (!(b.uvw > 0.0) || !(b.d0 > 0.0))
        throw NotAnEllipse("circumellipse at x is not a real ellipse");
    const double denoms[3] = {b.d1, b.d2, b.d3};
    for (int i = 0; i < 3; ++i)
        if (!(denoms[i] > 0.0))
            throw NotAnEllipse("anticevian circumconic " + std::to_string(i + 1) +
                               " is not a real ellipse");
    BladeAreas out;
    out.z = shared_z(b);
    const double num = out.z * b.sss * b.uvw;
    out.delta_x = num / b.d0;
    out.delta_1 = num / b.d1;
    out.delta_2 = num / b.d2;
    out.delta_3 = num / b.d3;
    return out;
}

double sigma_sum(const Triangle& t, const Trilinear& x) {
    const BladeAreas b = anticevian_blade_areas(t, x);
    return b.delta_1 + b.delta_2 + b.delta_3;
}

double sigma_closed_form(const Triangle& t, const Trilinear& x, SigmaReading reading) {
    const BladeDenominators b = blade_terms(t, x);
    const double z = shared_z(b);
    const double a1 = b.s1 * b.u, a2 = b.s2 * b.v, a3 = b.s3 * b.w;
    const double quad = a1 * a1 + a2 * a2 + a3 * a3 -
                        2.0 * (a1 * a2 + a1 * a3 + a2 * a3);
    const double third = reading == SigmaReading::printed ? (a1 - a2 - a3)
                                                          : (-a1 + a2 + a3);
    const double den = b.d3 * b.d2 * third;
    return quad * b.sss * b.uvw * z / den;
}

SigmaAdjudication adjudicate_sigma_formula(int trials, std::uint64_t seed, double rel_tol) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> coord(-3.0, 3.0);
    std::uniform_real_distribution<double> bary(0.08, 1.0);

    SigmaAdjudication adj;
    while (adj.trials < trials) {
        const Point p1{coord(rng), coord(rng)};
        const Point p2{coord(rng), coord(rng)};
        const Point p3{coord(rng), coord(rng)};
        double longest = std::max({dist(p1, p2), dist(p2, p3), dist(p3, p1)});
        if (std::fabs(cross(p2 - p1, p3 - p1)) < 0.05 * longest * longest) continue;
        Triangle tri(p1, p2, p3);

        // interior point with all barycentrics below 1/2 keeps every
        // anticevian circumconic a real ellipse
        double b1 = bary(rng), b2 = bary(rng), b3 = bary(rng);
        const double bs = b1 + b2 + b3;
        b1 /= bs; b2 /= bs; b3 /= bs;
        if (std::max({b1, b2, b3}) > 0.48) continue;
        const SideLengths sl = tri.sidelengths();
        const Trilinear x{b1 / sl.s1, b2 / sl.s2, b3 / sl.s3};

        const double direct = sigma_sum(tri, x);
        const double printed = sigma_closed_form(tri, x, SigmaReading::printed);
        const double flipped = sigma_closed_form(tri, x, SigmaReading::flipped);
        adj.max_rel_err_printed =
            std::max(adj.max_rel_err_printed, std::fabs(printed - direct) / std::fabs(direct));
        adj.max_rel_err_flipped =
            std::max(adj.max_rel_err_flipped, std::fabs(flipped - direct) / std::fabs(direct));
        ++adj.trials;
    }
    const bool printed_ok = adj.max_rel_err_printed < rel_tol;
    const bool flipped_ok = adj.max_rel_err_flipped < rel_tol;
    if (printed_ok && !flipped_ok) adj.verdict = SigmaVerdict::printed_matches;
    else if (flipped_ok && !printed_ok) adj.verdict = SigmaVerdict::flipped_matches;
    else adj.verdict = SigmaVerdict::ambiguous;
    return adj;
}

namespace {

/// Cyclic Jacobi eigendecomposition of a symmetric 6x6 matrix.
/// Eigenvectors end up in the columns of V.
void jacobi_eigen6(double A[6][6], double V[6][6], double lam[6]) {
    constexpr int n = 6;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) V[i][j] = (i == j) ? 1.0 : 0.0;

    for (int sweep = 0; sweep < 64; ++sweep) {
        double off = 0.0;
        for (int p = 0; p < n; ++p)
            for (int q = p + 1; q < n; ++q) off += A[p][q] * A[p][q];
        if (off < 1e-300) break;
        for (int p = 0; p < n - 1; ++p) {
            for (int q = p + 1; q < n; ++q) {
                if (std::fabs(A[p][q]) < 1e-30 * (std::fabs(A[p][p]) + std::fabs(A[q][q]) + 1e-300))
                    continue;
                const double theta = (A[q][q] - A[p][p]) / (2.0 * A[p][q]);
                const double sign = theta >= 0.0 ? 1.0 : -1.0;
                const double tt = sign / (std::fabs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(tt * tt + 1.0);
                const double s = tt * c;
                for (int k = 0; k < n; ++k) {
                    const double akp = A[k][p], akq = A[k][q];
                    A[k][p] = c * akp - s * akq;
                    A[k][q] = s * akp + c * akq;
                }
                for (int k = 0; k < n; ++k) {
                    const double apk = A[p][k], aqk = A[q][k];
                    A[p][k] = c * apk - s * aqk;
                    A[q][k] = s * apk + c * aqk;
                }
                for (int k = 0; k < n; ++k) {
                    const double vkp = V[k][p], vkq = V[k][q];
                    V[k][p] = c * vkp - s * vkq;
                    V[k][q] = s * vkp + c * vkq;
                }
            }
        }
    }
    for (int i = 0; i < n; ++i) lam[i] = A[i][i];
}

}  // namespace

Conic circumconic_centered_fit(const Triangle& t, Point center) {
    // normalize coordinates for conditioning: centroid shift + RMS scale
    const Point mu = (t.p(0) + t.p(1) + t.p(2)) / 3.0;
    double rms = 0.0;
    for (int i = 0; i < 3; ++i) {
        const Point d = t.p(i) - mu;
        rms += dot(d, d);
    }
    rms = std::sqrt(rms / 3.0);
    if (rms == 0.0) throw DegenerateTriangle("coincident vertices");

    auto to_local = [&](Point p) { return (p - mu) / rms; };

    double rows[5][6];
    for (int i = 0; i < 3; ++i) {
        const Point p = to_local(t.p(i));
        rows[i][0] = p.x * p.x;
        rows[i][1] = p.x * p.y;
        rows[i][2] = p.y * p.y;
        rows[i][3] = p.x;
        rows[i][4] = p.y;
        rows[i][5] = 1.0;
    }
    const Point c = to_local(center);
    // gradient conditions at the center: 2A xc + B yc + D = 0, B xc + 2C yc + E = 0
    rows[3][0] = 2.0 * c.x; rows[3][1] = c.y; rows[3][2] = 0.0;
    rows[3][3] = 1.0;       rows[3][4] = 0.0; rows[3][5] = 0.0;
    rows[4][0] = 0.0;       rows[4][1] = c.x; rows[4][2] = 2.0 * c.y;
    rows[4][3] = 0.0;       rows[4][4] = 1.0; rows[4][5] = 0.0;

    for (auto& row : rows) {
        double nrm = 0.0;
        for (double v : row) nrm += v * v;
        nrm = std::sqrt(nrm);
        for (double& v : row) v /= nrm;
    }

    double M[6][6] = {};
    for (const auto& row : rows)
        for (int i = 0; i < 6; ++i)
            for (int j = 0; j < 6; ++j) M[i][j] += row[i] * row[j];

    double V[6][6], lam[6];
    jacobi_eigen6(M, V, lam);

    int order[6] = {0, 1, 2, 3, 4, 5};
    std::sort(order, order + 6, [&](int i, int j) { return lam[i] < lam[j]; });
    const double sigma0 = std::sqrt(std::max(lam[order[0]], 0.0));
    const double sigma1 = std::sqrt(std::max(lam[order[1]], 0.0));
    // nullity must be exactly 1: demand a 1e6 singular-value gap
    if (!(sigma1 > 1e6 * sigma0))
        throw RankDeficient("centered circumconic system has nullity != 1");

    const int k = order[0];
    const Conic local(V[0][k], V[1][k], V[2][k], V[3][k], V[4][k], V[5][k]);
    const Conic fit = apply_affine(local, AffineMap{rms, 0.0, 0.0, rms, mu});
    conic_to_ellipse(fit);  // validates the fit is a real ellipse
    return fit;
}

}  // namespace propeller
