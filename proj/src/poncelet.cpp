#include "propeller/poncelet.hpp"

#include <algorithm>
#include <cmath>

namespace propeller {

const char* to_string(PairKind k) {
    switch (k) {
        case PairKind::incircle: return "incircle";
        case PairKind::axis_aligned: return "axis_aligned";
        case PairKind::confocal: return "confocal";
        case PairKind::homothetic: return "homothetic";
        case PairKind::affine_image: return "affine_image";
    }
    return "?";
}

namespace {

Conic axis_aligned_caustic(double a_c, double b_c) {
    return Conic(1.0 / (a_c * a_c), 0.0, 1.0 / (b_c * b_c), 0.0, 0.0, -1.0);
}

double incircle_sigma_prediction(double a, double b) {
    const double r = a * b / (a + b);
    const double rho = 2.0 * r * r / (a * b);
    return (1.0 + 4.0 / rho) * kPi * a * b;
}

/// Second intersection of a line (known to pass through p on the conic).
Point second_intersection(const Conic& outer, Point p, const Line& L) {
    Point d = L.direction();
    d = d / norm(d);
    const double q2 = outer.A * d.x * d.x + outer.B * d.x * d.y + outer.C * d.y * d.y;
    const double q1 = (2.0 * outer.A * p.x + outer.B * p.y + outer.D) * d.x +
                      (outer.B * p.x + 2.0 * outer.C * p.y + outer.E) * d.y;
    const double q0 = outer.eval(p);
    std::array<double, 2> roots{};
    const int nroots = solve_quadratic(q2, q1, q0, roots);
    if (nroots == 0) throw TangentFailure("tangent chord misses the outer ellipse");
    const double tau = std::fabs(roots[0]) > std::fabs(roots[1]) ? roots[0] : roots[1];
    return p + tau * d;
}

/// Next 3-periodic vertex: the tangent chord that keeps the center on its
/// left, i.e. advances counterclockwise along the outer ellipse.
Point next_vertex(const Conic& outer, const Conic& caustic, Point center, Point p) {
    std::pair<Line, Line> tangents;
    try {
        tangents = tangent_lines_from_point(caustic, p);
    } catch (const PointInsideConic&) {
        throw TangentFailure("orbit vertex is not outside the caustic");
    }
    const Point q1 = second_intersection(outer, p, tangents.first);
    const Point q2 = second_intersection(outer, p, tangents.second);
    const double c1 = cross(q1 - p, center - p);
    const double c2 = cross(q2 - p, center - p);
    return c1 >= c2 ? q1 : q2;
}

}  // namespace

void probe_pair_closure(const ConcentricPair& pair) {
    const double tol = pair.closure_tolerance();
    for (int k = 0; k < 8; ++k) {
        const double residual = verify_closure(pair, 2.0 * kPi * k / 8.0);
        if (!(residual <= tol))
            throw ClosureFailure("pair fails the 3-periodic closure probe");
    }
}

ConcentricPair incircle_pair(double a, double b) {
    if (!(a > b && b > 0.0)) throw InvalidAxes("incircle pair requires a > b > 0");
    const double r = a * b / (a + b);
    ConcentricPair pair{Ellipse({0.0, 0.0}, a, b, 0.0), axis_aligned_caustic(r, r),
                        PairKind::incircle, std::nullopt, incircle_sigma_prediction(a, b)};
    probe_pair_closure(pair);
    return pair;
}

ConcentricPair axis_aligned_pair(double a, double b, double a_c) {
    if (!(a > 0.0 && b > 0.0)) throw InvalidAxes("outer semi-axes must be positive");
    if (!(a_c > 0.0 && a_c < a)) throw InvalidAxes("caustic semi-axis must satisfy 0 < a_c < a");
    const double b_c = b * (1.0 - a_c / a);
    if (!(b_c > 0.0 && b_c < b)) throw InvalidAxes("derived b_c is out of range");
    ConcentricPair pair{Ellipse({0.0, 0.0}, std::max(a, b), std::min(a, b),
                                a >= b ? 0.0 : kPi / 2.0),
                        axis_aligned_caustic(a_c, b_c), PairKind::axis_aligned,
                        std::nullopt, std::nullopt};
    probe_pair_closure(pair);
    return pair;
}

ConcentricPair confocal_pair(double a, double b) {
    if (!(a > b && b > 0.0)) throw InvalidAxes("confocal pair requires a > b > 0");

    // joint system: closure a_c/a + b_c/b = 1, confocality a^2 - a_c^2 = b^2 - b_c^2
    auto residual = [&](double ac, double bc, double& f1, double& f2) {
        f1 = ac / a + bc / b - 1.0;
        f2 = (a * a - ac * ac) - (b * b - bc * bc);
    };

    double ac = 0.5 * a, bc = 0.5 * b;  // homothetic starting point
    double f1, f2;
    residual(ac, bc, f1, f2);
    bool converged = false;
    for (int iter = 0; iter < 64 && !converged; ++iter) {
        const double norm0 = std::fabs(f1) + std::fabs(f2) / (a * a);
        if (norm0 < 1e-15) { converged = true; break; }
        // damped Newton step on the 2x2 Jacobian
        const double j00 = 1.0 / a, j01 = 1.0 / b;
        const double j10 = -2.0 * ac, j11 = 2.0 * bc;
        const double det = j00 * j11 - j01 * j10;
        if (std::fabs(det) < 1e-300) break;
        const double dac = (f1 * j11 - f2 * j01) / det;
        const double dbc = (f2 * j00 - f1 * j10) / det;
        double step = 1.0;
        for (int halving = 0; halving < 40; ++halving, step *= 0.5) {
            const double na = ac - step * dac, nb = bc - step * dbc;
            double g1, g2;
            residual(na, nb, g1, g2);
            if (std::fabs(g1) + std::fabs(g2) / (a * a) < norm0) {
                ac = na; bc = nb; f1 = g1; f2 = g2;
                break;
            }
        }
    }
    if (!converged) {
        // bisection fallback on the 1d reduction b_c = b (1 - a_c/a)
        double lo = 1e-12 * a, hi = a * (1.0 - 1e-12);
        auto g = [&](double x) {
            const double y = b * (1.0 - x / a);
            return (a * a - x * x) - (b * b - y * y);
        };
        for (int i = 0; i < 200; ++i) {
            const double mid = 0.5 * (lo + hi);
            if (g(lo) * g(mid) <= 0.0) hi = mid; else lo = mid;
        }
        ac = 0.5 * (lo + hi);
        bc = b * (1.0 - ac / a);
        residual(ac, bc, f1, f2);
    }
    if (!(std::fabs(f1) < 1e-12 && std::fabs(f2) / (a * a) < 1e-12) ||
        !(0.0 < bc && bc < ac && ac < a))
        throw NoRealCaustic("confocal caustic solve failed");

    ConcentricPair pair{Ellipse({0.0, 0.0}, a, b, 0.0), axis_aligned_caustic(ac, bc),
                        PairKind::confocal, std::nullopt, std::nullopt};
    probe_pair_closure(pair);
    return pair;
}

ConcentricPair homothetic_pair(double radius) {
    if (!(radius > 0.0)) throw InvalidAxes("radius must be positive");
    ConcentricPair pair{Ellipse({0.0, 0.0}, radius, radius, 0.0),
                        axis_aligned_caustic(0.5 * radius, 0.5 * radius),
                        PairKind::homothetic, std::nullopt, std::nullopt};
    probe_pair_closure(pair);
    return pair;
}

ConcentricPair affine_image_pair(const ConcentricPair& base, const AffineMap& T) {
    if (T.translation.x != 0.0 || T.translation.y != 0.0)
        throw NonCentralMap("affine image of a concentric pair must keep the center");
    ConcentricPair pair;
    pair.outer = conic_to_ellipse(apply_affine(ellipse_to_conic(base.outer), T));
    pair.caustic = apply_affine(base.caustic, T);
    pair.kind = PairKind::affine_image;
    pair.provenance = base.provenance ? T.compose(*base.provenance) : T;
    if (base.sigma_prediction)
        pair.sigma_prediction = std::fabs(T.det()) * *base.sigma_prediction;
    probe_pair_closure(pair);
    return pair;
}

ConcentricPair make_unchecked_pair(Ellipse outer, Conic caustic, PairKind kind) {
    return ConcentricPair{outer, caustic, kind, std::nullopt, std::nullopt};
}

OrbitSample orbit(const ConcentricPair& pair, double t) {
    const Conic outer = ellipse_to_conic(pair.outer);
    const Point O = pair.center();
    const Point p1 = pair.outer.point_at(t);
    const Point p2 = next_vertex(outer, pair.caustic, O, p1);
    const Point p3 = next_vertex(outer, pair.caustic, O, p2);
    const Point back = next_vertex(outer, pair.caustic, O, p3);
    const double residual = dist(back, p1);
    if (!(residual <= pair.closure_tolerance()))
        throw ClosureFailure("3-periodic does not close at this parameter");
    return OrbitSample{t, Triangle(p1, p2, p3), residual};
}

double verify_closure(const ConcentricPair& pair, double t) {
    const Conic outer = ellipse_to_conic(pair.outer);
    const Point O = pair.center();
    const Point p1 = pair.outer.point_at(t);
    const Point p2 = next_vertex(outer, pair.caustic, O, p1);
    const Point p3 = next_vertex(outer, pair.caustic, O, p2);
    const Point back = next_vertex(outer, pair.caustic, O, p3);
    return dist(back, p1);
}

std::vector<SweepEntry> sweep(const ConcentricPair& pair, int n, Exec policy) {
    std::vector<SweepEntry> entries(static_cast<size_t>(n));
    for_each_index(n, policy, [&](int k) {
        SweepEntry& e = entries[static_cast<size_t>(k)];
        e.t = 2.0 * kPi * k / n;
        try {
            e.sample = orbit(pair, e.t);
        } catch (const GeomError& err) {
            e.error = err.what();
        }
    });
    return entries;
}

}  // namespace propeller
