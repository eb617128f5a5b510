#include <cmath>
#include <random>

#include "doctest.h"
#include "propeller/conic.hpp"

using namespace propeller;

namespace {

double rel_err(double got, double want) { return std::fabs(got - want) / std::fabs(want); }

double angle_diff_mod_pi(double a, double b) {
    double d = std::fmod(std::fabs(a - b), kPi);
    return std::min(d, kPi - d);
}

}  // namespace

TEST_CASE("ellipse_to_conic canonical cases") {
    const Conic unit = ellipse_to_conic(Ellipse({0, 0}, 1, 1, 0));
    CHECK(unit.same_up_to_scale(Conic(1, 0, 1, 0, 0, -1)));

    const Conic wide = ellipse_to_conic(Ellipse({0, 0}, 2, 1, 0));
    CHECK(wide.same_up_to_scale(Conic(0.25, 0, 1, 0, 0, -1)));

    const Conic tall = ellipse_to_conic(Ellipse({0, 0}, 2, 1, kPi / 2));
    CHECK(tall.same_up_to_scale(Conic(1, 0, 0.25, 0, 0, -1), 1e-12));

    // negative discriminant for a random rotated instance
    const Conic rot = ellipse_to_conic(Ellipse({0.3, -0.7}, 1.8, 0.9, 0.77));
    CHECK(rot.B * rot.B - 4 * rot.A * rot.C < 0);
}

TEST_CASE("conic_to_ellipse recovers canonical data") {
    const Ellipse circ = conic_to_ellipse(Conic(1, 0, 1, 0, 0, -1));
    CHECK(circ.a == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(circ.b == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(std::fabs(circ.center.x) < 1e-14);

    // homogeneous scaling (here by -7) changes nothing
    const Conic scaled(-7 * 0.25, 0, -7 * 1.0, 0, 0, 7.0);
    const Ellipse e = conic_to_ellipse(scaled);
    CHECK(e.a == doctest::Approx(2.0).epsilon(1e-13));
    CHECK(e.b == doctest::Approx(1.0).epsilon(1e-13));

    CHECK_THROWS_AS(conic_to_ellipse(Conic(1, 0, -1, 0, 0, -1)), NotAnEllipse);
    // imaginary ellipse: x^2 + y^2 + 1 = 0
    CHECK_THROWS_AS(conic_to_ellipse(Conic(1, 0, 1, 0, 0, 1)), NotAnEllipse);
    // degenerate: x^2 + y^2 = 0 (single point)
    CHECK_THROWS_AS(conic_to_ellipse(Conic(1, 0, 1, 0, 0, 0)), NotAnEllipse);
}

TEST_CASE("conic_area basics") {
    CHECK(rel_err(conic_area(ellipse_to_conic(Ellipse({0, 0}, 1, 1, 0))), kPi) < 1e-14);
    CHECK(rel_err(conic_area(ellipse_to_conic(Ellipse({2, -1}, 3, 2, 0.37))), 6 * kPi) < 1e-13);

    const AffineMap det2{2, 0, 0, 1, {0, 0}};
    const Conic img = apply_affine(ellipse_to_conic(Ellipse({0, 0}, 1, 1, 0)), det2);
    CHECK(rel_err(conic_area(img), 2 * kPi) < 1e-13);
}

TEST_CASE("round trip ellipse -> conic -> ellipse") {
    std::mt19937_64 rng(12345);
    std::uniform_real_distribution<double> pos(-5.0, 5.0);
    std::uniform_real_distribution<double> axis(0.2, 3.0);
    std::uniform_real_distribution<double> rot(0.0, kPi);
    for (int i = 0; i < 1000; ++i) {
        double a = axis(rng), b = axis(rng);
        if (a < b) std::swap(a, b);
        if (a / b < 1.05) continue;  // rotation ill-defined near circles
        const Ellipse e({pos(rng), pos(rng)}, a, b, rot(rng));
        const Ellipse r = conic_to_ellipse(ellipse_to_conic(e));
        CHECK(rel_err(r.a, e.a) < 1e-12);
        CHECK(rel_err(r.b, e.b) < 1e-12);
        CHECK(std::fabs(r.center.x - e.center.x) < 1e-12 * a);
        CHECK(std::fabs(r.center.y - e.center.y) < 1e-12 * a);
        CHECK(angle_diff_mod_pi(r.rotation, e.rotation) < 1e-12);
        CHECK(r.rotation >= 0.0);
        CHECK(r.rotation < kPi);
    }
}

TEST_CASE("conic_area is homogeneous in the coefficients") {
    const Ellipse e({1, 2}, 2.5, 1.2, 0.6);
    const Conic c = ellipse_to_conic(e);
    for (double k : {2.0, -3.0, 1e-6, -1e6}) {
        const Conic kc(k * c.A, k * c.B, k * c.C, k * c.D, k * c.E, k * c.F);
        CHECK(rel_err(conic_area(kc), conic_area(c)) < 1e-13);
    }
}

TEST_CASE("affine area law over random pairs") {
    std::mt19937_64 rng(777);
    std::uniform_real_distribution<double> axis(0.3, 2.5);
    std::uniform_real_distribution<double> rot(0.0, kPi);
    std::uniform_real_distribution<double> entry(-2.0, 2.0);
    int tested = 0;
    while (tested < 1000) {
        double a = axis(rng), b = axis(rng);
        if (a < b) std::swap(a, b);
        const Ellipse e({entry(rng), entry(rng)}, a, b, rot(rng));
        const AffineMap T{entry(rng), entry(rng), entry(rng), entry(rng), {0, 0}};
        if (std::fabs(T.det()) < 0.05) continue;
        const Conic c = ellipse_to_conic(e);
        const double got = conic_area(apply_affine(c, T));
        const double want = std::fabs(T.det()) * e.area();
        CHECK(rel_err(got, want) < 1e-10);
        ++tested;
    }
}

TEST_CASE("apply_affine canonical cases") {
    const Conic unit = ellipse_to_conic(Ellipse({0, 0}, 1, 1, 0));
    const Ellipse stretched = conic_to_ellipse(apply_affine(unit, AffineMap::scaling(2, 1)));
    CHECK(rel_err(stretched.a, 2.0) < 1e-13);
    CHECK(rel_err(stretched.b, 1.0) < 1e-13);

    const Conic any = ellipse_to_conic(Ellipse({0.4, 0.1}, 1.7, 0.8, 0.3));
    CHECK(apply_affine(any, AffineMap::identity()).same_up_to_scale(any, 1e-13));

    const Ellipse rotated =
        conic_to_ellipse(apply_affine(ellipse_to_conic(Ellipse({0, 0}, 1.5, 1, 0)),
                                      AffineMap::rotation(0.3)));
    CHECK(rel_err(rotated.a, 1.5) < 1e-12);
    CHECK(rel_err(rotated.b, 1.0) < 1e-12);
    CHECK(angle_diff_mod_pi(rotated.rotation, 0.3) < 1e-12);

    CHECK_THROWS_AS(apply_affine(unit, AffineMap{1, 2, 2, 4, {0, 0}}), SingularMap);
}

TEST_CASE("tangent lines from an external point: unit circle") {
    const Conic circ = ellipse_to_conic(Ellipse({0, 0}, 1, 1, 0));
    const auto [l1, l2] = tangent_lines_from_point(circ, {2, 0});
    // touch points at (1/2, +-sqrt(3)/2)
    const Point up{0.5, std::sqrt(3.0) / 2.0};
    const Point dn{0.5, -std::sqrt(3.0) / 2.0};
    for (const Line& L : {l1, l2}) {
        CHECK(std::fabs(L.eval({2, 0})) < 1e-12);
        CHECK(std::fabs(circ.dual_eval(L)) < 1e-10);
        CHECK(std::min(std::fabs(L.eval(up)), std::fabs(L.eval(dn))) < 1e-12);
    }
    CHECK(std::fabs(l1.eval(up) * l2.eval(up)) < 1e-12);  // one line per touch point

    CHECK_THROWS_AS(tangent_lines_from_point(circ, {1, 0}), PointInsideConic);
    CHECK_THROWS_AS(tangent_lines_from_point(circ, {0.3, 0.2}), PointInsideConic);
}

TEST_CASE("tangent lines: derived touch points on a 0.6 circle") {
    const double r = 0.6;
    const Conic circ = ellipse_to_conic(Ellipse({0, 0}, r, r, 0));
    const auto [l1, l2] = tangent_lines_from_point(circ, {1.5, 0});
    // oracle: touch point satisfies x * px = r^2 and x^2 + y^2 = r^2
    const double tx = r * r / 1.5;
    const double ty = std::sqrt(r * r - tx * tx);
    CHECK(tx == doctest::Approx(0.24).epsilon(1e-15));
    CHECK(ty == doctest::Approx(std::sqrt(0.3024)).epsilon(1e-15));
    const Point up{tx, ty}, dn{tx, -ty};
    for (const Line& L : {l1, l2}) {
        CHECK(std::fabs(L.eval({1.5, 0})) < 1e-12);
        CHECK(std::min(std::fabs(L.eval(up)), std::fabs(L.eval(dn))) < 1e-12);
    }
}

TEST_CASE("tangent lines: vertical tangent handled explicitly") {
    const Conic circ = ellipse_to_conic(Ellipse({0, 0}, 1, 1, 0));
    const auto [l1, l2] = tangent_lines_from_point(circ, {1, 2});
    // one of the two must be the vertical line x = 1
    const bool first_vertical = std::fabs(l1.m) < 1e-12;
    const Line& vert = first_vertical ? l1 : l2;
    const Line& other = first_vertical ? l2 : l1;
    CHECK(std::fabs(vert.m) < 1e-12);
    CHECK(std::fabs(vert.eval({1, 0})) < 1e-12);
    CHECK(std::fabs(other.eval({1, 2})) < 1e-12);
    CHECK(std::fabs(circ.dual_eval(other)) < 1e-10);
}

TEST_CASE("tangency residual property on random ellipses") {
    std::mt19937_64 rng(4242);
    std::uniform_real_distribution<double> axis(0.3, 2.0);
    std::uniform_real_distribution<double> rot(0.0, kPi);
    std::uniform_real_distribution<double> far(2.5, 6.0);
    std::uniform_real_distribution<double> ang(0.0, 2 * kPi);
    for (int i = 0; i < 500; ++i) {
        double a = axis(rng), b = axis(rng);
        if (a < b) std::swap(a, b);
        const Ellipse e({0, 0}, a, b, rot(rng));
        const Conic c = ellipse_to_conic(e);
        const double t = ang(rng);
        const Point p{far(rng) * a * std::cos(t), far(rng) * a * std::sin(t)};
        const auto [l1, l2] = tangent_lines_from_point(c, p);
        for (const Line& L : {l1, l2}) {
            const Line n = L.normalized();
            CHECK(std::fabs(c.dual_eval(n)) < 1e-10);
            CHECK(std::fabs(n.eval(p)) < 1e-10 * (1.0 + norm(p)));
        }
    }
}

TEST_CASE("ellipse type validates axes") {
    CHECK_THROWS_AS(Ellipse({0, 0}, 1.0, 2.0, 0.0), InvalidAxes);
    CHECK_THROWS_AS(Ellipse({0, 0}, 1.0, 0.0, 0.0), InvalidAxes);
    CHECK_NOTHROW(Ellipse({0, 0}, 1.0, 1.0, 0.0));
}
