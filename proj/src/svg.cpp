#include "propeller/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "propeller/circumellipse.hpp"

namespace propeller {

namespace {

Point circumcenter(const Triangle& t) {
    const Point a = t.p(0), b = t.p(1), c = t.p(2);
    const double d = 2.0 * (a.x * (b.y - c.y) + b.x * (c.y - a.y) + c.x * (a.y - b.y));
    const double a2 = dot(a, a), b2 = dot(b, b), c2 = dot(c, c);
    return {(a2 * (b.y - c.y) + b2 * (c.y - a.y) + c2 * (a.y - b.y)) / d,
            (a2 * (c.x - b.x) + b2 * (a.x - c.x) + c2 * (b.x - a.x)) / d};
}

struct Box {
    double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
    void add(Point p) {
        xmin = std::min(xmin, p.x);
        xmax = std::max(xmax, p.x);
        ymin = std::min(ymin, p.y);
        ymax = std::max(ymax, p.y);
    }
    void add(const Ellipse& e) {
        const Point h = e.half_extent();
        add({e.center.x - h.x, e.center.y - h.y});
        add({e.center.x + h.x, e.center.y + h.y});
    }
};

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.3f", v);
    return buf;
}

}  // namespace

Scene build_scene(const ConcentricPair& pair, const RenderSpec& spec) {
    Scene scene;
    const OrbitSample sample = orbit(pair, spec.t);
    const Triangle& tri = sample.triangle;

    if (spec.layers.outer) scene.outer = pair.outer;
    if (spec.layers.caustic) scene.caustic = conic_to_ellipse(pair.caustic);
    if (spec.layers.triangle) scene.triangle = tri;

    const Trilinear xo = cartesian_to_trilinear(tri, pair.center());
    if (spec.layers.anticevian || spec.layers.blades) {
        const auto verts = anticevian_vertices(tri, xo);
        if (spec.layers.anticevian) scene.anticevian = verts;
        if (spec.layers.blades) {
            for (int i = 0; i < 3; ++i) {
                try {
                    scene.blades[i] = conic_to_ellipse(circumconic_centered_fit(tri, verts[i]));
                } catch (const GeomError&) {
                    scene.warnings.push_back("blade " + std::to_string(i + 1) +
                                             " omitted: not an ellipse");
                }
            }
        }
    }
    if (spec.layers.excircles) {
        const auto centers = anticevian_vertices(tri, Trilinear{1.0, 1.0, 1.0});
        const Excircles exc = exradii_and_excircle_areas(tri);
        for (int i = 0; i < 3; ++i)
            scene.excircles[i] = Ellipse(centers[i], exc.radius[i], exc.radius[i], 0.0);
    }
    if (spec.layers.circumcircle) {
        const double R = tri.metrics().circumradius;
        scene.circumcircle = Ellipse(circumcenter(tri), R, R, 0.0);
    }
    return scene;
}

std::string render_svg(const Scene& scene, const RenderSpec& spec) {
    Box box;
    if (scene.outer) box.add(*scene.outer);
    if (scene.caustic) box.add(*scene.caustic);
    if (scene.triangle)
        for (const Point& p : scene.triangle->vertices()) box.add(p);
    if (scene.anticevian)
        for (const Point& p : *scene.anticevian) box.add(p);
    for (const auto& b : scene.blades)
        if (b) box.add(*b);
    for (const auto& e : scene.excircles)
        if (e) box.add(*e);
    if (scene.circumcircle) box.add(*scene.circumcircle);

    const double margin = 0.05 * std::max(box.xmax - box.xmin, box.ymax - box.ymin);
    box.add({box.xmin - margin, box.ymin - margin});
    box.add({box.xmax + margin, box.ymax + margin});

    const double sx = spec.width / (box.xmax - box.xmin);
    const double sy = spec.height / (box.ymax - box.ymin);
    const double s = std::min(sx, sy);
    const double ox = 0.5 * (spec.width - s * (box.xmax - box.xmin));
    const double oy = 0.5 * (spec.height - s * (box.ymax - box.ymin));
    auto map = [&](Point p) -> Point {
        return {ox + s * (p.x - box.xmin), spec.height - (oy + s * (p.y - box.ymin))};
    };

    std::string svg;
    svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" +
           std::to_string(spec.width) + "\" height=\"" + std::to_string(spec.height) +
           "\" viewBox=\"0 0 " + std::to_string(spec.width) + " " +
           std::to_string(spec.height) + "\">\n";
    svg += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

    auto ellipse_path = [&](const Ellipse& e, const std::string& stroke, bool dashed) {
        std::string d;
        for (int i = 0; i < 256; ++i) {
            const Point p = map(e.point_at(2.0 * kPi * i / 256.0));
            d += (i == 0 ? "M" : " L");
            d += fmt(p.x) + "," + fmt(p.y);
        }
        d += " Z";
        svg += "<path d=\"" + d + "\" fill=\"none\" stroke=\"" + stroke +
               "\" stroke-width=\"1.5\"" +
               (dashed ? " stroke-dasharray=\"6,4\"" : "") + "/>\n";
    };
    auto polygon = [&](const std::array<Point, 3>& pts, const std::string& stroke) {
        std::string d;
        for (int i = 0; i < 3; ++i) {
            const Point p = map(pts[i]);
            d += (i == 0 ? "" : " ") + fmt(p.x) + "," + fmt(p.y);
        }
        svg += "<polygon points=\"" + d + "\" fill=\"none\" stroke=\"" + stroke +
               "\" stroke-width=\"1.5\"/>\n";
    };

    for (const std::string& w : scene.warnings) svg += "<!-- " + w + " -->\n";

    const char* blade_colors[3] = {"orange", "hotpink", "skyblue"};
    for (int i = 0; i < 3; ++i)
        if (scene.blades[i]) ellipse_path(*scene.blades[i], blade_colors[i], false);
    for (const auto& e : scene.excircles)
        if (e) ellipse_path(*e, "green", true);
    if (scene.circumcircle) ellipse_path(*scene.circumcircle, "blue", true);
    if (scene.outer) ellipse_path(*scene.outer, "black", false);
    if (scene.caustic) ellipse_path(*scene.caustic, "saddlebrown", false);
    if (scene.anticevian) polygon(*scene.anticevian, "green");
    if (scene.triangle) polygon(scene.triangle->vertices(), "blue");

    int wy = 16;
    for (const std::string& w : scene.warnings) {
        svg += "<text x=\"8\" y=\"" + std::to_string(wy) +
               "\" font-size=\"12\" fill=\"red\">" + w + "</text>\n";
        wy += 16;
    }
    svg += "</svg>\n";
    return svg;
}

}  // namespace propeller
