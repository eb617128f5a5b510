#pragma once

#include <array>
#include <optional>
#include <string>

#include "propeller/poncelet.hpp"

namespace propeller {

struct RenderLayers {
    bool outer = true;
    bool caustic = true;
    bool triangle = true;
    bool anticevian = false;
    bool blades = true;
    bool excircles = false;
    bool circumcircle = false;
};

struct RenderSpec {
    double t = 0.0;
    int width = 800;
    int height = 600;
    RenderLayers layers;
};

/// Resolved drawable geometry for one frame. Blades that are not real
/// ellipses stay empty and produce a warning annotation in the output.
struct Scene {
    std::optional<Ellipse> outer;
    std::optional<Ellipse> caustic;
    std::optional<Triangle> triangle;
    std::optional<std::array<Point, 3>> anticevian;
    std::array<std::optional<Ellipse>, 3> blades;
    std::array<std::optional<Ellipse>, 3> excircles;
    std::optional<Ellipse> circumcircle;
    std::vector<std::string> warnings;
};

Scene build_scene(const ConcentricPair& pair, const RenderSpec& spec);

/// Standalone SVG 1.1 document; conics are path elements sampled at 256
/// points; output is deterministic for fixed inputs.
std::string render_svg(const Scene& scene, const RenderSpec& spec);

}  // namespace propeller
