// shapes.hpp -- planar test domains and indicator rasterization.
#pragma once

#include <array>
#include <cstdint>
#include <variant>
#include <vector>

#include "charfun/grid.hpp"
#include "charfun/parallel.hpp"

namespace charfun {

struct Vec2 {
    double x = 0.0, y = 0.0;
};

struct Disk {
    Vec2 center;
    double radius = 0.0;
};

struct AxisRect {
    Vec2 corner;
    Vec2 widths;
};

// Region between y = base_y and a piecewise-linear top profile over
// [x0, x0 + width]; profile nodes are equally spaced, generated by a seeded
// random walk with slope clamped to +-lipschitz_k.
struct LipschitzGraph {
    double x0 = 0.0, width = 0.0, base_y = 0.0;
    double lipschitz_k = 1.0;
    std::uint64_t seed = 0;
    std::vector<double> heights; // profile at the M+1 nodes

    double profile(double x) const;
};

struct Polygon {
    std::vector<Vec2> vertices; // closed implicitly, simple
};

struct PolygonUnion {
    std::vector<Polygon> polygons;
};

struct KochSnowflake {
    Vec2 center;
    double circumradius = 0.0;
    int depth = 0;
};

using Shape = std::variant<Disk, AxisRect, LipschitzGraph, KochSnowflake, PolygonUnion>;

struct BoundingBox {
    Vec2 lo, hi;
};

struct RasterOptions {
    enum class Mode { binary_supersampled, coverage };
    Mode mode = Mode::binary_supersampled;
    int subsamples = 5; // per axis, odd so the majority vote is well defined
};

// Standard IFS edge replacement on a CCW equilateral triangle inscribed in
// the circle of the given circumradius: 3*4^depth edges, perimeter grows by
// 4/3 per level. depth > 10 is refused.
PolygonUnion koch_polygon(Vec2 center, double circumradius, int depth);

LipschitzGraph make_lipschitz_graph(double x0, double width, double base_y, double mid_height, double lipschitz_k,
                                    int segments, std::uint64_t seed);

bool point_inside(const Shape& shape, Vec2 p);
BoundingBox bounding_box(const Shape& shape);

// Sorted disjoint x-intervals of the horizontal slice at height y.
std::vector<std::pair<double, double>> row_intervals(const Shape& shape, double y);

// Supersampled indicator raster. Binary mode: cell = 1 iff the majority of
// the s x s subsamples of the cell [jh,(j+1)h)^2 lie inside. Coverage mode:
// cell = inside fraction. Requires the closure of the shape to sit inside
// the box with margin >= L/8.
ScalarField rasterize(const Shape& shape, const GridSpec& spec, const RasterOptions& opts = {},
                      Exec exec = Exec::parallel);

std::string polygon_csv(const PolygonUnion& pu); // vertex list export

} // namespace charfun
