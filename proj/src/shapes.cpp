// shapes.cpp
#include "charfun/shapes.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <string>

#include "charfun/errors.hpp"
#include "charfun/io.hpp"

namespace charfun {

namespace {

using Interval = std::pair<double, double>;

void merge_intervals(std::vector<Interval>& iv) {
    if (iv.size() < 2) return;
    std::sort(iv.begin(), iv.end());
    std::size_t w = 0;
    for (std::size_t i = 1; i < iv.size(); ++i) {
        if (iv[i].first <= iv[w].second) iv[w].second = std::max(iv[w].second, iv[i].second);
        else iv[++w] = iv[i];
    }
    iv.resize(w + 1);
}

std::vector<Interval> polygon_row(const Polygon& poly, double y) {
    std::vector<double> xs;
    const auto& v = poly.vertices;
    const std::size_t m = v.size();
    for (std::size_t i = 0; i < m; ++i) {
        const Vec2 a = v[i], b = v[(i + 1) % m];
        if ((a.y <= y && b.y > y) || (b.y <= y && a.y > y))
            xs.push_back(a.x + (y - a.y) * (b.x - a.x) / (b.y - a.y));
    }
    std::sort(xs.begin(), xs.end());
    std::vector<Interval> iv;
    for (std::size_t i = 0; i + 1 < xs.size(); i += 2) iv.emplace_back(xs[i], xs[i + 1]);
    return iv;
}

BoundingBox polygon_bbox(const Polygon& p) {
    BoundingBox bb{{1e300, 1e300}, {-1e300, -1e300}};
    for (const auto& v : p.vertices) {
        bb.lo.x = std::min(bb.lo.x, v.x);
        bb.lo.y = std::min(bb.lo.y, v.y);
        bb.hi.x = std::max(bb.hi.x, v.x);
        bb.hi.y = std::max(bb.hi.y, v.y);
    }
    return bb;
}

Polygon koch_curve(Vec2 center, double circumradius, int depth) {
    // CCW triangle, apex up.
    Polygon poly;
    for (double deg : {90.0, 210.0, 330.0}) {
        const double a = deg * std::numbers::pi / 180.0;
        poly.vertices.push_back({center.x + circumradius * std::cos(a), center.y + circumradius * std::sin(a)});
    }
    const double c60 = 0.5, s60 = -std::numbers::sqrt3 / 2.0; // rotate -60 deg: outward for CCW
    for (int it = 0; it < depth; ++it) {
        std::vector<Vec2> next;
        next.reserve(poly.vertices.size() * 4);
        const std::size_t m = poly.vertices.size();
        for (std::size_t i = 0; i < m; ++i) {
            const Vec2 a = poly.vertices[i], b = poly.vertices[(i + 1) % m];
            const double ex = (b.x - a.x) / 3.0, ey = (b.y - a.y) / 3.0;
            const Vec2 p1{a.x + ex, a.y + ey};
            const Vec2 p2{a.x + 2 * ex, a.y + 2 * ey};
            const Vec2 tip{p1.x + c60 * ex - s60 * ey, p1.y + s60 * ex + c60 * ey};
            next.push_back(a);
            next.push_back(p1);
            next.push_back(tip);
            next.push_back(p2);
        }
        poly.vertices = std::move(next);
    }
    return poly;
}

} // namespace

double LipschitzGraph::profile(double x) const {
    const std::size_t m = heights.size();
    if (m < 2) throw ConfigError("lipschitz graph: profile needs >= 2 nodes");
    const double t = (x - x0) / width * static_cast<double>(m - 1);
    const double tc = std::clamp(t, 0.0, static_cast<double>(m - 1));
    const auto i = static_cast<std::size_t>(std::min(tc, static_cast<double>(m - 2)));
    const double frac = tc - static_cast<double>(i);
    return heights[i] * (1.0 - frac) + heights[i + 1] * frac;
}

PolygonUnion koch_polygon(Vec2 center, double circumradius, int depth) {
    if (depth < 0) throw ConfigError("koch_polygon: depth must be >= 0");
    if (depth > 10) throw ConfigError("koch_polygon: depth > 10 refused (3*4^depth edges)");
    if (!(circumradius > 0.0)) throw ConfigError("koch_polygon: circumradius must be positive");
    return PolygonUnion{{koch_curve(center, circumradius, depth)}};
}

LipschitzGraph make_lipschitz_graph(double x0, double width, double base_y, double mid_height, double lipschitz_k,
                                    int segments, std::uint64_t seed) {
    if (segments < 1 || !(width > 0.0) || !(lipschitz_k >= 0.0) || !(mid_height > 0.0))
        throw ConfigError("lipschitz graph: bad parameters");
    LipschitzGraph g;
    g.x0 = x0;
    g.width = width;
    g.base_y = base_y;
    g.lipschitz_k = lipschitz_k;
    g.seed = seed;
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> slope(-lipschitz_k, lipschitz_k);
    const double dx = width / segments;
    double y = base_y + mid_height;
    g.heights.push_back(y);
    for (int i = 0; i < segments; ++i) {
        y += slope(rng) * dx;
        // Reflect into the band [mid/2, 3 mid/2]; reflection never steepens.
        const double lo = base_y + 0.5 * mid_height, hi = base_y + 1.5 * mid_height;
        if (y < lo) y = 2 * lo - y;
        if (y > hi) y = 2 * hi - y;
        g.heights.push_back(y);
    }
    return g;
}

bool point_inside(const Shape& shape, Vec2 p) {
    return std::visit(
        [&](const auto& s) -> bool {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, Disk>) {
                const double dx = p.x - s.center.x, dy = p.y - s.center.y;
                return dx * dx + dy * dy < s.radius * s.radius;
            } else if constexpr (std::is_same_v<T, AxisRect>) {
                return p.x >= s.corner.x && p.x < s.corner.x + s.widths.x && p.y >= s.corner.y &&
                       p.y < s.corner.y + s.widths.y;
            } else if constexpr (std::is_same_v<T, LipschitzGraph>) {
                return p.x >= s.x0 && p.x <= s.x0 + s.width && p.y >= s.base_y && p.y < s.profile(p.x);
            } else {
                const auto iv = row_intervals(shape, p.y);
                for (const auto& [a, b] : iv)
                    if (p.x >= a && p.x < b) return true;
                return false;
            }
        },
        shape);
}

BoundingBox bounding_box(const Shape& shape) {
    return std::visit(
        [&](const auto& s) -> BoundingBox {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, Disk>) {
                return {{s.center.x - s.radius, s.center.y - s.radius}, {s.center.x + s.radius, s.center.y + s.radius}};
            } else if constexpr (std::is_same_v<T, AxisRect>) {
                return {s.corner, {s.corner.x + s.widths.x, s.corner.y + s.widths.y}};
            } else if constexpr (std::is_same_v<T, LipschitzGraph>) {
                double top = s.base_y;
                for (double v : s.heights) top = std::max(top, v);
                return {{s.x0, s.base_y}, {s.x0 + s.width, top}};
            } else if constexpr (std::is_same_v<T, KochSnowflake>) {
                return {{s.center.x - s.circumradius, s.center.y - s.circumradius},
                        {s.center.x + s.circumradius, s.center.y + s.circumradius}};
            } else {
                BoundingBox bb{{1e300, 1e300}, {-1e300, -1e300}};
                for (const auto& p : s.polygons) {
                    const auto b = polygon_bbox(p);
                    bb.lo.x = std::min(bb.lo.x, b.lo.x);
                    bb.lo.y = std::min(bb.lo.y, b.lo.y);
                    bb.hi.x = std::max(bb.hi.x, b.hi.x);
                    bb.hi.y = std::max(bb.hi.y, b.hi.y);
                }
                return bb;
            }
        },
        shape);
}

std::vector<Interval> row_intervals(const Shape& shape, double y) {
    return std::visit(
        [&](const auto& s) -> std::vector<Interval> {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, Disk>) {
                const double d = s.radius * s.radius - (y - s.center.y) * (y - s.center.y);
                if (d <= 0.0) return {};
                const double half = std::sqrt(d);
                return {{s.center.x - half, s.center.x + half}};
            } else if constexpr (std::is_same_v<T, AxisRect>) {
                if (y < s.corner.y || y >= s.corner.y + s.widths.y) return {};
                return {{s.corner.x, s.corner.x + s.widths.x}};
            } else if constexpr (std::is_same_v<T, LipschitzGraph>) {
                if (y < s.base_y) return {};
                std::vector<Interval> iv;
                const std::size_t m = s.heights.size();
                const double dx = s.width / static_cast<double>(m - 1);
                bool open = false;
                double start = 0.0;
                for (std::size_t i = 0; i + 1 < m; ++i) {
                    const double xa = s.x0 + dx * static_cast<double>(i);
                    const double ya = s.heights[i], yb = s.heights[i + 1];
                    const bool ina = ya > y, inb = yb > y;
                    if (ina && !open) {
                        open = true;
                        start = xa;
                    }
                    if (ina != inb) {
                        const double xc = xa + dx * (y - ya) / (yb - ya);
                        if (!ina) { // entering
                            open = true;
                            start = xc;
                        } else {
                            open = false;
                            iv.emplace_back(start, xc);
                        }
                    }
                }
                if (open) iv.emplace_back(start, s.x0 + s.width);
                return iv;
            } else if constexpr (std::is_same_v<T, KochSnowflake>) {
                thread_local const KochSnowflake* cached_key = nullptr;
                thread_local Polygon cached;
                if (cached_key != &s) {
                    cached = koch_curve(s.center, s.circumradius, s.depth);
                    cached_key = &s;
                }
                return polygon_row(cached, y);
            } else {
                std::vector<Interval> iv;
                for (const auto& p : s.polygons) {
                    auto pi = polygon_row(p, y);
                    iv.insert(iv.end(), pi.begin(), pi.end());
                }
                merge_intervals(iv);
                return iv;
            }
        },
        shape);
}

ScalarField rasterize(const Shape& shape, const GridSpec& spec, const RasterOptions& opts, Exec exec) {
    validate_grid(spec);
    if (spec.dim != 2) throw ConfigError("rasterize: shipped generators are 2D");
    if (opts.subsamples < 1 || opts.subsamples % 2 == 0)
        throw ConfigError("rasterize: subsample count must be odd");

    const double L = spec.box_length, margin = L / 8.0;
    const auto bb = bounding_box(shape);
    const double slack = 1e-12 * L;
    if (bb.lo.x < margin - slack || bb.lo.y < margin - slack || bb.hi.x > L - margin + slack ||
        bb.hi.y > L - margin + slack) {
        throw ConfigError("rasterize: shape extent [" + format_double(bb.lo.x) + "," + format_double(bb.hi.x) + "]x[" +
                          format_double(bb.lo.y) + "," + format_double(bb.hi.y) + "] violates the L/8 margin of box [0," +
                          format_double(L) + ")^2");
    }

    // Snowflake rows would otherwise rebuild the polygon per thread.
    Shape resolved = shape;
    if (const auto* ks = std::get_if<KochSnowflake>(&shape))
        resolved = koch_polygon(ks->center, ks->circumradius, ks->depth);

    const int n = spec.n, s = opts.subsamples;
    const double h = spec.spacing();
    const double sub = h / s;
    ScalarField f = make_field(spec);
    const int majority = (s * s) / 2 + 1;

    // Scanline per cell row: for each of the s subsample heights, mark the
    // covered subsample columns and accumulate per-cell counts.
    for_each_index(n, exec, [&](std::int64_t row) {
        thread_local std::vector<int> counts;
        counts.assign(static_cast<std::size_t>(n), 0);
        for (int t = 0; t < s; ++t) {
            const double y = (static_cast<double>(row) + (t + 0.5) / s) * h;
            for (const auto& [xa, xb] : row_intervals(resolved, y)) {
                // Subsample abscissae are x_g = (g + 0.5) * sub.
                const double lo = std::max(xa, 0.0), hi = std::min(xb, L);
                if (hi <= lo) continue;
                auto g0 = static_cast<std::int64_t>(std::ceil(lo / sub - 0.5));
                auto g1 = static_cast<std::int64_t>(std::floor(hi / sub - 0.5));
                if ((g0 + 0.5) * sub < lo) ++g0;
                if ((g1 + 0.5) * sub >= hi) --g1;
                g0 = std::max<std::int64_t>(g0, 0);
                g1 = std::min<std::int64_t>(g1, static_cast<std::int64_t>(n) * s - 1);
                for (std::int64_t g = g0; g <= g1; ++g) ++counts[static_cast<std::size_t>(g / s)];
            }
        }
        double* out = f.values.data() + row * n;
        if (opts.mode == RasterOptions::Mode::binary_supersampled) {
            for (int i = 0; i < n; ++i) out[i] = counts[static_cast<std::size_t>(i)] >= majority ? 1.0 : 0.0;
        } else {
            for (int i = 0; i < n; ++i) out[i] = static_cast<double>(counts[static_cast<std::size_t>(i)]) / (s * s);
        }
    });
    return f;
}

std::string polygon_csv(const PolygonUnion& pu) {
    std::string out = "polygon,vertex,x,y\n";
    for (std::size_t p = 0; p < pu.polygons.size(); ++p)
        for (std::size_t i = 0; i < pu.polygons[p].vertices.size(); ++i) {
            const auto& v = pu.polygons[p].vertices[i];
            out += std::to_string(p) + "," + std::to_string(i) + "," + format_double(v.x) + "," + format_double(v.y) + "\n";
        }
    return out;
}

} // namespace charfun
