#include "gmr/svg.hpp"

#include <algorithm>
#include <cstdio>
#include <cmath>
#include <limits>

#include "gmr/error.hpp"

namespace gmr {

namespace {

std::string hex_color(const Color& c) {
    auto byte = [](double v) {
        return static_cast<int>(std::lround(std::clamp(v, 0.0, 255.0)));
    };
    char buf[8];
    std::snprintf(buf, sizeof buf, "#%02X%02X%02X", byte(c.r), byte(c.g), byte(c.b));
    return buf;
}

// Smallest dart of every class, in class order.
std::vector<std::string> representatives(const IGraph& g, const OrbitType& o) {
    std::vector<std::string> out;
    std::set<int> seen;
    for (const auto& [v, c] : orbit_classes(g, o)) {
        if (seen.insert(c).second) out.push_back(v);
    }
    return out;
}

}  // namespace

std::string render_svg(const GMap& g, const SvgOptions& options) {
    if (g.spec.dimension != 2) throw Error("render: only 2-G-maps can be drawn");
    const EmbeddingOp* point = nullptr;
    const EmbeddingOp* color = nullptr;
    for (const auto& e : g.spec.embeddings) {
        if (!point && sort_kind(e.sort) == ValueKind::Point) point = &e;
        if (!color && sort_kind(e.sort) == ValueKind::Color) color = &e;
    }
    if (!point) throw Error("render: no point embedding");

    auto at = [&](const std::string& v) {
        const Value* p = g.graph.label(point->name, v);
        if (!p || !p->is<Point2>()) throw Error("render: node '" + v + "' has no point");
        return p->as<Point2>();
    };

    double min_x = std::numeric_limits<double>::infinity(), max_x = -min_x;
    double min_y = min_x, max_y = -min_x;
    for (const auto& v : g.graph.nodes()) {
        Point2 p = at(v);
        min_x = std::min(min_x, p.x);
        max_x = std::max(max_x, p.x);
        min_y = std::min(min_y, p.y);
        max_y = std::max(max_y, p.y);
    }
    if (g.graph.node_count() == 0) min_x = max_x = min_y = max_y = 0.0;

    const double s = options.scale, m = options.margin;
    auto sx = [&](double x) { return format_number((x - min_x) * s + m); };
    auto sy = [&](double y) { return format_number((max_y - y) * s + m); };
    const std::string width = format_number((max_x - min_x) * s + 2 * m);
    const std::string height = format_number((max_y - min_y) * s + 2 * m);

    std::string out = "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + width + "\" height=\"" + height +
                      "\" viewBox=\"0 0 " + width + " " + height + "\">\n";

    out += "<g class=\"faces\">\n";
    for (const auto& d : representatives(g.graph, OrbitType{{0, 1}})) {
        std::string points;
        std::string v = d;
        std::size_t guard = 0;
        try {
            do {
                Point2 p = at(v);
                if (!points.empty()) points += ' ';
                points += sx(p.x) + "," + sy(p.y);
                v = link(g.graph, link(g.graph, v, 0), 1);
                if (++guard > g.graph.node_count()) throw Error("render: face walk from '" + d + "' does not close");
            } while (v != d);
        } catch (const StructureError& e) {
            throw Error(std::string("render: ") + e.what());
        }
        std::string fill = "#808080";
        if (color) {
            if (const Value* c = g.graph.label(color->name, d); c && c->is<Color>()) fill = hex_color(c->as<Color>());
        }
        out += "<polygon points=\"" + points + "\" fill=\"" + fill + "\" data-dart=\"" + d + "\"/>\n";
    }
    out += "</g>\n<g class=\"edges\" stroke=\"#000000\" stroke-width=\"2\">\n";
    for (const auto& d : representatives(g.graph, OrbitType{{0, 2}})) {
        Point2 a = at(d);
        Point2 b = at(link(g.graph, d, 0));
        out += "<line x1=\"" + sx(a.x) + "\" y1=\"" + sy(a.y) + "\" x2=\"" + sx(b.x) + "\" y2=\"" + sy(b.y) +
               "\"/>\n";
    }
    out += "</g>\n<g class=\"vertices\" fill=\"#000000\">\n";
    for (const auto& d : representatives(g.graph, OrbitType{{1, 2}})) {
        Point2 p = at(d);
        out += "<circle cx=\"" + sx(p.x) + "\" cy=\"" + sy(p.y) + "\" r=\"4\"/>\n";
    }
    out += "</g>\n</svg>\n";
    return out;
}

}  // namespace gmr
