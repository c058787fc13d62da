#include "sstress/svg.hpp"

#include <algorithm>
#include <ostream>

#include "sstress/io.hpp"

namespace sstress {

void write_svg(std::ostream& out, const Graph& g, const Layout& x) {
    constexpr double kCanvas = 1000.0;
    constexpr double kMargin = 0.05 * kCanvas;
    NodeId n = g.node_count();
    double lo_x = x(0, 0), hi_x = x(0, 0);
    double lo_y = x.dim() > 1 ? x(0, 1) : 0, hi_y = lo_y;
    for (NodeId v = 1; v < n; ++v) {
        lo_x = std::min(lo_x, x(v, 0));
        hi_x = std::max(hi_x, x(v, 0));
        if (x.dim() > 1) {
            lo_y = std::min(lo_y, x(v, 1));
            hi_y = std::max(hi_y, x(v, 1));
        }
    }
    double span = std::max(hi_x - lo_x, hi_y - lo_y);
    double scale = span > 0 ? (kCanvas - 2 * kMargin) / span : 1.0;
    auto px = [&](NodeId v) { return kMargin + (x(v, 0) - lo_x) * scale; };
    auto py = [&](NodeId v) {
        double y = x.dim() > 1 ? x(v, 1) : 0;
        return kCanvas - kMargin - (y - lo_y) * scale;  // y grows downward in SVG
    };
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 1000 1000\">\n";
    out << "<g stroke=\"#555555\" stroke-width=\"1\">\n";
    for (NodeId v = 0; v < n; ++v)
        for (const Edge& e : g.neighbors(v)) {
            if (v >= e.to) continue;
            out << "<line x1=\"" << format_double(px(v)) << "\" y1=\"" << format_double(py(v))
                << "\" x2=\"" << format_double(px(e.to)) << "\" y2=\"" << format_double(py(e.to))
                << "\"/>\n";
        }
    out << "</g>\n<g fill=\"#c0392b\">\n";
    for (NodeId v = 0; v < n; ++v)
        out << "<circle cx=\"" << format_double(px(v)) << "\" cy=\"" << format_double(py(v))
            << "\" r=\"2.5\"/>\n";
    out << "</g>\n</svg>\n";
}

}  // namespace sstress
