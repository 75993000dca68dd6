#include "celltopo/svg.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace celltopo {

namespace {

const char* kPalette[] = {"#d1495b", "#00798c", "#edae49", "#66a182",
                          "#8d5a97", "#3d5a80", "#c08552", "#5c6b73"};
constexpr std::size_t kPaletteSize = sizeof(kPalette) / sizeof(kPalette[0]);

std::string num(double v) {
    std::ostringstream s;
    s.precision(3);
    s << std::fixed << v;
    return s.str();
}

}  // namespace

std::string render_svg(const CellLayout& layout,
                       const std::optional<EnrichedPersistenceDiagram>& diagram,
                       double canvas_px) {
    const Rect& d = layout.domain();
    const double margin = 0.05 * canvas_px;
    const double legend_w = 0.28 * canvas_px;
    const double scale = std::min((canvas_px - 2.0 * margin) / d.width(),
                                  (canvas_px - 2.0 * margin) / d.height());
    const double plot_w = d.width() * scale, plot_h = d.height() * scale;
    const double width = 2.0 * margin + plot_w + legend_w;
    const double height = 2.0 * margin + plot_h;
    // SVG y grows downward; flip so the domain's y_min sits at the bottom.
    auto px = [&](double x) { return margin + (x - d.x_min) * scale; };
    auto py = [&](double y) { return margin + (d.y_max - y) * scale; };
    const double dot_r = std::max(2.0, 0.006 * canvas_px);

    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(width) << "\" height=\""
        << num(height) << "\" viewBox=\"0 0 " << num(width) << ' ' << num(height) << "\">\n";
    svg << "  <rect x=\"" << num(margin) << "\" y=\"" << num(margin) << "\" width=\""
        << num(plot_w) << "\" height=\"" << num(plot_h)
        << "\" fill=\"white\" stroke=\"#444444\"/>\n";

    for (const CellPoint& p : layout.points()) {
        const char* color = kPalette[static_cast<std::size_t>(p.class_id) % kPaletteSize];
        svg << "  <circle class=\"cell cell-" << p.class_id << "\" cx=\"" << num(px(p.x))
            << "\" cy=\"" << num(py(p.y)) << "\" r=\"" << num(dot_r) << "\" fill=\"" << color
            << "\"/>\n";
    }

    // Legend.
    double ly = margin + 10.0;
    const double lx = 2.0 * margin + plot_w + 8.0;
    svg << "  <g class=\"legend\">\n";
    for (int c = 0; c < layout.class_count(); ++c) {
        const char* color = kPalette[static_cast<std::size_t>(c) % kPaletteSize];
        svg << "    <circle cx=\"" << num(lx) << "\" cy=\"" << num(ly) << "\" r=\"" << num(dot_r)
            << "\" fill=\"" << color << "\"/>\n";
        svg << "    <text x=\"" << num(lx + 10.0) << "\" y=\"" << num(ly + 4.0)
            << "\" font-size=\"12\" font-family=\"sans-serif\">"
            << layout.class_names()[static_cast<std::size_t>(c)] << "</text>\n";
        ly += 18.0;
    }
    svg << "  </g>\n";

    if (diagram) {
        for (const PersistencePoint& p : diagram->points) {
            svg << "  <circle class=\"hole-center\" cx=\"" << num(px(p.cx)) << "\" cy=\""
                << num(py(p.cy)) << "\" r=\"" << num(2.5 * dot_r)
                << "\" fill=\"none\" stroke=\"#1f4ecc\" stroke-width=\"2\"/>\n";
        }
        // Birth-death inset.
        const double inset = 0.24 * canvas_px;
        const double ix = width - inset - 6.0, iy = margin + 6.0;
        double vmax = 1e-9;
        for (const PersistencePoint& p : diagram->points) vmax = std::max(vmax, p.death);
        vmax *= 1.1;
        svg << "  <g class=\"bd-inset\">\n";
        svg << "    <rect x=\"" << num(ix) << "\" y=\"" << num(iy) << "\" width=\"" << num(inset)
            << "\" height=\"" << num(inset) << "\" fill=\"#f7f7f7\" stroke=\"#888888\"/>\n";
        svg << "    <line x1=\"" << num(ix) << "\" y1=\"" << num(iy + inset) << "\" x2=\""
            << num(ix + inset) << "\" y2=\"" << num(iy)
            << "\" stroke=\"#aaaaaa\" stroke-dasharray=\"3,3\"/>\n";
        for (const PersistencePoint& p : diagram->points) {
            const double bx = ix + (p.birth / vmax) * inset;
            const double by = iy + inset - (p.death / vmax) * inset;
            svg << "    <circle class=\"bd-point\" cx=\"" << num(bx) << "\" cy=\"" << num(by)
                << "\" r=\"3\" fill=\"#1f4ecc\"/>\n";
        }
        svg << "  </g>\n";
    }
    svg << "</svg>\n";
    return svg.str();
}

void write_svg(const std::string& svg, const std::string& path) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw IoError("cannot open '" + path + "' for writing");
    out << svg;
    if (!out) throw IoError("write to '" + path + "' failed");
}

}  // namespace celltopo
