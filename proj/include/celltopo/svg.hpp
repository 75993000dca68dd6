#pragma once

#include <optional>

#include "celltopo/topology.hpp"

namespace celltopo {

/// Renders the layout as class-colored dots with a legend. When a diagram
/// is supplied, hole centers are drawn as ring markers and a birth-death
/// scatter inset is added in the top-right corner.
std::string render_svg(const CellLayout& layout,
                       const std::optional<EnrichedPersistenceDiagram>& diagram = std::nullopt,
                       double canvas_px = 640.0);

void write_svg(const std::string& svg, const std::string& path);

}  // namespace celltopo
