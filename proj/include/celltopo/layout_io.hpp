#pragma once

#include <optional>
#include <string>
#include <vector>

#include "celltopo/layout.hpp"

namespace celltopo {

enum class LayoutFormat { csv, json };

/// Parse "csv"/"json".
LayoutFormat parse_format(const std::string& name);

struct LoadOptions {
    /// Declared domain; overrides any domain metadata in the file.
    std::optional<Rect> domain;
    /// Fixed class table. Unknown class names in the file become errors.
    std::optional<std::vector<std::string>> class_map;
    /// Padding applied when no domain is declared anywhere, as a fraction
    /// of the bounding-box diagonal.
    double margin_fraction = 0.02;
};

// CSV layout format:
//   # domain: x0 y0 x1 y1          (optional metadata)
//   # classes: name0,name1,...     (optional metadata)
//   x,y,class
//   12.5,3.25,tumor
// JSON layout format:
//   {"domain":[x0,y0,x1,y1], "classes":[...], "points":[[x,y,class_id],...]}
CellLayout load_layout(const std::string& path, LayoutFormat format,
                       const LoadOptions& options = {});

/// Writes with shortest round-trip float formatting, so save -> load -> save
/// is byte-identical.
void save_layout(const CellLayout& layout, const std::string& path, LayoutFormat format);

/// Shortest decimal string that parses back to exactly the same double.
std::string format_double(double v);

}  // namespace celltopo
