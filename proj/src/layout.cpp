#include "celltopo/layout.hpp"

#include <cmath>
#include <utility>

namespace celltopo {

double Rect::diagonal() const { return std::hypot(width(), height()); }

CellLayout::CellLayout(std::vector<CellPoint> points, Rect domain,
                       std::vector<std::string> class_names)
    : points_(std::move(points)),
      domain_(domain),
      class_names_(std::move(class_names)) {
    if (!(domain_.width() > 0.0) || !(domain_.height() > 0.0)) {
        throw ValidationError("domain must have strictly positive width and height");
    }
    class_counts_.assign(class_names_.size(), 0);
    for (std::size_t i = 0; i < points_.size(); ++i) {
        const CellPoint& p = points_[i];
        if (p.class_id < 0 || p.class_id >= static_cast<int>(class_names_.size())) {
            throw ValidationError("point " + std::to_string(i) + " has class_id " +
                                  std::to_string(p.class_id) + " outside class table of size " +
                                  std::to_string(class_names_.size()));
        }
        if (!domain_.contains(p.x, p.y)) {
            throw ValidationError("point " + std::to_string(i) + " at (" +
                                  std::to_string(p.x) + ", " + std::to_string(p.y) +
                                  ") lies outside the domain");
        }
        ++class_counts_[static_cast<std::size_t>(p.class_id)];
    }
}

std::size_t CellLayout::class_size(int class_id) const {
    if (class_id < 0 || class_id >= class_count()) {
        throw ValidationError("class_id " + std::to_string(class_id) + " out of range");
    }
    return class_counts_[static_cast<std::size_t>(class_id)];
}

std::vector<CellPoint> CellLayout::class_points(int class_id) const {
    if (class_id < 0 || class_id >= class_count()) {
        throw ValidationError("class_id " + std::to_string(class_id) + " out of range");
    }
    std::vector<CellPoint> out;
    out.reserve(class_counts_[static_cast<std::size_t>(class_id)]);
    for (const CellPoint& p : points_) {
        if (p.class_id == class_id) out.push_back(p);
    }
    return out;
}

RadiusGrid::RadiusGrid(std::vector<double> r) : radii(std::move(r)) {
    if (radii.empty()) throw ValidationError("radius grid must be non-empty");
    double prev = 0.0;
    for (double v : radii) {
        if (!(v > 0.0)) throw ValidationError("radii must be positive");
        if (!(v > prev)) throw ValidationError("radii must be strictly increasing");
        prev = v;
    }
}

BandwidthSet::BandwidthSet(std::vector<double> s) : sigmas(std::move(s)) {
    if (sigmas.empty()) throw ValidationError("bandwidth set must be non-empty");
    double prev = 0.0;
    for (double v : sigmas) {
        if (!(v > 0.0)) throw ValidationError("bandwidths must be positive");
        if (!(v > prev)) throw ValidationError("bandwidths must be strictly increasing");
        prev = v;
    }
}

CellLayout normalize_to_unit(const CellLayout& layout) {
    const UnitTransform t = unit_transform(layout.domain());
    std::vector<CellPoint> pts = layout.points();
    for (CellPoint& p : pts) {
        auto [ux, uy] = t.to_unit(p.x, p.y);
        p.x = ux;
        p.y = uy;
    }
    return CellLayout(std::move(pts), Rect{-1.0, -1.0, 1.0, 1.0}, layout.class_names());
}

}  // namespace celltopo
