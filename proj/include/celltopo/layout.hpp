#pragma once

#include <array>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace celltopo {

// Error taxonomy used across the library. The CLI maps these onto exit
// codes: IoError -> 2, ValidationError (and subclasses) -> 3, rest -> 4.
class ValidationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class FormatError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Input too degenerate to compute on (e.g. distance transform of an empty
// point set). Callers that can recover (per-class diagram loops) catch this.
class DegenerateInputError : public ValidationError {
public:
    using ValidationError::ValidationError;
};

/// Axis-aligned rectangular domain, in the same length units as the points.
struct Rect {
    double x_min = 0.0;
    double y_min = 0.0;
    double x_max = 0.0;
    double y_max = 0.0;

    double width() const { return x_max - x_min; }
    double height() const { return y_max - y_min; }
    double area() const { return width() * height(); }
    double shorter_side() const { return width() < height() ? width() : height(); }
    double diagonal() const;

    bool contains(double x, double y) const {
        return x >= x_min && x <= x_max && y >= y_min && y <= y_max;
    }
};

struct CellPoint {
    double x = 0.0;
    double y = 0.0;
    int class_id = 0;
};

/// A finite multi-class point set inside a rectangular domain. Immutable
/// after construction; all operations return new layouts.
class CellLayout {
public:
    CellLayout(std::vector<CellPoint> points, Rect domain,
               std::vector<std::string> class_names);

    const std::vector<CellPoint>& points() const { return points_; }
    const Rect& domain() const { return domain_; }
    const std::vector<std::string>& class_names() const { return class_names_; }

    std::size_t size() const { return points_.size(); }
    int class_count() const { return static_cast<int>(class_names_.size()); }
    std::size_t class_size(int class_id) const;
    const std::vector<std::size_t>& class_counts() const { return class_counts_; }

    /// Points of one class, in layout order.
    std::vector<CellPoint> class_points(int class_id) const;

    bool same_class_set(const CellLayout& other) const {
        return class_names_ == other.class_names_;
    }

private:
    std::vector<CellPoint> points_;
    Rect domain_;
    std::vector<std::string> class_names_;
    std::vector<std::size_t> class_counts_;
};

/// Strictly increasing positive radii at which K-functions are sampled.
struct RadiusGrid {
    std::vector<double> radii;

    RadiusGrid() = default;
    explicit RadiusGrid(std::vector<double> r);
    std::size_t size() const { return radii.size(); }
};

/// Strictly increasing Gaussian kernel standard deviations.
struct BandwidthSet {
    std::vector<double> sigmas;

    BandwidthSet() = default;
    explicit BandwidthSet(std::vector<double> s);
    std::size_t size() const { return sigmas.size(); }
};

/// Per-axis affine map between a domain rectangle and (-1,1)^2.
/// Aspect ratio is not preserved: each axis is scaled independently.
struct UnitTransform {
    Rect domain;

    std::array<double, 2> to_unit(double x, double y) const {
        return {-1.0 + 2.0 * (x - domain.x_min) / domain.width(),
                -1.0 + 2.0 * (y - domain.y_min) / domain.height()};
    }
    std::array<double, 2> from_unit(double ux, double uy) const {
        return {domain.x_min + (ux + 1.0) * 0.5 * domain.width(),
                domain.y_min + (uy + 1.0) * 0.5 * domain.height()};
    }
};

/// Maps the layout's domain onto (-1,-1)..(1,1). The inverse map is
/// recoverable via unit_transform(original_domain).
CellLayout normalize_to_unit(const CellLayout& layout);

inline UnitTransform unit_transform(const Rect& domain) { return UnitTransform{domain}; }

}  // namespace celltopo
