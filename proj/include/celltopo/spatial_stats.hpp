#pragma once

#include <optional>
#include <span>

#include "celltopo/layout.hpp"

namespace celltopo {

/// Sentinel target meaning "all classes".
inline constexpr int kAllClasses = -1;

/// Sampled K-function values over a RadiusGrid. Values are non-decreasing
/// in radius and non-negative. `degenerate` marks vectors produced from an
/// empty (or single-point, for same-class) source/target set; they are all
/// zero and downstream aggregation may apply the small-class rule.
struct KFunctionVector {
    std::vector<double> values;
    int target_class = 0;
    std::optional<int> source_class;
    std::optional<std::array<double, 2>> location;
    bool degenerate = false;
};

/// Kernel density estimates at one location, one value per bandwidth.
struct DensityVector {
    std::vector<double> values;
    std::array<double, 2> location{0.0, 0.0};
    int target_class = kAllClasses;
};

/// Cross K-function between a source and a target class, sampled at the
/// given radii. Normalization A = area / (|C_s| * |C_t|); for source ==
/// target self-pairs are excluded and A = area / (|C_s| * (|C_s| - 1)).
/// The indicator is strict: dist < r. No edge correction.
KFunctionVector cross_k(const CellLayout& layout, int source, int target,
                        const RadiusGrid& radii);

/// K-function of target-class cells around an arbitrary location, with
/// A' = area / |C_t|. Throws ValidationError if (x, y) is outside the domain.
KFunctionVector location_k(const CellLayout& layout, double x, double y, int target,
                           const RadiusGrid& radii);

/// Sum (not mean) of normalized 2D Gaussian kernels centered at the target
/// cells, evaluated at (x, y), one value per bandwidth.
DensityVector multiscale_density(const CellLayout& layout, double x, double y, int target,
                                 const BandwidthSet& sigmas);

/// Euclidean distance between two sampled vectors of equal length.
double k_distance(std::span<const double> a, std::span<const double> b);
double k_distance(const KFunctionVector& a, const KFunctionVector& b);

}  // namespace celltopo
