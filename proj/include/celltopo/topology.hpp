#pragma once

#include "celltopo/spatial_stats.hpp"

namespace celltopo {

/// Distance transform sampled on a regular grid of nodes spanning the
/// domain. Node (i, j) sits at (x0 + j*dx, y0 + i*dy); values hold the
/// exact Euclidean distance from that node to the nearest cell.
struct DistanceField {
    std::size_t rows = 0;
    std::size_t cols = 0;
    double x0 = 0.0;
    double y0 = 0.0;
    double dx = 0.0;
    double dy = 0.0;
    /// Requested nominal spacing; dx, dy <= h.
    double h = 0.0;
    std::vector<double> values;  // row-major

    double at(std::size_t i, std::size_t j) const { return values[i * cols + j]; }
    double node_x(std::size_t j) const { return x0 + static_cast<double>(j) * dx; }
    double node_y(std::size_t i) const { return y0 + static_cast<double>(i) * dy; }
};

/// Exact Euclidean distance transform of the layout's cells (optionally a
/// single class) on a grid of spacing <= h covering the whole domain.
/// Computed with a lower-envelope-of-parabolas sweep, not erosion.
///
/// Throws DegenerateInputError when the filtered point set is empty and
/// ValidationError when h is non-positive or above 5% of the shorter side.
DistanceField distance_transform(const CellLayout& layout, int class_filter, double h);

/// One 1-dimensional feature of the sublevel filtration: a hole that
/// appears at threshold `birth` and is filled at threshold `death`.
/// (cx, cy) is the center of the grid cell whose addition kills the hole,
/// the local maximum of the distance transform inside the hole.
struct PersistencePoint {
    double birth = 0.0;
    double death = 0.0;
    double cx = 0.0;
    double cy = 0.0;

    double persistence() const { return death - birth; }
};

/// H1 persistence of the sublevel filtration of the field, as a cubical
/// complex with the grid nodes as vertices and cells entering at the max
/// of their vertices (lower-star). Features with persistence <= floor are
/// dropped as discretization noise; floor < 0 selects the default 2h.
/// Results are sorted by descending persistence.
std::vector<PersistencePoint> persistence_h1(const DistanceField& field,
                                             double persistence_floor = -1.0);

/// Per-hole spatial context: the location K-function of every class at the
/// hole center (concatenated in class_id order) and the all-class
/// multi-scale density at the hole center.
struct HoleEnrichment {
    std::vector<double> k_vec;
    std::vector<double> density_vec;
};

struct EnrichedPersistenceDiagram {
    /// Class whose filtration produced the diagram; kAllClasses for the
    /// union-of-all-classes diagram.
    int class_id = 0;
    std::vector<PersistencePoint> points;
    std::vector<HoleEnrichment> enrichments;  // parallel to points

    std::size_t size() const { return points.size(); }
};

/// Attach location K-functions and multi-scale densities to each hole.
/// Enrichments are computed against the full multi-class layout.
EnrichedPersistenceDiagram enrich_diagram(std::vector<PersistencePoint> points, int class_id,
                                          const CellLayout& layout, const RadiusGrid& radii,
                                          const BandwidthSet& sigmas);

/// One enriched diagram per class, each from the filtration of that class's
/// points alone but enriched against the full layout. Classes without
/// points yield empty diagrams.
std::vector<EnrichedPersistenceDiagram> per_class_diagrams(const CellLayout& layout, double h,
                                                           const RadiusGrid& radii,
                                                           const BandwidthSet& sigmas,
                                                           double persistence_floor = -1.0);

/// Diagram of the union of all classes (class_id = kAllClasses).
EnrichedPersistenceDiagram union_diagram(const CellLayout& layout, double h,
                                         const RadiusGrid& radii, const BandwidthSet& sigmas,
                                         double persistence_floor = -1.0);

/// log(1 + count) histogram of hole persistences over fixed buckets.
struct DiagramFeature {
    std::vector<double> log_histogram;
};

/// Buckets are [b0,b1), [b1,b2), ..., [b_last, inf) with b0 == 0.
DiagramFeature vectorize_diagram(const EnrichedPersistenceDiagram& diagram,
                                 const std::vector<double>& bucket_bounds);

}  // namespace celltopo
