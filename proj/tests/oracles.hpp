#pragma once

// Independent reference implementations used only by tests. Everything here
// deliberately avoids the production code paths: counting is done with
// plain per-radius double loops, matching by exhaustive enumeration, and
// persistence by textbook boundary-matrix reduction.

#include <vector>

#include "celltopo/rng.hpp"
#include "celltopo/synthesis.hpp"

namespace celltopo::oracle {

/// Brute-force nearest-cell distance from (x, y).
double nearest_distance(const std::vector<CellPoint>& cells, double x, double y);

/// Per-radius double-loop cross K count, same strict d^2 < r^2 indicator.
std::vector<double> cross_k_counts(const CellLayout& layout, int source, int target,
                                   const RadiusGrid& radii);

std::vector<double> location_k_counts(const CellLayout& layout, double x, double y, int target,
                                      const RadiusGrid& radii);

std::vector<double> density_sum(const CellLayout& layout, double x, double y, int target,
                                const BandwidthSet& sigmas);

/// Exhaustive minimum K-matching cost over all one-to-one mappings after
/// dummy padding (diagrams of <= 7 holes).
double exhaustive_match_cost(const EnrichedPersistenceDiagram& gen,
                             const EnrichedPersistenceDiagram& ref);

/// Density-distance sum under the exhaustive-minimum K-matching.
double exhaustive_configuration_loss(const EnrichedPersistenceDiagram& gen,
                                     const EnrichedPersistenceDiagram& ref);

/// Exhaustive 1-Wasserstein with diagonal projections (n + m <= 8).
double exhaustive_emd(const EnrichedPersistenceDiagram& gen,
                      const EnrichedPersistenceDiagram& ref);

/// H1 pairs of the identical lower-star cubical filtration, computed by
/// boundary-matrix reduction instead of the production union-find.
std::vector<PersistencePoint> reduction_h1(const DistanceField& field,
                                           double persistence_floor);

/// Bottleneck distance between diagrams (L-inf ground metric, diagonal
/// matching allowed).
double bottleneck_distance(const std::vector<PersistencePoint>& a,
                           const std::vector<PersistencePoint>& b);

// --- test data helpers ---

CellLayout random_layout(Rng& rng, int classes, std::size_t points, const Rect& domain);

/// Random enriched diagram with the given enrichment arities.
EnrichedPersistenceDiagram random_diagram(Rng& rng, int class_id, std::size_t holes,
                                          std::size_t k_arity, std::size_t density_arity);

/// Regular n-gon of one class, radius r around (cx, cy).
CellLayout ring_layout(std::size_t n, double r, double cx, double cy, const Rect& domain);

}  // namespace celltopo::oracle
