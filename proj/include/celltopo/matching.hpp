#pragma once

#include "celltopo/params.hpp"
#include "celltopo/topology.hpp"

namespace celltopo {

/// Index marking a padded (dummy) hole in a matching pair.
inline constexpr int kDummy = -1;

/// Perfect matching between two diagrams after dummy padding, found by
/// minimizing the total K-vector distance. Dummies carry zero vectors, so
/// a dummy-real pair costs the real hole's K-vector norm.
struct HoleMatching {
    struct Pair {
        int gen = kDummy;
        int ref = kDummy;
    };
    std::vector<Pair> pairs;
    double cost = 0.0;
};

/// Minimum-cost one-to-one matching under the location-K distance
/// (Hungarian method on the padded square cost matrix). Throws
/// ValidationError when the enrichment arities differ.
HoleMatching optimal_match(const EnrichedPersistenceDiagram& gen,
                           const EnrichedPersistenceDiagram& ref);

/// Cell configuration loss: the sum of multi-scale density distances over
/// the pairs of the (freshly recomputed) optimal K-function matching.
double cell_configuration_loss(const EnrichedPersistenceDiagram& gen,
                               const EnrichedPersistenceDiagram& ref);

/// 1-Wasserstein distance between the plain diagrams in the birth-death
/// plane (L2 ground metric, points may match their diagonal projection).
double pd_emd(const EnrichedPersistenceDiagram& gen, const EnrichedPersistenceDiagram& ref);

/// Mean |persistence difference| over the optimal K-function matching;
/// exactly 0 whenever either layout's class has fewer than 5 cells.
double pd_ccmd(const EnrichedPersistenceDiagram& gen, const EnrichedPersistenceDiagram& ref,
               std::size_t gen_class_count, std::size_t ref_class_count);

/// Per-source-class cross-K discrepancies. For each source class the
/// cross-K vectors to all target classes are concatenated; MAE/RMSE of the
/// difference are normalized by the vector length and by the reference
/// layout's mean per-class cell count.
struct CrossKError {
    std::vector<double> mae;   // per source class
    std::vector<double> rmse;  // per source class
    double normalization = 1.0;
};

CrossKError cross_k_error(const CellLayout& gen, const CellLayout& ref,
                          const RadiusGrid& radii);

struct ClassMetrics {
    double pd_emd = 0.0;
    double pd_ccmd = 0.0;
    double k_mae = 0.0;
    double k_rmse = 0.0;
};

struct MetricReport {
    std::vector<std::string> class_names;
    std::vector<ClassMetrics> per_class;
    ClassMetrics mean;
    double k_normalization = 1.0;
    /// PD-EMD matches points to the diagonal rather than padding with
    /// dummies; recorded so reported numbers stay reinterpretable.
    std::string emd_convention = "diagonal";
};

/// Per-class PD-EMD, PD-CCMD and cross-K MAE/RMSE between two layouts with
/// the same class set, plus arithmetic means over all classes.
MetricReport metric_report(const CellLayout& gen, const CellLayout& ref,
                           const AnalysisParams& params);

/// Aligned text table: one metric per row, one column per class plus mean.
std::string metric_table(const MetricReport& report);

namespace detail {
/// Minimum-cost assignment on a dense square matrix (row-major), O(n^3)
/// shortest-augmenting-path Hungarian. Returns row -> column.
std::vector<int> solve_assignment(const std::vector<double>& cost, std::size_t n);
}  // namespace detail

}  // namespace celltopo
