#pragma once

#include <cstdint>

#include "celltopo/defaults.hpp"
#include "celltopo/matching.hpp"

namespace celltopo {

/// Concrete knobs for one synthesis run. Lengths are in domain units;
/// move/jitter scales are in normalized (-1,1) units.
struct SynthesisConfig {
    RadiusGrid radii;
    BandwidthSet sigmas;
    double h = 0.0;        // reporting-grade grid spacing
    double h_synth = 0.0;  // relaxed spacing used inside the annealing loop
    double init_jitter_sigma = 0.02;
    int steps = 20000;
    double t0 = 0.02;
    double decay = 0.99955;
    double move_scale = 0.06;
    double lambda_k = 1.0;
    double lambda_cc = 1.0;
    std::uint64_t seed = 1;
    double min_separation = 0.0;
    double teleport_prob = 0.1;

    void validate() const;
    static SynthesisConfig from_defaults(const DefaultsSpec& defaults, const Rect& domain);
};

struct Objective {
    double total = 0.0;
    double l_cc = 0.0;
    double k_term = 0.0;
};

struct SynthesisStep {
    double total = 0.0;
    double l_cc = 0.0;
    double k_term = 0.0;
    bool accepted = false;
};

struct SynthesisTrace {
    Objective initial;
    std::vector<SynthesisStep> steps;
};

struct SynthesisResult {
    CellLayout layout;          // best-seen layout after overlap removal
    CellLayout raw_layout;      // best-seen layout, counts preserved
    CellLayout initial_layout;  // jittered mesh the run started from
    SynthesisTrace trace;
    Objective initial;
    Objective best;
};

/// Per-class mesh over (-1,1)^2 with normal jitter, mapped back into the
/// reference domain. Class counts match the reference exactly.
CellLayout init_layout(const CellLayout& reference, double jitter_sigma, std::uint64_t seed);

/// total = lambda_cc * l_cc + lambda_k * k_term, where l_cc sums the
/// per-class configuration losses (diagrams at h_synth) and k_term sums
/// squared cross-K distances over all class pairs, scaled by
/// 1 / (class_count^2 * |radii|) to keep the two terms commensurate.
Objective objective(const CellLayout& candidate, const CellLayout& reference,
                    const SynthesisConfig& config);

/// Simulated annealing over single-point moves (with occasional uniform
/// teleports) minimizing the objective against the reference descriptors.
/// Deterministic for a fixed (reference, config, seed).
SynthesisResult synthesize(const CellLayout& reference, const SynthesisConfig& config);

/// Greedy scan in point order; drops any point closer than min_separation
/// to an already retained point.
CellLayout remove_overlaps(const CellLayout& layout, double min_separation);

}  // namespace celltopo
